#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crn/net.hpp"
#include "crn/rational.hpp"
#include "crn/unipoly.hpp"

namespace crn {

// Positive rational rate constant per reaction label.  Operations taking one
// require exactly the network's labels, each with a positive value.
using RateAssignment = std::map<std::string, Rat>;

// ---- tolerances (shared by the search and by witness verification) ---------

// Residual gate: a point counts as a steady state when every |dx_i/dt| is
// within this bound (exactly zero for exact states).
const Rat& residual_gate();  // 1e-10
// Two states closer than this in the max norm are merged into one.
const Rat& dedup_distance();  // 1e-8
// Numeric nondegeneracy: smallest restricted singular value must exceed this.
inline constexpr double kRankGapThreshold = 1e-8;

// ---- single-species steady states ------------------------------------------

// The steady-state polynomial d x/dt of a one-species network with the rate
// constants substituted, as an exact univariate polynomial.
UniPoly steady_state_univariate(const Network& n, const RateAssignment& kappa);

// Exact positive-root analysis of that polynomial: distinct count,
// multiplicity structure, and the identically-zero (continuum) flag.
PositiveRoots count_positive_steady_states(const Network& n,
                                           const RateAssignment& kappa);

// ---- classification of a verified steady state ------------------------------

struct StateClassification {
  // The Jacobian restricted to the stoichiometric subspace S has image S.
  bool nondegenerate = false;
  // The dim(S) nonzero Jacobian eigenvalues all have negative real part (the
  // remaining ones are within 1e-8 of zero).
  bool exp_stable = false;
  // Residual was exactly zero, so nondegeneracy used exact rational rank.
  bool exact = false;
  // Smallest singular value of the restricted Jacobian (the numeric margin
  // behind the nondegeneracy call when the state is not exact).
  double rank_gap = 0.0;
};

// x_star: one positive rational coordinate per species, in species order.
// Fails (Precondition) unless the residual is within residual_gate().
StateClassification classify_state(const Network& n,
                                   const RateAssignment& kappa,
                                   const std::vector<Rat>& x_star);

// ---- witnesses ---------------------------------------------------------------

struct WitnessState {
  std::vector<Rat> x;  // positive point, one coordinate per species
  bool exact = false;  // residual is exactly zero
  bool nondegenerate = false;
  bool exp_stable = false;
};

struct SteadyStateWitness {
  RateAssignment kappa;
  // Defines the compatibility class; empty when the stoichiometric subspace
  // is everything and the class constraint is vacuous.
  std::vector<Rat> class_anchor;
  std::vector<WitnessState> states;  // >= 2, all in one compatibility class
  // The steady-state polynomial vanished identically: every positive value
  // is a (degenerate) steady state, and `states` holds two samples.
  bool continuum = false;
};

// All positive steady states found for one fixed rate assignment, classified
// and sorted by coordinates: exact isolation for one species, multi-start
// damped Newton for two or three.  When the stoichiometric subspace is
// proper, states are confined to the compatibility class of `class_anchor`
// (sampled positive from `seed` when not given).
struct StateSearch {
  std::vector<WitnessState> states;
  std::vector<Rat> class_anchor;  // empty when the class constraint is vacuous
  bool continuum = false;
};

StateSearch enumerate_positive_steady_states(
    const Network& n, const RateAssignment& kappa, unsigned seed = 0,
    int newton_starts = 200, const std::vector<Rat>& class_anchor = {});

// ---- the search ---------------------------------------------------------------

struct MssVerdict {
  enum class Kind {
    MultistationaryWitness,  // >= target positive steady states in one class
    NoWitnessFound,          // budget exhausted; NOT a proof of monostationarity
    ProvedMono,              // structural proof: see monomolecular_mono_check
  };
  Kind kind = Kind::NoWitnessFound;
  std::optional<SteadyStateWitness> witness;
  std::string reason;
  std::uint64_t kappa_samples = 0;  // rate vectors actually tried
};

struct MssSearchOptions {
  int kappa_samples = 100;  // budget: log-uniform rate-vector draws
  unsigned seed = 0;
  int target_count = 2;  // return the first witness with >= this many states
  int newton_starts = 200;  // per rate vector, for 2-3 species
};

// Hunts for a rate assignment making the network multistationary.  Every
// returned witness has been re-verified (residuals, class membership,
// distinctness) before return; a NoWitnessFound verdict is only a record of
// the failed search.  Pre: 1-3 species.
MssVerdict search_multistationarity(const Network& n,
                                    const MssSearchOptions& opts = {});

// Structural monostationarity proof: when every reactant complex is a single
// species or the zero complex, the steady-state system is linear in the
// concentrations, so each compatibility class holds 0, 1, or a continuum of
// steady states - never two or more nondegenerate ones.  Fails
// (NotApplicable) when some reactant is bigger.
MssVerdict monomolecular_mono_check(const Network& n);

// ---- replay -------------------------------------------------------------------

struct WitnessCheck {
  bool ok = true;
  std::string detail;  // first failed requirement; empty when ok
};

// Re-checks a witness against the network with exact arithmetic: rates
// complete and positive, >= 2 states, every state positive with residual
// within the gate (exactly zero when flagged exact), all states in the
// anchor's compatibility class, and pairwise distinctness beyond
// dedup_distance().
WitnessCheck verify_witness(const Network& n, const SteadyStateWitness& w);

}  // namespace crn
