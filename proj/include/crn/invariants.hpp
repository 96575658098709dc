#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/ideal.hpp"
#include "crn/net.hpp"
#include "crn/poly.hpp"

namespace crn {

// Restriction of a joint mass-action ring onto one operand of a union:
// indeterminates that belong to the operand (its rate labels and the
// concentrations of its species) map to themselves, every other
// indeterminate maps to zero.  This is a surjective ring homomorphism onto
// the operand's subring.
struct Projection {
  int target = 1;                         // which operand: 1 or 2
  Ring ring;                              // joint ring the map acts on
  std::vector<char> killed;               // ring mask: true = sent to zero
  std::vector<std::string> kept_rates;    // surviving rate labels, ring order
  std::vector<std::string> kept_species;  // surviving concentration variables
};

// Builds the restriction of `joint_ring` onto `operand`.  Pre: every rate
// label and species concentration of the operand is a variable of the ring.
Projection make_projection(const Ring& joint_ring, const Network& operand,
                           int target);

// Image of an ideal under the restriction: generated by the images of the
// generators.  (The map is surjective onto its target subring, so this is
// the full image of the ideal, not merely a subideal.)  The result lives in
// the same ambient ring; its generators avoid the killed variables.
Ideal project_ideal(const Projection& p, const Ideal& ideal);

// One operand's side of a restriction comparison: the image of the union's
// elimination ideal against the operand's own elimination ideal, both over
// the operand's mass-action ring.
struct ComparisonReport {
  int target = 1;
  Ring ring;           // the operand's mass-action ring
  Ideal projected;     // image of the union's elimination ideal
  Ideal operand_elim;  // the operand's own elimination ideal
  bool containment_holds = false;  // projected is contained in operand_elim
  bool equality_holds = false;
  // Present exactly when the containment is strict: the smallest element of
  // operand_elim's reduced basis (by total degree, then term count) outside
  // the projected ideal; membership on both sides is re-verified.
  std::optional<Poly> witness;
};

struct ProjectionComparison {
  Network joint;                        // the union network
  GlueInfo glue;                        // how the operands overlap
  std::vector<std::string> eliminated;  // species eliminated (may be empty)
  ComparisonReport op1, op2;
};

// For the union N of n1 and n2, compares, per operand, the restriction of
// N's elimination ideal with the operand's own elimination ideal.
// `elim_species` names the species whose concentrations are eliminated from
// the union's steady-state ideal; each operand eliminates the subset of them
// it contains.  An empty list compares the full steady-state ideals, where
// the restriction recovers the operand ideal exactly for every union.
// The containment projected <= operand_elim holds unconditionally, so a
// computed violation raises Internal.  Errors: Precondition (species not in
// the union, union undefined), Budget.
ProjectionComparison compare_projections(
    const Network& n1, const Network& n2,
    const std::vector<std::string>& elim_species, const Budget& budget = {});

// Decides whether the union's elimination ideal is the sum of the operands'
// elimination ideals (all compared over the union's ring).  Requirements,
// checked structurally before any algebra:
//   - both operands monomolecular (NotApplicable otherwise) and free of the
//     zero complex (Precondition otherwise);
//   - the operands share exactly the one species `glue_species` (Hypothesis);
//   - the flow through the glue species is unidirectional: every reaction
//     producing it lies in one operand and every reaction consuming it lies
//     in the other (Hypothesis).
// Returns the ideal-equality verdict; requirement failures raise, they are
// never conflated with a `false` verdict.
bool check_glue_sum_decomposition(const Network& n1, const Network& n2,
                                  const std::string& glue_species,
                                  const std::vector<std::string>& elim_species,
                                  const Budget& budget = {});

// Decides whether restricting the union's elimination ideal recovers each
// operand's elimination ideal when the operands overlap in exactly one
// reaction (or one reversible pair).  Requirements, checked structurally:
//   - both operands monomolecular (NotApplicable otherwise) and free of the
//     zero complex (Precondition otherwise);
//   - `shared` (matched by reactant and product; label checked when given)
//     occurs in both operands with one label, the operands share no other
//     reaction except its reversible partner, and their shared species are
//     exactly its two endpoints (Hypothesis);
//   - one operand owns the reactant's other reactions and the other operand
//     owns the product's: the shared reactant appears in no unshared
//     reaction of one operand and the shared product in no unshared reaction
//     of the opposite one (Hypothesis; both orientations are accepted).
// Returns true iff the restriction equality holds for both operands, for the
// given eliminated species.
bool check_shared_reaction_equality(
    const Network& n1, const Network& n2, const NamedReaction& shared,
    const std::vector<std::string>& elim_species, const Budget& budget = {});

}  // namespace crn
