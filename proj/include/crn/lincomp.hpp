#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crn/net.hpp"
#include "crn/poly.hpp"

namespace crn {

// ---------------------------------------------------------------------------
// Linear (compartmental) models.
//
// A monomolecular network with flows is viewed as a labeled digraph on its
// species: an edge Xj -> Xk carries the rate label a = kappa(j->k), an
// outflow Xj -> 0 is a "leak" at j, and an inflow 0 -> Xj marks j as an
// input compartment driven by a time-dependent forcing u(t) named after the
// inflow's rate label.  The dynamics are x' = A x + u with the compartmental
// matrix A:  A[k][j] = a(j->k) off the diagonal and
// A[j][j] = -(leak at j) - sum of labels of edges leaving j.
// ---------------------------------------------------------------------------

struct LinearModel {
  std::vector<std::string> comp;  // compartment (species) names
  Ring ring;  // parameter ring: one Rate var per non-inflow reaction
  std::vector<std::vector<Poly>> A;  // compartmental matrix over `ring`
  // Leak coefficient per compartment (zero polynomial when none).  After a
  // restriction this is a sum: the original leak plus every edge label that
  // used to leave the retained vertex set.
  std::vector<Poly> leak;
  std::vector<int> inputs;   // compartment positions with an inflow, ascending
  std::vector<int> outputs;  // compartment positions, ascending
  std::vector<std::string> input_label;  // inflow rate label per `inputs` entry

  int n() const { return static_cast<int>(comp.size()); }
  int position(const std::string& name) const;  // -1 when absent
  bool is_input(int pos) const;
  bool is_output(int pos) const;
};

// Extracts the linear-compartmental view of a monomolecular model.
// pre: m.net.is_monomolecular()
LinearModel linear_model(const Model& m);

// Positions (ascending, including `out`) of every compartment with a
// directed edge-path to `out`.  Flows are side data, not edges.
// pre: out is an output position
std::vector<int> output_reachable_vertices(const LinearModel& lm, int out);

// Induced restriction to the vertex positions `vh` (ascending): edges between
// retained vertices survive, edges leaving `vh` turn into leaks (their labels
// join the retained vertex's leak sum), inputs/outputs are intersected.
// pre: vh nonempty, ascending, and contains at least one output
LinearModel restrict_model(const LinearModel& lm, const std::vector<int>& vh);

// Adds an outflow reaction at the named compartment with a fresh label.
// pre: the compartment exists and has no outflow yet
Model add_leak(const Model& m, const std::string& compartment);

// ---------------------------------------------------------------------------
// Input-output equations.
//
// With s the differential symbol, the observation z = x_i of an output
// compartment i satisfies   det(sI - A_H) z_i = sum_j +-det((sI - A_H)_{ji}) u_j
// where H is the output-reachable restriction to i, the sum runs over input
// compartments j inside H, and (.)_{ji} removes row j and column i.  The
// left-hand side is monic of degree |H|.
// ---------------------------------------------------------------------------

// Polynomial in s with coefficients in the parameter ring; index = s-power.
using SPoly = std::vector<Poly>;

struct IOEquation {
  std::string output;  // species whose observation the equation constrains
  Ring ring;           // parameter ring of the full model
  std::vector<std::string> vh;  // compartments of the restriction, ascending
  SPoly lhs;                    // monic, degree == vh.size()
  std::vector<std::string> rhs_inputs;  // input species inside H, ascending
  std::vector<std::string> rhs_labels;  // forcing names (inflow labels)
  std::vector<SPoly> rhs;               // parallel to rhs_inputs
};

// pre: out is an output position; some input compartment reaches out
IOEquation io_equation(const LinearModel& lm, int out);

// Deterministic rendering, e.g.
// "z_X1'' + (a12 + a21 + a32)*z_X1' + (a21*a32)*z_X1 = u1' + (a12 + a32)*u1".
std::string io_equation_text(const IOEquation& eq);

// All parameter-dependent coefficients of the monic input-output equations,
// one equation per output: the lhs coefficients below the leading term and
// the rhs coefficients, skipping rational constants (they carry no parameter
// information).
struct CoefficientMap {
  Ring ring;
  std::vector<Poly> coords;
  int r = 0;  // parameter count == ring.size()
  std::vector<IOEquation> equations;
};

CoefficientMap coefficient_map(const LinearModel& lm);

// ---------------------------------------------------------------------------
// Identifiability.
// ---------------------------------------------------------------------------

enum class IdentKind {
  GloballyIdentifiable,
  LocallyIdentifiable,
  Unidentifiable,
  Inconclusive,
};

std::string to_string(IdentKind k);

struct IdentVerdict {
  IdentKind kind = IdentKind::Inconclusive;
  unsigned seed = 0;
  int rank = 0;    // maximum Jacobian rank observed
  int r = 0;       // parameter count
  int T = 0;       // coefficient-map coordinate count
  int points = 0;  // parameter points sampled
  long fiber = -1; // fiber-ideal solution count when computed
  std::string note;
};

// Rank of the exact Jacobian of the coefficient map at random rational
// points (entries sampled uniformly from the integers 1..10^4; up to 5
// fresh points are tried, keeping the maximum rank).  Full rank means the
// map is generically locally injective.
IdentVerdict local_identifiability(const LinearModel& lm, unsigned seed);

// Refines a locally identifiable verdict by counting the solutions of the
// fiber ideal < c_t(a) - c_t(a*) > at a random rational point a*: exactly
// one solution upgrades the verdict to globally identifiable, finitely many
// keep it local, and a budget exhaustion yields Inconclusive.
IdentVerdict global_identifiability(const LinearModel& lm, unsigned seed);

// ---------------------------------------------------------------------------
// Rational functions and differential expressions.
// ---------------------------------------------------------------------------

// Quotient of polynomials.  Not canonicalized (no multivariate gcd); the
// denominator is normalized monic w.r.t. the deglex leading term, equality
// is decided by cross-multiplication.
struct RatFunc {
  Poly num;
  Poly den;  // nonzero

  RatFunc() = default;
  explicit RatFunc(Poly n);
  RatFunc(Poly n, Poly d);

  bool is_zero() const { return num.is_zero(); }
  std::string text() const;
};

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a, const RatFunc& b);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc operator/(const RatFunc& a, const RatFunc& b);
bool ratfunc_equal(const RatFunc& a, const RatFunc& b);

// A derivative of an observed output (by species name) or of an input
// forcing (by inflow label).
struct DiffVar {
  enum class Kind { Output, Input };
  Kind kind = Kind::Output;
  std::string name;
  int order = 0;

  friend bool operator<(const DiffVar& a, const DiffVar& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.name != b.name) return a.name < b.name;
    return a.order < b.order;
  }
  friend bool operator==(const DiffVar& a, const DiffVar& b) {
    return a.kind == b.kind && a.name == b.name && a.order == b.order;
  }
  std::string text() const;
};

// Linear combination of output/input derivatives over the field of rational
// functions in the parameters.
struct LinearExpr {
  std::map<DiffVar, RatFunc> terms;  // zero coefficients are not stored

  void add(const DiffVar& v, const RatFunc& c);
  std::string text() const;
};

// A linear differential equation  sum_q lhs[q] z^(q) = rhs  with rational-
// function coefficients; z observes `output`, the rhs mixes input forcings
// and (possibly) other observed outputs.
struct DiffEquation {
  Ring ring;
  std::string output;
  std::vector<RatFunc> lhs;  // coefficient of z^(q); top entry nonzero
  LinearExpr rhs;
};

DiffEquation to_diff_equation(const IOEquation& eq);
std::string diff_equation_text(const DiffEquation& eq);

// Exact trajectory oracle: substitutes the jet relations
// x^(q+1) = A x^(q) + u^(q) of `lm` into the equation and checks that it
// collapses to zero identically in the initial state and the input jets.
// Inputs named in the equation but absent from `lm` are treated as zero
// forcings.
bool holds_along_trajectories(const DiffEquation& eq, const LinearModel& lm);

// ---------------------------------------------------------------------------
// Algebraic observability.
//
// When every compartment reaches the output i, the non-output coordinates
// can be solved from the observed output and the inputs:  B xtilde = c with
// B the (n-1)x(n-1) matrix whose rows are a, a*Atilde, ..., a*Atilde^(n-2)
// (a = row i of A without column i, Atilde = A minus row/column i), and c
// built from derivatives of x_i and the inputs.  det B is a nonzero
// polynomial, so xtilde = B^{-1} c gives one expression per compartment.
// ---------------------------------------------------------------------------

struct Observability {
  Ring ring;
  std::vector<std::string> order;  // non-output compartments ascending, then i
  std::vector<std::vector<Poly>> B;
  Poly det_b;
  // x_j = expression, for the non-output compartments in ascending order.
  std::vector<std::pair<std::string, LinearExpr>> exprs;
};

// pre: out is an output position; the output-reachable set to out is the
// whole compartment set
Observability observability_equations(const LinearModel& lm, int out);

// ---------------------------------------------------------------------------
// Walk matrix of a directed 0-tree.
//
// A directed 0-tree on {0,...,n-1} has n-1 edges, no undirected cycle, and a
// directed path from every vertex to 0.  Adding, for each edge i->j with
// label a(j,i), a self-loop at i labeled -a(j,i) gives the graph whose
// length-i walks from j to 0 fill the matrix entry (i,j).  Its determinant
// is a nonzero polynomial.
// ---------------------------------------------------------------------------

struct TreeWalkMatrix {
  Ring ring;  // one Rate var per tree edge, sources ascending
  std::vector<std::vector<Poly>> B;  // (n-1) x (n-1)
  Poly det_b;
};

// edges: (i, j) means i -> j on vertices 0..n-1.
// pre: the edges form a directed 0-tree
TreeWalkMatrix tree_walk_matrix(int n,
                                const std::vector<std::pair<int, int>>& edges);

// ---------------------------------------------------------------------------
// Substituted input-output equation for a single-reaction one-way-flow join.
//
// When the upstream model's outflow Xi -> 0 and the downstream model's
// inflow 0 -> Xj are replaced by the bridge Xi -> Xj (inheriting the outflow
// label kappa), the downstream forcing u satisfies u = kappa * x_i along
// trajectories of the joined model, and x_i is in turn expressed through an
// observed upstream output by the observability equations.  Substituting
// this into the downstream input-output equation yields an equation for the
// joined model.
// ---------------------------------------------------------------------------

// pre: join is Scenario 1 with exactly one flow; some upstream output
// reaches every upstream compartment; the downstream equation for `output`
// exists.  The result's ring is the joined model's parameter ring.
DiffEquation substituted_io_equation(const Model& m_prev, const Model& n_r,
                                     const OneWayFlowSpec& join,
                                     const std::string& output);

}  // namespace crn
