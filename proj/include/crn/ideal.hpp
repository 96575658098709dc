#pragma once

#include <string>
#include <vector>

#include "crn/poly.hpp"

namespace crn {

// Resource budget for Groebner computations.  Exhaustion raises
// Error(Budget): an explicit "timeout", never a wrong answer.
struct Budget {
  long max_reduction_steps = 1'000'000;
  uint32_t max_total_degree = 60;
};

// Finitely generated ideal.  Generators are nonzero; the empty list is the
// zero ideal.
struct Ideal {
  Ring ring;
  std::vector<Poly> gens;
};

Ideal make_ideal(Ring ring, std::vector<Poly> gens);  // drops zero gens

// Reduced Groebner basis w.r.t. `ord`: monic, pairwise reduced, sorted with
// greatest leading monomial first.  Deterministic for fixed input.
// Pair selection: smallest lcm total degree, first-fit among ties; pairs with
// coprime leading monomials are skipped (Buchberger's first criterion).
std::vector<Poly> buchberger(const Ideal& ideal, const MonomialOrder& ord,
                             const Budget& budget = {});

// Fully reduced normal form of p modulo basis (which need not be a GB; for
// membership tests pass a GB).
Poly normal_form(const Poly& p, const std::vector<Poly>& basis,
                 const MonomialOrder& ord, const Budget& budget = {});

// I \cap Q[vars outside drop_vars], computed with the block elimination
// order (dropped block strictly greater, grevlex within blocks).  The result
// lives in the same ring but its generators avoid the dropped variables.
Ideal eliminate(const Ideal& ideal, const std::vector<int>& drop_vars,
                const Budget& budget = {});

bool ideal_membership(const Poly& p, const Ideal& ideal,
                      const Budget& budget = {});

// Equality via identical reduced Groebner bases (grevlex).
bool ideal_equal(const Ideal& a, const Ideal& b, const Budget& budget = {});

Ideal ideal_sum(const Ideal& a, const Ideal& b);

struct SolutionCount {
  enum class Kind { Empty, Finite, Infinite } kind;
  long count = 0;  // meaningful for Finite: dim of the quotient vector space
                   // (= number of solutions over an algebraic closure,
                   // counted with multiplicity)
};

// Number of solutions of the generators' common vanishing locus over an
// algebraically closed field, via standard monomials of a grevlex GB.
SolutionCount zero_dim_solution_count(const Ideal& ideal,
                                      const Budget& budget = {});

// Canonical rendering: reduced grevlex GB generator texts.
std::vector<std::string> ideal_canonical_text(const Ideal& ideal,
                                              const Budget& budget = {});

}  // namespace crn
