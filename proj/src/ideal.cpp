#include "crn/ideal.hpp"

#include <algorithm>

#include "crn/error.hpp"

namespace crn {

namespace {

struct Work {
  const MonomialOrder& ord;
  const Budget& budget;
  long steps = 0;

  void bump(const Poly& p) {
    if (++steps > budget.max_reduction_steps)
      fail(ErrorCode::Budget,
           "groebner: reduction step budget exhausted (" +
               std::to_string(budget.max_reduction_steps) + ")");
    if (p.total_degree() > budget.max_total_degree)
      fail(ErrorCode::Budget,
           "groebner: total degree cap exceeded (" +
               std::to_string(budget.max_total_degree) + ")");
  }
};

Poly monic(Poly p, const MonomialOrder& ord) {
  if (p.is_zero()) return p;
  const Rat lc = p.leading_term(ord).coeff;
  if (lc != Rat(1)) p *= Rat(1) / lc;
  return p;
}

// Full reduction: rewrites every reducible term, not only the leading one.
Poly reduce_full(Poly p, const std::vector<Poly>& basis, Work& work) {
  Poly remainder(p.ring());
  while (!p.is_zero()) {
    const Term lt = p.leading_term(work.ord);
    bool reduced = false;
    for (const Poly& g : basis) {
      if (g.is_zero()) continue;
      const Term& glt = g.leading_term(work.ord);
      if (!divides(glt.mono, lt.mono)) continue;
      p -= g.times_term(lt.coeff / glt.coeff, lt.mono / glt.mono);
      work.bump(p);
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder += Poly::from_monomial(p.ring(), lt.mono, lt.coeff);
      p -= Poly::from_monomial(p.ring(), lt.mono, lt.coeff);
    }
  }
  return remainder;
}

}  // namespace

Ideal make_ideal(Ring ring, std::vector<Poly> gens) {
  Ideal ideal{std::move(ring), {}};
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.ring().same_as(ideal.ring)) {
      if (!g.ring().same_vars(ideal.ring))
        fail(ErrorCode::Precondition, "ideal: generator over a different ring");
      g = g.embed(ideal.ring);  // structurally identical ring: rebase
    }
    ideal.gens.push_back(std::move(g));
  }
  return ideal;
}

Poly normal_form(const Poly& p, const std::vector<Poly>& basis,
                 const MonomialOrder& ord, const Budget& budget) {
  Work work{ord, budget};
  return reduce_full(p, basis, work);
}

std::vector<Poly> buchberger(const Ideal& ideal, const MonomialOrder& ord,
                             const Budget& budget) {
  Work work{ord, budget};
  std::vector<Poly> g;
  for (const Poly& f : ideal.gens) {
    Poly r = reduce_full(f, g, work);
    if (!r.is_zero()) g.push_back(monic(std::move(r), ord));
  }

  struct Pair {
    size_t i, j;
    uint32_t lcm_deg;
  };
  std::vector<Pair> pairs;
  auto push_pairs_with = [&](size_t k) {
    for (size_t i = 0; i < k; ++i) {
      const Monomial& a = g[i].leading_term(ord).mono;
      const Monomial& b = g[k].leading_term(ord).mono;
      pairs.push_back({i, k, lcm(a, b).degree()});
    }
  };
  for (size_t k = 1; k < g.size(); ++k) push_pairs_with(k);

  while (!pairs.empty()) {
    // First fit by degree: pick the earliest-inserted pair among those with
    // the smallest lcm total degree.
    size_t best = 0;
    for (size_t t = 1; t < pairs.size(); ++t)
      if (pairs[t].lcm_deg < pairs[best].lcm_deg) best = t;
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<long>(best));

    const Term& fi = g[pr.i].leading_term(ord);
    const Term& fj = g[pr.j].leading_term(ord);
    if (coprime(fi.mono, fj.mono)) continue;  // first criterion
    const Monomial l = lcm(fi.mono, fj.mono);
    Poly s = g[pr.i].times_term(Rat(1) / fi.coeff, l / fi.mono) -
             g[pr.j].times_term(Rat(1) / fj.coeff, l / fj.mono);
    work.bump(s);
    Poly r = reduce_full(std::move(s), g, work);
    if (r.is_zero()) continue;
    g.push_back(monic(std::move(r), ord));
    push_pairs_with(g.size() - 1);
  }

  // Minimalize: drop members whose leading monomial is divisible by another
  // member's. The surviving leading monomials are uniquely determined.
  std::vector<char> dead(g.size(), 0);
  for (size_t i = 0; i < g.size(); ++i) {
    if (dead[i]) continue;
    const Monomial& mi = g[i].leading_term(ord).mono;
    for (size_t j = 0; j < g.size(); ++j) {
      if (i == j || dead[j]) continue;
      const Monomial& mj = g[j].leading_term(ord).mono;
      if (divides(mj, mi) && !(mi == mj && j > i)) {
        dead[i] = 1;
        break;
      }
    }
  }
  std::vector<Poly> minimal;
  for (size_t i = 0; i < g.size(); ++i)
    if (!dead[i]) minimal.push_back(std::move(g[i]));

  // Inter-reduce tails to get the unique reduced basis.
  std::vector<Poly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly r = reduce_full(minimal[i], others, work);
    if (!r.is_zero()) reduced.push_back(monic(std::move(r), ord));
  }

  std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
    return ord.compare(a.leading_term(ord).mono, b.leading_term(ord).mono) > 0;
  });
  return reduced;
}

Ideal eliminate(const Ideal& ideal, const std::vector<int>& drop_vars,
                const Budget& budget) {
  if (drop_vars.empty()) return ideal;
  MonomialOrder ord = MonomialOrder::block(drop_vars, ideal.ring.size());
  std::vector<Poly> gb = buchberger(ideal, ord, budget);
  std::vector<char> mask(ideal.ring.size(), 0);
  for (int v : drop_vars) mask[v] = 1;
  std::vector<Poly> kept;
  for (auto& p : gb) {
    bool free_of_dropped = true;
    for (int v = 0; v < ideal.ring.size() && free_of_dropped; ++v)
      if (mask[v] && p.touches(v)) free_of_dropped = false;
    if (free_of_dropped) kept.push_back(std::move(p));
  }
  return make_ideal(ideal.ring, std::move(kept));
}

bool ideal_membership(const Poly& p, const Ideal& ideal, const Budget& budget) {
  if (p.is_zero()) return true;
  if (ideal.gens.empty()) return false;
  MonomialOrder ord = MonomialOrder::grevlex();
  std::vector<Poly> gb = buchberger(ideal, ord, budget);
  return normal_form(p, gb, ord, budget).is_zero();
}

bool ideal_equal(const Ideal& a, const Ideal& b, const Budget& budget) {
  if (!a.ring.same_as(b.ring) && !a.ring.same_vars(b.ring))
    fail(ErrorCode::Precondition, "ideal_equal: incompatible rings");
  Ideal b2 = a.ring.same_as(b.ring) ? b : make_ideal(a.ring, b.gens);
  MonomialOrder ord = MonomialOrder::grevlex();
  std::vector<Poly> ga = buchberger(a, ord, budget);
  std::vector<Poly> gb = buchberger(b2, ord, budget);
  if (ga.size() != gb.size()) return false;
  for (size_t i = 0; i < ga.size(); ++i)
    if (ga[i] != gb[i]) return false;
  return true;
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  if (!a.ring.same_as(b.ring) && !a.ring.same_vars(b.ring))
    fail(ErrorCode::Precondition, "ideal_sum: incompatible rings");
  std::vector<Poly> gens = a.gens;
  for (const Poly& g : b.gens) {
    Poly g2 = a.ring.same_as(g.ring()) ? g : g.embed(a.ring);
    bool dup = false;
    for (const Poly& h : gens)
      if (h == g2) {
        dup = true;
        break;
      }
    if (!dup) gens.push_back(std::move(g2));
  }
  return make_ideal(a.ring, std::move(gens));
}

SolutionCount zero_dim_solution_count(const Ideal& ideal,
                                      const Budget& budget) {
  MonomialOrder ord = MonomialOrder::grevlex();
  std::vector<Poly> gb = buchberger(ideal, ord, budget);
  if (gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero())
    return {SolutionCount::Kind::Empty, 0};

  const int n = ideal.ring.size();
  std::vector<Monomial> lms;
  lms.reserve(gb.size());
  for (const Poly& p : gb) lms.push_back(p.leading_term(ord).mono);

  // Finite-dimensional quotient iff every variable has a pure power among
  // the leading monomials.
  std::vector<uint32_t> bound(n, 0);
  for (int v = 0; v < n; ++v) {
    for (const Monomial& m : lms) {
      if (m[v] == 0 || m.degree() != m[v]) continue;  // not a pure power of v
      if (bound[v] == 0 || m[v] < bound[v]) bound[v] = m[v];
    }
    if (bound[v] == 0) return {SolutionCount::Kind::Infinite, 0};
  }

  long capacity = 1;
  for (int v = 0; v < n; ++v) {
    capacity *= bound[v];
    if (capacity > 2'000'000)
      fail(ErrorCode::Budget, "solution count: standard monomial enumeration too large");
  }

  // Count standard monomials: exponent tuples below the pure-power bounds
  // that are divisible by no leading monomial.
  long count = 0;
  Monomial probe(n);
  std::vector<uint32_t> e(n, 0);
  while (true) {
    for (int v = 0; v < n; ++v) probe.set(v, e[v]);
    bool standard = true;
    for (const Monomial& m : lms)
      if (divides(m, probe)) {
        standard = false;
        break;
      }
    if (standard) ++count;
    int v = 0;
    while (v < n) {
      if (++e[v] < bound[v]) break;
      e[v] = 0;
      ++v;
    }
    if (v == n) break;
  }
  return {SolutionCount::Kind::Finite, count};
}

std::vector<std::string> ideal_canonical_text(const Ideal& ideal,
                                              const Budget& budget) {
  std::vector<std::string> out;
  for (const Poly& p : buchberger(ideal, MonomialOrder::grevlex(), budget))
    out.push_back(p.text());
  return out;
}

}  // namespace crn
