#include "crn/unipoly.hpp"

#include <algorithm>

#include "crn/error.hpp"

namespace crn {

UniPoly::UniPoly(std::vector<Rat> coef) : c_(std::move(coef)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rat UniPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rat> c = c_;
  for (auto& v : c) v = -v;
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(c));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a,
                                            const UniPoly& b) {
  if (b.is_zero()) fail(ErrorCode::Precondition, "unipoly: division by zero");
  std::vector<Rat> rem = a.c_;
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rat> quot(a.degree() - db + 1, Rat(0));
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(rem[k]) == 0) continue;
    Rat q = rem[k] / b.leading();
    quot[k - db] = q;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= q * b.c_[j];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rat> c = c_;
  const Rat inv = Rat(1) / c.back();
  for (auto& v : c) v *= inv;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::pair<UniPoly, int> UniPoly::strip_root_at_zero() const {
  if (is_zero()) return {UniPoly(), 0};
  size_t k = 0;
  while (k < c_.size() && sgn(c_[k]) == 0) ++k;
  std::vector<Rat> c(c_.begin() + static_cast<long>(k), c_.end());
  return {UniPoly(std::move(c)), static_cast<int>(k)};
}

std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
  std::vector<UniPoly> out;
  if (p.is_zero() || p.degree() == 0) return out;
  UniPoly a0 = UniPoly::gcd(p, p.derivative());
  UniPoly b = UniPoly::divmod(p, a0).first;
  UniPoly c = UniPoly::divmod(p.derivative(), a0).first;
  UniPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UniPoly u = UniPoly::gcd(b, d);
    out.push_back(u.monic());
    b = UniPoly::divmod(b, u).first;
    c = UniPoly::divmod(d, u).first;
    d = c - b.derivative();
  }
  return out;
}

namespace {

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero()) {
    const UniPoly& a = chain[chain.size() - 2];
    const UniPoly& b = chain.back();
    UniPoly r = UniPoly::divmod(a, b).second;
    chain.push_back(-r);
  }
  chain.pop_back();  // drop the trailing zero
  return chain;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int variations_at(const std::vector<UniPoly>& chain, const Rat& x) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain) s.push_back(sgn(q.eval(x)));
  return sign_changes(s);
}

int variations_at_plus_infinity(const std::vector<UniPoly>& chain) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain)
    s.push_back(q.is_zero() ? 0 : sgn(q.leading()));
  return sign_changes(s);
}

}  // namespace

int sturm_count_open(const UniPoly& p, const Rat& a, const Rat& b) {
  if (p.is_zero()) fail(ErrorCode::Precondition, "sturm: zero polynomial");
  if (sgn(p.eval(a)) == 0 || sgn(p.eval(b)) == 0)
    fail(ErrorCode::Precondition, "sturm: endpoint is a root");
  auto chain = sturm_chain(p);
  return variations_at(chain, a) - variations_at(chain, b);
}

int count_positive_roots_distinct(const UniPoly& p) {
  if (p.is_zero())
    fail(ErrorCode::Precondition, "root count of the zero polynomial");
  UniPoly q = UniPoly::divmod(p, UniPoly::gcd(p, p.derivative())).first;
  q = q.strip_root_at_zero().first;
  if (q.degree() <= 0) return 0;
  auto chain = sturm_chain(q);
  return variations_at(chain, Rat(0)) - variations_at_plus_infinity(chain);
}

PositiveRoots analyze_positive_roots(const UniPoly& p) {
  PositiveRoots out;
  if (p.is_zero()) {
    out.identically_zero = true;
    return out;
  }
  auto factors = squarefree_decomposition(p);
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() <= 0) continue;
    UniPoly q = factors[i].strip_root_at_zero().first;
    if (q.degree() <= 0) continue;
    int k = count_positive_roots_distinct(q);
    if (k == 0) continue;
    const int mult = static_cast<int>(i) + 1;
    out.distinct += k;
    out.with_multiplicity += k * mult;
    out.by_multiplicity.push_back({k, mult});
  }
  return out;
}

std::vector<std::pair<Rat, Rat>> isolate_positive_roots(const UniPoly& p) {
  std::vector<std::pair<Rat, Rat>> out;
  if (p.is_zero())
    fail(ErrorCode::Precondition, "isolate roots of the zero polynomial");
  UniPoly q = UniPoly::divmod(p, UniPoly::gcd(p, p.derivative())).first;
  q = q.strip_root_at_zero().first.monic();
  if (q.degree() <= 0) return out;

  // Cauchy bound on root magnitude.
  Rat bound(1);
  for (int k = 0; k < q.degree(); ++k) {
    Rat m = abs(q[k]);
    if (m > bound) bound = m;
  }
  bound += 1;

  auto chain = sturm_chain(q);
  // Pick a strictly positive left endpoint below every positive root: walk
  // down powers of two until the count over (lo, bound) stabilizes at the
  // total positive count.
  const int total =
      variations_at(chain, Rat(0)) - variations_at_plus_infinity(chain);
  if (total == 0) return out;

  struct Seg {
    Rat lo, hi;
    int count;
  };
  std::vector<Seg> stack;
  // (0, bound] holds all positive roots; q(0) != 0 after stripping; ensure
  // q(bound) != 0 (bound exceeds all roots so it is not a root).
  stack.push_back({Rat(0), bound, total});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 1) {
      out.push_back({s.lo, s.hi});
      continue;
    }
    // Split; nudge the midpoint off roots if needed.
    Rat mid = (s.lo + s.hi) / 2;
    int tries = 0;
    while (sgn(q.eval(mid)) == 0 && tries < 50) {
      mid = s.lo + (s.hi - s.lo) * Rat(1, 3 + tries);
      ++tries;
    }
    if (sgn(q.eval(mid)) == 0) {
      // Exact root hit repeatedly: emit the degenerate interval.
      out.push_back({mid, mid});
      // Recurse around it with counts recomputed on nudged endpoints.
      Rat eps = (s.hi - s.lo) / 1024;
      while (sgn(q.eval(mid - eps)) == 0 || sgn(q.eval(mid + eps)) == 0)
        eps /= 2;
      int left = variations_at(chain, s.lo) - variations_at(chain, mid - eps);
      int right = variations_at(chain, mid + eps) - variations_at(chain, s.hi);
      if (left > 0) stack.push_back({s.lo, mid - eps, left});
      if (right > 0) stack.push_back({mid + eps, s.hi, right});
      continue;
    }
    int left = variations_at(chain, s.lo) - variations_at(chain, mid);
    int right = variations_at(chain, mid) - variations_at(chain, s.hi);
    if (left > 0) stack.push_back({s.lo, mid, left});
    if (right > 0) stack.push_back({mid, s.hi, right});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Rat refine_root(const UniPoly& p, Rat lo, Rat hi, const Rat& tol) {
  if (lo == hi) return lo;
  // Bisect on the squarefree part (odd sign change guaranteed), terminate on
  // the original polynomial's residual.
  UniPoly q = UniPoly::divmod(p, UniPoly::gcd(p, p.derivative())).first;
  q = q.strip_root_at_zero().first;
  int slo = sgn(q.eval(lo));
  if (slo == 0) return lo;
  if (sgn(q.eval(hi)) == 0) {
    if (abs(p.eval(hi)) <= tol) return hi;
  }
  for (int iter = 0; iter < 20000; ++iter) {
    Rat mid = (lo + hi) / 2;
    Rat pv = p.eval(mid);
    if (abs(pv) <= tol) return mid;
    int sm = sgn(q.eval(mid));
    if (sm == 0) return mid;
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
  fail(ErrorCode::Budget, "root refinement did not reach tolerance");
}

}  // namespace crn
