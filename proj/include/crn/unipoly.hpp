#pragma once

#include <utility>
#include <vector>

#include "crn/rational.hpp"

namespace crn {

// Univariate polynomial over Q, coefficients ascending (coef[k] * x^k).
// Trailing zeros are stripped; the zero polynomial has an empty vector.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coef);

  static UniPoly zero() { return UniPoly(); }
  static UniPoly constant(const Rat& c) { return UniPoly({c}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  const Rat& operator[](int k) const { return c_[k]; }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& leading() const { return c_.back(); }

  Rat eval(const Rat& x) const;
  UniPoly derivative() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator-() const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.c_ == b.c_;
  }

  // Euclidean division (field coefficients): returns {quotient, remainder}.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

  // Monic gcd.
  static UniPoly gcd(UniPoly a, UniPoly b);

  UniPoly monic() const;

  // Factors out the highest power of x: returns {q, k} with this = x^k q,
  // q(0) != 0 (or q = 0).
  std::pair<UniPoly, int> strip_root_at_zero() const;

 private:
  std::vector<Rat> c_;
  void trim();
};

// Yun squarefree decomposition: p = lc * prod u_i^i with u_i squarefree,
// pairwise coprime, monic.  Returns the u_i (index 0 <-> multiplicity 1).
std::vector<UniPoly> squarefree_decomposition(const UniPoly& p);

// Number of distinct real roots in the open interval (a, b) of a squarefree
// polynomial, by Sturm's theorem.
int sturm_count_open(const UniPoly& p, const Rat& a, const Rat& b);

// Distinct real roots of p on (0, +inf), via Sturm on the squarefree part.
int count_positive_roots_distinct(const UniPoly& p);

// Positive roots with multiplicity structure: (count of distinct roots of
// multiplicity m, m) pairs for each m that occurs.
struct PositiveRoots {
  bool identically_zero = false;
  int distinct = 0;
  int with_multiplicity = 0;
  std::vector<std::pair<int, int>> by_multiplicity;  // (#roots, multiplicity)
};
PositiveRoots analyze_positive_roots(const UniPoly& p);

// Disjoint isolating intervals (lo, hi], lo >= 0, each containing exactly one
// distinct positive root of p.  Exact rational endpoints.
std::vector<std::pair<Rat, Rat>> isolate_positive_roots(const UniPoly& p);

// Shrinks an isolating interval by bisection until |p(mid)| <= tol or the
// midpoint is an exact root; returns the midpoint.
Rat refine_root(const UniPoly& p, Rat lo, Rat hi, const Rat& tol);

}  // namespace crn
