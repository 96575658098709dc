#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crn/rational.hpp"

namespace crn {

enum class VarKind {
  Rate,  // reaction rate constant (kappa / a_ij labels)
  Conc,  // species concentration
  Aux,   // anything else (e.g. the differential symbol s)
};

struct Var {
  std::string name;
  VarKind kind;
};

// Immutable ordered list of indeterminates.  Cheap to copy (shared).
class Ring {
 public:
  Ring() = default;
  explicit Ring(std::vector<Var> vars);

  int size() const { return data_ ? static_cast<int>(data_->vars.size()) : 0; }
  const Var& var(int i) const { return data_->vars[i]; }
  // -1 when absent.
  int index_of(const std::string& name) const;
  bool same_as(const Ring& other) const { return data_ == other.data_; }
  // Structural equality: same variable names and kinds in the same order.
  bool same_vars(const Ring& other) const;
  const std::vector<Var>& vars() const { return data_->vars; }

 private:
  struct Data {
    std::vector<Var> vars;
    std::map<std::string, int> index;
  };
  std::shared_ptr<const Data> data_;
};

// Dense exponent vector over a ring's indeterminates.
class Monomial {
 public:
  Monomial() : deg_(0) {}
  explicit Monomial(int nvars) : e_(nvars, 0), deg_(0) {}

  uint32_t operator[](int i) const { return e_[i]; }
  int nvars() const { return static_cast<int>(e_.size()); }
  uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(int i, uint32_t v) {
    deg_ += v - e_[i];
    e_[i] = v;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool divides(const Monomial& a, const Monomial& b);  // a | b
  friend bool coprime(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.e_ == b.e_;
  }

  // Structural order used for term storage and canonical text: total degree
  // descending, ties by exponent vector lexicographically descending.
  // This is the graded-lex monomial order.
  static int cmp_deglex(const Monomial& a, const Monomial& b);

 private:
  std::vector<uint32_t> e_;
  uint32_t deg_;
};

// Monomial orders for Groebner computations.
class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, Block };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, {}); }
  // Block elimination order: monomials touching `eliminated` variables are
  // strictly greater than ones that do not; grevlex within each block.
  static MonomialOrder block(std::vector<int> eliminated, int nvars);

  Kind kind() const { return kind_; }
  const std::vector<char>& elim_mask() const { return elim_; }

  // +1 if a > b, 0 if equal, -1 if a < b.
  int compare(const Monomial& a, const Monomial& b) const;

 private:
  MonomialOrder(Kind k, std::vector<char> elim)
      : kind_(k), elim_(std::move(elim)) {}
  Kind kind_;
  std::vector<char> elim_;  // Block only: elim_[i] != 0 iff var i eliminated
};

struct Term {
  Monomial mono;
  Rat coeff;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept sorted deglex-descending with nonzero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Ring ring) : ring_(std::move(ring)) {}
  Poly(Ring ring, const Rat& c);

  static Poly variable(const Ring& ring, int var, uint32_t power = 1);
  static Poly constant(const Ring& ring, const Rat& c) { return Poly(ring, c); }
  static Poly from_monomial(const Ring& ring, Monomial m, const Rat& c);

  const Ring& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::vector<Term>& terms() const { return terms_; }
  uint32_t total_degree() const;  // 0 for the zero polynomial

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rat& c);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Leading term w.r.t. an order (linear scan; storage order is deglex).
  const Term& leading_term(const MonomialOrder& ord) const;

  Poly derivative(int var) const;
  Rat eval(const std::vector<Rat>& point) const;
  // Sets the given variables to zero (drops every term touching them).
  Poly kill_vars(const std::vector<char>& mask) const;
  bool touches(int var) const;
  bool uses_only(const std::vector<char>& allowed_mask) const;
  // Substitute a polynomial for one variable (exact degree blow-up allowed;
  // desk scale only).
  Poly substitute(int var, const Poly& value) const;
  // Maps this polynomial into `target` by variable name; every used variable
  // must exist there.
  Poly embed(const Ring& target) const;

  // Multiply by coeff/monomial (used by division steps).
  Poly times_term(const Rat& c, const Monomial& m) const;

  // Canonical text: "3/2*k12*x1^2 - x2", terms deglex-descending.
  std::string text() const;

  // Internal: assumes sorted unique nonzero terms.
  static Poly raw(Ring ring, std::vector<Term> terms);

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

// Parses the canonical text form back into a polynomial over `ring`.
// Grammar: poly := [+-]? term (('+'|'-') term)* ; term := coeff('*'factor)*
//          | factor('*'factor)* ; factor := name('^'int)? ; coeff := int('/'int)?
Poly parse_poly(const Ring& ring, const std::string& text);

}  // namespace crn
