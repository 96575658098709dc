#include "crn/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "crn/error.hpp"

namespace crn {

Ring::Ring(std::vector<Var> vars) {
  auto d = std::make_shared<Data>();
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name.empty())
      fail(ErrorCode::Precondition, "ring: empty indeterminate name");
    auto [it, fresh] = d->index.emplace(vars[i].name, static_cast<int>(i));
    if (!fresh)
      fail(ErrorCode::Precondition,
           "ring: duplicate indeterminate name '" + vars[i].name + "'");
  }
  d->vars = std::move(vars);
  data_ = std::move(d);
}

int Ring::index_of(const std::string& name) const {
  if (!data_) return -1;
  auto it = data_->index.find(name);
  return it == data_->index.end() ? -1 : it->second;
}

bool Ring::same_vars(const Ring& other) const {
  if (same_as(other)) return true;
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i)
    if (var(i).name != other.var(i).name || var(i).kind != other.var(i).kind)
      return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (int i = 0; i < r.nvars(); ++i) r.e_[i] += b.e_[i];
  r.deg_ += b.deg_;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (int i = 0; i < r.nvars(); ++i) {
    if (r.e_[i] < b.e_[i])
      fail(ErrorCode::Internal, "monomial division not exact");
    r.e_[i] -= b.e_[i];
  }
  r.deg_ -= b.deg_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r.deg_ = 0;
  for (int i = 0; i < r.nvars(); ++i) {
    r.e_[i] = std::max(a.e_[i], b.e_[i]);
    r.deg_ += r.e_[i];
  }
  return r;
}

bool divides(const Monomial& a, const Monomial& b) {
  if (a.deg_ > b.deg_) return false;
  for (int i = 0; i < a.nvars(); ++i)
    if (a.e_[i] > b.e_[i]) return false;
  return true;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < a.nvars(); ++i)
    if (a.e_[i] != 0 && b.e_[i] != 0) return false;
  return true;
}

int Monomial::cmp_deglex(const Monomial& a, const Monomial& b) {
  if (a.deg_ != b.deg_) return a.deg_ > b.deg_ ? 1 : -1;
  for (size_t i = 0; i < a.e_.size(); ++i)
    if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i] ? 1 : -1;
  return 0;
}

MonomialOrder MonomialOrder::block(std::vector<int> eliminated, int nvars) {
  std::vector<char> mask(nvars, 0);
  for (int i : eliminated) {
    if (i < 0 || i >= nvars)
      fail(ErrorCode::Precondition, "block order: variable index out of range");
    mask[i] = 1;
  }
  return MonomialOrder(Kind::Block, std::move(mask));
}

namespace {

// Grevlex restricted to the positions where mask != 0 (mask empty = all).
// Returns +1 when a > b.
int cmp_grevlex_masked(const Monomial& a, const Monomial& b,
                       const std::vector<char>* mask, char want) {
  long da = 0, db = 0;
  const int n = a.nvars();
  for (int i = 0; i < n; ++i) {
    if (mask && (*mask)[i] != want) continue;
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  // Reverse lexicographic tiebreak: scan from the last variable; the first
  // difference decides, with the SMALLER exponent belonging to the greater
  // monomial.
  for (int i = n - 1; i >= 0; --i) {
    if (mask && (*mask)[i] != want) continue;
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      for (int i = 0; i < a.nvars(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case Kind::GrevLex:
      return cmp_grevlex_masked(a, b, nullptr, 0);
    case Kind::Block: {
      int c = cmp_grevlex_masked(a, b, &elim_, 1);
      if (c != 0) return c;
      return cmp_grevlex_masked(a, b, &elim_, 0);
    }
  }
  return 0;
}

Poly::Poly(Ring ring, const Rat& c) : ring_(std::move(ring)) {
  if (sgn(c) != 0) terms_.push_back({Monomial(ring_.size()), c});
}

Poly Poly::variable(const Ring& ring, int var, uint32_t power) {
  if (var < 0 || var >= ring.size())
    fail(ErrorCode::Precondition, "poly: variable index out of range");
  Monomial m(ring.size());
  m.set(var, power);
  return from_monomial(ring, m, Rat(1));
}

Poly Poly::from_monomial(const Ring& ring, Monomial m, const Rat& c) {
  Poly p(ring);
  if (sgn(c) != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Poly Poly::raw(Ring ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

uint32_t Poly::total_degree() const {
  // Storage is deglex-descending, so the first term carries the max degree.
  return terms_.empty() ? 0 : terms_[0].mono.degree();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    if (ring_.size() == 0 && !ring_.same_as(o.ring_)) ring_ = o.ring_;
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = Monomial::cmp_deglex(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Rat s = terms_[i].coeff + o.terms_[j].coeff;
      if (sgn(s) != 0) out.push_back({terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) out.push_back(std::move(terms_[i++]));
  while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(a.ring_.size() ? a.ring_ : b.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  auto cmp = [](const Monomial& x, const Monomial& y) {
    return Monomial::cmp_deglex(x, y) > 0;
  };
  std::map<Monomial, Rat, decltype(cmp)> acc(cmp);
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      Monomial m = ta.mono * tb.mono;
      Rat c = ta.coeff * tb.coeff;
      auto [it, fresh] = acc.emplace(std::move(m), c);
      if (!fresh) it->second += c;
    }
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) r.terms_.push_back({m, std::move(c)});
  return r;
}

Poly& Poly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) ||
        a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

const Term& Poly::leading_term(const MonomialOrder& ord) const {
  if (terms_.empty())
    fail(ErrorCode::Internal, "leading_term of zero polynomial");
  size_t best = 0;
  for (size_t i = 1; i < terms_.size(); ++i)
    if (ord.compare(terms_[i].mono, terms_[best].mono) > 0) best = i;
  return terms_[best];
}

Poly Poly::derivative(int var) const {
  Poly r(ring_);
  for (const auto& t : terms_) {
    uint32_t e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    r += from_monomial(ring_, std::move(m), t.coeff * Rat(static_cast<long>(e)));
  }
  return r;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
  if (static_cast<int>(point.size()) != ring_.size())
    fail(ErrorCode::Precondition, "eval: point dimension mismatch");
  Rat acc(0);
  for (const auto& t : terms_) {
    Rat v = t.coeff;
    for (int i = 0; i < ring_.size(); ++i)
      for (uint32_t k = 0; k < t.mono[i]; ++k) v *= point[i];
    acc += v;
  }
  return acc;
}

Poly Poly::kill_vars(const std::vector<char>& mask) const {
  Poly r(ring_);
  for (const auto& t : terms_) {
    bool keep = true;
    for (int i = 0; i < ring_.size() && keep; ++i)
      if (mask[i] && t.mono[i] > 0) keep = false;
    if (keep) r.terms_.push_back(t);
  }
  return r;
}

bool Poly::touches(int var) const {
  for (const auto& t : terms_)
    if (t.mono[var] > 0) return true;
  return false;
}

bool Poly::uses_only(const std::vector<char>& allowed) const {
  for (const auto& t : terms_)
    for (int i = 0; i < ring_.size(); ++i)
      if (t.mono[i] > 0 && !allowed[i]) return false;
  return true;
}

Poly Poly::substitute(int var, const Poly& value) const {
  Poly r(ring_);
  for (const auto& t : terms_) {
    uint32_t e = t.mono[var];
    Monomial m = t.mono;
    m.set(var, 0);
    Poly piece = from_monomial(ring_, std::move(m), t.coeff);
    for (uint32_t k = 0; k < e; ++k) piece = piece * value;
    r += piece;
  }
  return r;
}

Poly Poly::embed(const Ring& target) const {
  if (target.same_as(ring_)) return *this;
  std::vector<int> map(ring_.size());
  for (int i = 0; i < ring_.size(); ++i) {
    map[i] = target.index_of(ring_.var(i).name);
  }
  Poly r(target);
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target.size());
    for (int i = 0; i < ring_.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (map[i] < 0)
        fail(ErrorCode::Precondition,
             "embed: target ring lacks indeterminate '" + ring_.var(i).name +
                 "'");
      m.set(map[i], t.mono[i]);
    }
    terms.push_back({std::move(m), t.coeff});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return Monomial::cmp_deglex(a.mono, b.mono) > 0;
  });
  r = raw(target, std::move(terms));
  return r;
}

Poly Poly::times_term(const Rat& c, const Monomial& m) const {
  Poly r(ring_);
  if (sgn(c) == 0) return r;
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) terms.push_back({t.mono * m, t.coeff * c});
  // Multiplying every monomial by a fixed monomial preserves deglex order.
  return raw(ring_, std::move(terms));
}

std::string Poly::text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.coeff;
    if (first) {
      if (sgn(c) < 0) {
        os << "-";
        c = -c;
      }
      first = false;
    } else {
      if (sgn(c) < 0) {
        os << " - ";
        c = -c;
      } else {
        os << " + ";
      }
    }
    bool coeff_printed = false;
    if (t.mono.is_one() || c != Rat(1)) {
      os << c.get_str();
      coeff_printed = true;
    }
    bool any_var = false;
    for (int i = 0; i < ring_.size(); ++i) {
      uint32_t e = t.mono[i];
      if (e == 0) continue;
      if (coeff_printed || any_var) os << "*";
      os << ring_.var(i).name;
      if (e > 1) os << "^" << e;
      any_var = true;
    }
  }
  return os.str();
}

namespace {

struct PolyLexer {
  const std::string& s;
  size_t i = 0;
  explicit PolyLexer(const std::string& str) : s(str) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string number() {
    skip_ws();
    size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (b == i) fail(ErrorCode::Parse, "poly: expected number at offset " +
                                           std::to_string(b));
    return s.substr(b, i - b);
  }
  std::string name() {
    skip_ws();
    size_t b = i;
    if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) ||
                         s[i] == '_'))
      ++i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                            s[i] == '_'))
      ++i;
    if (b == i) fail(ErrorCode::Parse, "poly: expected name at offset " +
                                           std::to_string(b));
    return s.substr(b, i - b);
  }
};

}  // namespace

Poly parse_poly(const Ring& ring, const std::string& text) {
  PolyLexer lx(text);
  Poly result(ring);
  bool expect_term = true;
  int sign = 1;
  if (lx.accept('-')) sign = -1;
  else lx.accept('+');
  while (true) {
    if (lx.eof()) {
      if (expect_term) fail(ErrorCode::Parse, "poly: dangling sign in '" + text + "'");
      break;
    }
    // one term
    Rat coeff(sign);
    Monomial mono(ring.size());
    bool saw_factor = false;
    while (true) {
      char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Rat v(rat_from_string(lx.number()));
        if (lx.accept('/')) {
          Rat d(rat_from_string(lx.number()));
          if (sgn(d) == 0) fail(ErrorCode::Parse, "poly: zero denominator");
          v /= d;
        }
        coeff *= v;
        saw_factor = true;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string nm = lx.name();
        int vi = ring.index_of(nm);
        if (vi < 0)
          fail(ErrorCode::Parse, "poly: unknown indeterminate '" + nm + "'");
        uint32_t e = 1;
        if (lx.accept('^')) e = static_cast<uint32_t>(std::stoul(lx.number()));
        mono.set(vi, mono[vi] + e);
        saw_factor = true;
      } else {
        fail(ErrorCode::Parse, std::string("poly: unexpected character '") + c +
                                   "' in '" + text + "'");
      }
      if (!lx.accept('*')) break;
    }
    if (!saw_factor) fail(ErrorCode::Parse, "poly: empty term in '" + text + "'");
    result += Poly::from_monomial(ring, std::move(mono), coeff);
    expect_term = false;
    if (lx.eof()) break;
    if (lx.accept('+')) {
      sign = 1;
      expect_term = true;
    } else if (lx.accept('-')) {
      sign = -1;
      expect_term = true;
    } else {
      fail(ErrorCode::Parse, "poly: expected '+' or '-' in '" + text + "'");
    }
  }
  return result;
}

}  // namespace crn
