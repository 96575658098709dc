#include "crn/lincomp.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "crn/error.hpp"
#include "crn/ideal.hpp"
#include "crn/linalg.hpp"

namespace crn {

namespace {

// ---- polynomial matrix helpers ---------------------------------------------

Poly poly_det(const Ring& ring, const std::vector<std::vector<Poly>>& m) {
  const int k = static_cast<int>(m.size());
  if (k == 0) return Poly::constant(ring, 1);
  if (k == 1) return m[0][0];
  Poly acc(ring);
  for (int r = 0; r < k; ++r) {
    if (m[r][0].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    minor.reserve(k - 1);
    for (int i = 0; i < k; ++i) {
      if (i == r) continue;
      std::vector<Poly> row(m[i].begin() + 1, m[i].end());
      minor.push_back(std::move(row));
    }
    Poly piece = m[r][0] * poly_det(ring, minor);
    if (r % 2) acc -= piece;
    else acc += piece;
  }
  return acc;
}

// ---- dense polynomials in the differential symbol s -------------------------

void sp_trim(SPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

SPoly sp_add(SPoly a, const SPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Poly(b.empty() ? Ring() : b[0].ring()));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  sp_trim(a);
  return a;
}

SPoly sp_mul(const Ring& ring, const SPoly& a, const SPoly& b) {
  if (a.empty() || b.empty()) return {};
  SPoly r(a.size() + b.size() - 1, Poly(ring));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  sp_trim(r);
  return r;
}

SPoly sp_scale(SPoly a, const Rat& c) {
  for (Poly& p : a) p *= c;
  sp_trim(a);
  return a;
}

SPoly sp_det(const Ring& ring, const std::vector<std::vector<SPoly>>& m) {
  const int k = static_cast<int>(m.size());
  if (k == 0) return {Poly::constant(ring, 1)};
  if (k == 1) return m[0][0];
  SPoly acc;
  for (int r = 0; r < k; ++r) {
    if (m[r][0].empty()) continue;
    std::vector<std::vector<SPoly>> minor;
    minor.reserve(k - 1);
    for (int i = 0; i < k; ++i) {
      if (i == r) continue;
      std::vector<SPoly> row(m[i].begin() + 1, m[i].end());
      minor.push_back(std::move(row));
    }
    SPoly piece = sp_mul(ring, m[r][0], sp_det(ring, minor));
    if (r % 2) piece = sp_scale(std::move(piece), rat(-1));
    acc = sp_add(std::move(acc), piece);
  }
  return acc;
}

std::string derivative_marks(int order) {
  if (order <= 0) return "";
  if (order <= 3) return std::string(order, '\'');
  return "^(" + std::to_string(order) + ")";
}

// Deterministic across standard libraries (uniform_int_distribution is not).
long rand_int(std::mt19937& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

std::vector<Rat> random_point(std::mt19937& rng, int n) {
  std::vector<Rat> p;
  p.reserve(n);
  for (int i = 0; i < n; ++i) p.push_back(rat(rand_int(rng, 1, 10000)));
  return p;
}

}  // namespace

// ---- LinearModel -------------------------------------------------------------

int LinearModel::position(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (comp[i] == name) return i;
  return -1;
}

bool LinearModel::is_input(int pos) const {
  return std::find(inputs.begin(), inputs.end(), pos) != inputs.end();
}

bool LinearModel::is_output(int pos) const {
  return std::find(outputs.begin(), outputs.end(), pos) != outputs.end();
}

LinearModel linear_model(const Model& m) {
  const Network& net = m.net;
  if (!net.is_monomolecular())
    fail(ErrorCode::Precondition,
         "linear compartmental view requires a monomolecular network");
  const int n = static_cast<int>(net.species.size());

  std::vector<Var> vars;
  for (const Reaction& r : net.reactions)
    if (!r.reactant.is_zero()) vars.push_back({r.label, VarKind::Rate});
  Ring ring{vars};

  LinearModel lm;
  lm.comp = net.species;
  lm.ring = ring;
  lm.A.assign(n, std::vector<Poly>(n, Poly(ring)));
  lm.leak.assign(n, Poly(ring));

  std::vector<std::pair<int, std::string>> ins;
  for (const Reaction& r : net.reactions) {
    if (r.reactant.is_zero()) {
      ins.emplace_back(r.product.parts.begin()->first, r.label);
      continue;
    }
    const int i = r.reactant.parts.begin()->first;
    Poly v = Poly::variable(ring, ring.index_of(r.label));
    lm.A[i][i] -= v;
    if (r.product.is_zero()) {
      lm.leak[i] += v;
    } else {
      lm.A[r.product.parts.begin()->first][i] += v;
    }
  }
  std::sort(ins.begin(), ins.end());
  for (auto& [pos, label] : ins) {
    lm.inputs.push_back(pos);
    lm.input_label.push_back(label);
  }
  lm.outputs = m.outputs;
  return lm;
}

std::vector<int> output_reachable_vertices(const LinearModel& lm, int out) {
  if (out < 0 || out >= lm.n() || !lm.is_output(out))
    fail(ErrorCode::Precondition,
         "output-reachable subgraph: compartment is not an output");
  std::vector<char> seen(lm.n(), 0);
  std::vector<int> stack{out};
  seen[out] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int j = 0; j < lm.n(); ++j) {
      if (j == v || seen[j] || lm.A[v][j].is_zero()) continue;
      seen[j] = 1;
      stack.push_back(j);
    }
  }
  std::vector<int> r;
  for (int i = 0; i < lm.n(); ++i)
    if (seen[i]) r.push_back(i);
  return r;
}

LinearModel restrict_model(const LinearModel& lm, const std::vector<int>& vh) {
  if (vh.empty())
    fail(ErrorCode::Precondition, "restriction to an empty vertex set");
  for (size_t i = 0; i < vh.size(); ++i) {
    if (vh[i] < 0 || vh[i] >= lm.n())
      fail(ErrorCode::Precondition, "restriction vertex out of range");
    if (i > 0 && vh[i] <= vh[i - 1])
      fail(ErrorCode::Precondition, "restriction vertices must be ascending");
  }
  bool has_output = false;
  for (int v : vh) has_output = has_output || lm.is_output(v);
  if (!has_output)
    fail(ErrorCode::Precondition, "restriction contains no output compartment");

  const int k = static_cast<int>(vh.size());
  std::vector<char> keep(lm.n(), 0);
  for (int v : vh) keep[v] = 1;

  LinearModel r;
  r.ring = lm.ring;
  for (int v : vh) r.comp.push_back(lm.comp[v]);
  r.A.assign(k, std::vector<Poly>(k, Poly(lm.ring)));
  r.leak.assign(k, Poly(lm.ring));
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) r.A[p][q] = lm.A[vh[p]][vh[q]];
    // Edges that used to leave the retained set become part of the leak.
    r.leak[p] = lm.leak[vh[p]];
    for (int j = 0; j < lm.n(); ++j)
      if (!keep[j]) r.leak[p] += lm.A[j][vh[p]];
  }
  for (size_t i = 0; i < lm.inputs.size(); ++i) {
    auto it = std::find(vh.begin(), vh.end(), lm.inputs[i]);
    if (it == vh.end()) continue;
    r.inputs.push_back(static_cast<int>(it - vh.begin()));
    r.input_label.push_back(lm.input_label[i]);
  }
  for (int o : lm.outputs) {
    auto it = std::find(vh.begin(), vh.end(), o);
    if (it != vh.end()) r.outputs.push_back(static_cast<int>(it - vh.begin()));
  }
  return r;
}

Model add_leak(const Model& m, const std::string& compartment) {
  const int sp = m.net.species_index(compartment);
  if (sp < 0)
    fail(ErrorCode::Precondition, "add_leak: unknown compartment '" +
                                      compartment + "'");
  for (const Reaction& r : m.net.reactions)
    if (!r.reactant.is_zero() && r.product.is_zero() &&
        r.reactant.parts.begin()->first == sp)
      fail(ErrorCode::Precondition, "add_leak: compartment '" + compartment +
                                        "' already has an outflow");

  // Fresh label: "a0<digits>" when the name is letter+digits, else
  // "a0_<name>"; suffix a counter on collision.
  std::string base;
  if (compartment.size() >= 2 &&
      compartment.find_first_not_of("0123456789", 1) == std::string::npos) {
    base = "a0" + compartment.substr(1);
  } else {
    base = "a0_" + compartment;
  }
  std::set<std::string> used;
  for (const Reaction& r : m.net.reactions) used.insert(r.label);
  std::string label = base;
  for (int i = 2; used.count(label); ++i)
    label = base + "_" + std::to_string(i);

  std::vector<NamedReaction> rs;
  for (const Reaction& r : m.net.reactions)
    rs.push_back({m.net.named(r.reactant), m.net.named(r.product), r.label});
  rs.push_back({NamedComplex{{compartment, 1}}, NamedComplex{}, label});
  Network net = build_network(m.net.species, rs);
  std::vector<std::string> out_names;
  for (int o : m.outputs) out_names.push_back(m.net.species[o]);
  return make_model(std::move(net), out_names);
}

// ---- input-output equations ---------------------------------------------------

IOEquation io_equation(const LinearModel& lm, int out) {
  if (out < 0 || out >= lm.n() || !lm.is_output(out))
    fail(ErrorCode::Precondition,
         "input-output equation: compartment is not an output");
  const std::vector<int> h = output_reachable_vertices(lm, out);
  const LinearModel r = restrict_model(lm, h);
  if (r.inputs.empty())
    fail(ErrorCode::Hypothesis,
         "no input-output equation: no input compartment reaches output '" +
             lm.comp[out] + "'");

  const int k = r.n();
  const Ring& ring = r.ring;
  // M = sI - A_H as a matrix of polynomials in s.
  std::vector<std::vector<SPoly>> m(k, std::vector<SPoly>(k));
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      SPoly e{-r.A[p][q]};
      if (p == q) e.push_back(Poly::constant(ring, 1));
      sp_trim(e);
      m[p][q] = std::move(e);
    }
  }

  IOEquation eq;
  eq.output = lm.comp[out];
  eq.ring = ring;
  eq.vh = r.comp;
  eq.lhs = sp_det(ring, m);
  if (static_cast<int>(eq.lhs.size()) != k + 1 ||
      eq.lhs[k] != Poly::constant(ring, 1))
    fail(ErrorCode::Internal, "input-output equation lhs is not monic");

  const int pi = static_cast<int>(
      std::find(h.begin(), h.end(), out) - h.begin());
  for (size_t t = 0; t < r.inputs.size(); ++t) {
    const int pj = r.inputs[t];
    std::vector<std::vector<SPoly>> minor;
    minor.reserve(k - 1);
    for (int p = 0; p < k; ++p) {
      if (p == pj) continue;
      std::vector<SPoly> row;
      row.reserve(k - 1);
      for (int q = 0; q < k; ++q)
        if (q != pi) row.push_back(m[p][q]);
      minor.push_back(std::move(row));
    }
    SPoly d = sp_det(ring, minor);
    if ((pi + pj) % 2) d = sp_scale(std::move(d), rat(-1));
    eq.rhs_inputs.push_back(r.comp[pj]);
    eq.rhs_labels.push_back(r.input_label[t]);
    eq.rhs.push_back(std::move(d));
  }
  return eq;
}

namespace {

std::string side_text(const std::string& var, const SPoly& p) {
  std::string s;
  for (int q = static_cast<int>(p.size()) - 1; q >= 0; --q) {
    if (p[q].is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (p[q] == Poly::constant(p[q].ring(), 1)) {
      s += var + derivative_marks(q);
    } else {
      s += "(" + p[q].text() + ")*" + var + derivative_marks(q);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string io_equation_text(const IOEquation& eq) {
  std::string s = side_text("z_" + eq.output, eq.lhs) + " = ";
  std::string rhs;
  for (size_t t = 0; t < eq.rhs.size(); ++t) {
    std::string piece = side_text(eq.rhs_labels[t], eq.rhs[t]);
    if (piece == "0") continue;
    if (!rhs.empty()) rhs += " + ";
    rhs += piece;
  }
  return s + (rhs.empty() ? "0" : rhs);
}

CoefficientMap coefficient_map(const LinearModel& lm) {
  CoefficientMap cm;
  cm.ring = lm.ring;
  cm.r = lm.ring.size();
  for (int out : lm.outputs) {
    IOEquation eq = io_equation(lm, out);
    for (int q = static_cast<int>(eq.lhs.size()) - 2; q >= 0; --q)
      if (!eq.lhs[q].is_constant()) cm.coords.push_back(eq.lhs[q]);
    for (const SPoly& p : eq.rhs)
      for (int q = static_cast<int>(p.size()) - 1; q >= 0; --q)
        if (!p[q].is_constant()) cm.coords.push_back(p[q]);
    cm.equations.push_back(std::move(eq));
  }
  return cm;
}

// ---- identifiability -----------------------------------------------------------

std::string to_string(IdentKind k) {
  switch (k) {
    case IdentKind::GloballyIdentifiable: return "globally identifiable";
    case IdentKind::LocallyIdentifiable: return "locally identifiable";
    case IdentKind::Unidentifiable: return "unidentifiable";
    case IdentKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

IdentVerdict local_identifiability(const LinearModel& lm, unsigned seed) {
  const CoefficientMap cm = coefficient_map(lm);
  IdentVerdict v;
  v.seed = seed;
  v.r = cm.r;
  v.T = static_cast<int>(cm.coords.size());
  if (cm.r == 0) {
    v.kind = IdentKind::GloballyIdentifiable;
    v.note = "no parameters: vacuously globally identifiable";
    return v;
  }
  if (cm.coords.empty()) {
    v.kind = IdentKind::Unidentifiable;
    v.note = "coefficient map has no parameter-dependent coordinates";
    return v;
  }

  std::vector<std::vector<Poly>> jac(cm.coords.size());
  for (size_t t = 0; t < cm.coords.size(); ++t)
    for (int p = 0; p < cm.r; ++p)
      jac[t].push_back(cm.coords[t].derivative(p));

  std::mt19937 rng(seed);
  for (int attempt = 1; attempt <= 5; ++attempt) {
    const std::vector<Rat> point = random_point(rng, cm.r);
    RatMat j(cm.coords.size(), RatVec(cm.r));
    for (size_t t = 0; t < cm.coords.size(); ++t)
      for (int p = 0; p < cm.r; ++p) j[t][p] = jac[t][p].eval(point);
    v.rank = std::max(v.rank, rank(j));
    v.points = attempt;
    if (v.rank == cm.r) break;
  }
  v.kind = v.rank == cm.r ? IdentKind::LocallyIdentifiable
                          : IdentKind::Unidentifiable;
  v.note = "Jacobian rank at random integer points in [1,10000]";
  return v;
}

IdentVerdict global_identifiability(const LinearModel& lm, unsigned seed) {
  IdentVerdict v = local_identifiability(lm, seed);
  if (v.kind != IdentKind::LocallyIdentifiable) return v;

  const CoefficientMap cm = coefficient_map(lm);
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  for (int attempt = 1; attempt <= 5; ++attempt) {
    const std::vector<Rat> base = random_point(rng, cm.r);
    std::vector<Poly> gens;
    for (const Poly& c : cm.coords)
      gens.push_back(c - Poly::constant(cm.ring, c.eval(base)));
    SolutionCount sc;
    try {
      sc = zero_dim_solution_count(make_ideal(cm.ring, std::move(gens)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Budget) {
        v.kind = IdentKind::Inconclusive;
        v.note = "fiber-ideal computation exhausted its budget";
        return v;
      }
      throw;
    }
    if (sc.kind == SolutionCount::Kind::Empty)
      fail(ErrorCode::Internal,
           "fiber ideal has no solution at its own base point");
    if (sc.kind == SolutionCount::Kind::Finite) {
      v.fiber = sc.count;
      if (sc.count == 1) {
        v.kind = IdentKind::GloballyIdentifiable;
        v.note = "fiber at a random parameter point is a single point";
      } else {
        v.kind = IdentKind::LocallyIdentifiable;
        v.note = "fiber at a random parameter point has " +
                 std::to_string(sc.count) + " points";
      }
      return v;
    }
    // Infinite: the sampled point was non-generic; try a fresh one.
  }
  v.kind = IdentKind::Inconclusive;
  v.note = "fiber not zero-dimensional at the sampled points";
  return v;
}

// ---- rational functions ---------------------------------------------------------

namespace {

void rf_check(const RatFunc& a, const RatFunc& b) {
  if (!a.num.ring().same_as(b.num.ring()) &&
      !a.num.ring().same_vars(b.num.ring()))
    fail(ErrorCode::Internal, "rational functions over different rings");
}

}  // namespace

RatFunc::RatFunc(Poly n) : num(std::move(n)), den(Poly::constant(num.ring(), 1)) {}

RatFunc::RatFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero())
    fail(ErrorCode::Precondition, "rational function with zero denominator");
  if (num.is_zero()) {
    den = Poly::constant(num.ring(), 1);
    return;
  }
  // Normalize: denominator monic w.r.t. the deglex-leading term.
  const Rat lc = den.terms()[0].coeff;
  if (lc != 1) {
    const Rat inv = Rat(1) / lc;
    num *= inv;
    den *= inv;
  }
}

std::string RatFunc::text() const {
  if (den == Poly::constant(den.ring(), 1)) return num.text();
  return "(" + num.text() + ")/(" + den.text() + ")";
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  rf_check(a, b);
  return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  rf_check(a, b);
  return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  rf_check(a, b);
  return RatFunc(a.num * b.num, a.den * b.den);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  rf_check(a, b);
  if (b.num.is_zero())
    fail(ErrorCode::Precondition, "division by the zero rational function");
  return RatFunc(a.num * b.den, a.den * b.num);
}

bool ratfunc_equal(const RatFunc& a, const RatFunc& b) {
  rf_check(a, b);
  return a.num * b.den == b.num * a.den;
}

// ---- differential expressions ----------------------------------------------------

std::string DiffVar::text() const {
  return (kind == Kind::Output ? "z_" + name : name) + derivative_marks(order);
}

void LinearExpr::add(const DiffVar& v, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = terms.find(v);
  if (it == terms.end()) {
    terms.emplace(v, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms.erase(it);
}

std::string LinearExpr::text() const {
  std::string s;
  for (const auto& [v, c] : terms) {
    if (!s.empty()) s += " + ";
    if (c.den == Poly::constant(c.den.ring(), 1) &&
        c.num == Poly::constant(c.num.ring(), 1)) {
      s += v.text();
    } else {
      s += "(" + c.text() + ")*" + v.text();
    }
  }
  return s.empty() ? "0" : s;
}

DiffEquation to_diff_equation(const IOEquation& eq) {
  DiffEquation d;
  d.ring = eq.ring;
  d.output = eq.output;
  for (const Poly& p : eq.lhs) d.lhs.push_back(RatFunc(p));
  for (size_t t = 0; t < eq.rhs.size(); ++t)
    for (size_t q = 0; q < eq.rhs[t].size(); ++q)
      d.rhs.add({DiffVar::Kind::Input, eq.rhs_labels[t], static_cast<int>(q)},
                RatFunc(eq.rhs[t][q]));
  return d;
}

std::string diff_equation_text(const DiffEquation& eq) {
  std::string s;
  for (int q = static_cast<int>(eq.lhs.size()) - 1; q >= 0; --q) {
    const RatFunc& c = eq.lhs[q];
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    const std::string var = "z_" + eq.output + derivative_marks(q);
    if (c.den == Poly::constant(c.den.ring(), 1) &&
        c.num == Poly::constant(c.num.ring(), 1)) {
      s += var;
    } else {
      s += "(" + c.text() + ")*" + var;
    }
  }
  if (s.empty()) s = "0";
  return s + " = " + eq.rhs.text();
}

// ---- trajectory oracle -------------------------------------------------------------

bool holds_along_trajectories(const DiffEquation& eq, const LinearModel& lm) {
  const int n = lm.n();
  const int po = lm.position(eq.output);
  if (po < 0)
    fail(ErrorCode::Precondition, "trajectory check: output '" + eq.output +
                                      "' is not a compartment of the model");

  int max_z = static_cast<int>(eq.lhs.size()) - 1;
  int max_u = 0;
  for (const auto& [v, c] : eq.rhs.terms) {
    if (v.kind == DiffVar::Kind::Output) max_z = std::max(max_z, v.order);
    else max_u = std::max(max_u, v.order);
  }
  const int jet_depth = std::max(max_z > 0 ? max_z - 1 : 0, max_u);

  // Big ring: parameters, then one state variable per compartment, then the
  // input jets.  '#'-prefixed names cannot collide with parsed identifiers.
  std::vector<Var> vars = lm.ring.vars();
  const int state0 = static_cast<int>(vars.size());
  for (int i = 0; i < n; ++i) vars.push_back({"#x:" + lm.comp[i], VarKind::Conc});
  std::vector<std::vector<int>> ujet(lm.inputs.size());
  for (size_t t = 0; t < lm.inputs.size(); ++t)
    for (int q = 0; q <= jet_depth; ++q) {
      ujet[t].push_back(static_cast<int>(vars.size()));
      vars.push_back({"#u:" + lm.input_label[t] + ":" + std::to_string(q),
                      VarKind::Aux});
    }
  Ring big{vars};

  std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = lm.A[i][j].embed(big);

  // jets[q][i] = x_i^(q) expressed in initial state and input jets:
  // x^(q+1) = A x^(q) + u^(q).
  std::vector<std::vector<Poly>> jets;
  std::vector<Poly> x0;
  for (int i = 0; i < n; ++i) x0.push_back(Poly::variable(big, state0 + i));
  jets.push_back(std::move(x0));
  for (int q = 1; q <= max_z; ++q) {
    std::vector<Poly> next(n, Poly(big));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) next[i] += a[i][j] * jets[q - 1][j];
    for (size_t t = 0; t < lm.inputs.size(); ++t)
      next[lm.inputs[t]] += Poly::variable(big, ujet[t][q - 1]);
    jets.push_back(std::move(next));
  }

  const auto lift = [&big](const RatFunc& c) {
    return RatFunc(c.num.embed(big), c.den.embed(big));
  };
  RatFunc total = RatFunc(Poly(big));
  for (size_t q = 0; q < eq.lhs.size(); ++q) {
    if (eq.lhs[q].is_zero()) continue;
    total = total + lift(eq.lhs[q]) * RatFunc(jets[q][po]);
  }
  for (const auto& [v, c] : eq.rhs.terms) {
    if (v.kind == DiffVar::Kind::Output) {
      const int p = lm.position(v.name);
      if (p < 0)
        fail(ErrorCode::Precondition, "trajectory check: output '" + v.name +
                                          "' is not a compartment");
      total = total - lift(c) * RatFunc(jets[v.order][p]);
    } else {
      // Inputs absent from the model are zero forcings.
      for (size_t t = 0; t < lm.inputs.size(); ++t)
        if (lm.input_label[t] == v.name)
          total = total -
                  lift(c) * RatFunc(Poly::variable(big, ujet[t][v.order]));
    }
  }
  return total.num.is_zero();
}

// ---- algebraic observability ----------------------------------------------------

Observability observability_equations(const LinearModel& lm, int out) {
  if (out < 0 || out >= lm.n() || !lm.is_output(out))
    fail(ErrorCode::Precondition,
         "observability equations: compartment is not an output");
  if (static_cast<int>(output_reachable_vertices(lm, out).size()) != lm.n())
    fail(ErrorCode::Hypothesis, "output-reachable subgraph to '" +
                                    lm.comp[out] +
                                    "' is not the whole model");
  const int n = lm.n();
  const Ring& ring = lm.ring;

  Observability ob;
  ob.ring = ring;
  std::vector<int> order;  // non-output compartments ascending, then out
  for (int i = 0; i < n; ++i)
    if (i != out) order.push_back(i);
  order.push_back(out);
  for (int i : order) ob.order.push_back(lm.comp[i]);

  if (n == 1) {
    ob.det_b = Poly::constant(ring, 1);
    return ob;
  }
  const int m = n - 1;

  std::vector<std::vector<Poly>> atl(m, std::vector<Poly>(m));
  std::vector<Poly> avec(m, Poly(ring)), bvec(m, Poly(ring));
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) atl[k][l] = lm.A[order[k]][order[l]];
    avec[k] = lm.A[out][order[k]];
    bvec[k] = lm.A[order[k]][out];
  }
  const Poly ann = lm.A[out][out];

  // rows[t] = a * Atilde^t.
  std::vector<std::vector<Poly>> rows{avec};
  for (int t = 1; t < m; ++t) {
    std::vector<Poly> next(m, Poly(ring));
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) next[j] += rows[t - 1][k] * atl[k][j];
    rows.push_back(std::move(next));
  }
  ob.B = rows;
  ob.det_b = poly_det(ring, ob.B);
  if (ob.det_b.is_zero())
    fail(ErrorCode::Internal,
         "observability matrix is singular despite output-reachability");

  // adj[j][i] = cofactor(i, j), so B^{-1} = adj / det.
  std::vector<std::vector<Poly>> adj(m, std::vector<Poly>(m, Poly(ring)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      std::vector<std::vector<Poly>> minor;
      for (int p = 0; p < m; ++p) {
        if (p == i) continue;
        std::vector<Poly> row;
        for (int q = 0; q < m; ++q)
          if (q != j) row.push_back(ob.B[p][q]);
        minor.push_back(std::move(row));
      }
      Poly cof = poly_det(ring, minor);
      if ((i + j) % 2) cof = -cof;
      adj[j][i] = std::move(cof);
    }
  }

  // Input label lookup by compartment position.
  const auto input_label_of = [&lm](int pos) -> const std::string* {
    for (size_t t = 0; t < lm.inputs.size(); ++t)
      if (lm.inputs[t] == pos) return &lm.input_label[t];
    return nullptr;
  };
  const std::string out_name = lm.comp[out];
  const std::string* out_u = input_label_of(out);

  // c[k-1] = x_out^(k) - A_out,out x_out^(k-1) - u_out^(k-1)
  //          - sum_{j=0}^{k-2} ( a Atilde^(k-2-j) b x_out^(j)
  //                              + a Atilde^(k-2-j) u~^(j) ).
  std::vector<LinearExpr> c(m);
  for (int k = 1; k <= m; ++k) {
    LinearExpr& e = c[k - 1];
    e.add({DiffVar::Kind::Output, out_name, k}, RatFunc(Poly::constant(ring, 1)));
    e.add({DiffVar::Kind::Output, out_name, k - 1}, RatFunc(-ann));
    if (out_u)
      e.add({DiffVar::Kind::Input, *out_u, k - 1},
            RatFunc(Poly::constant(ring, rat(-1))));
    for (int j = 0; j <= k - 2; ++j) {
      const std::vector<Poly>& row = rows[k - 2 - j];
      Poly ab(ring);
      for (int l = 0; l < m; ++l) ab += row[l] * bvec[l];
      e.add({DiffVar::Kind::Output, out_name, j}, RatFunc(-ab));
      for (int l = 0; l < m; ++l) {
        const std::string* lab = input_label_of(order[l]);
        if (lab && !row[l].is_zero())
          e.add({DiffVar::Kind::Input, *lab, j}, RatFunc(-row[l]));
      }
    }
  }

  for (int l = 0; l < m; ++l) {
    LinearExpr expr;
    for (int k = 0; k < m; ++k) {
      if (adj[l][k].is_zero()) continue;
      const RatFunc weight(adj[l][k], ob.det_b);
      for (const auto& [v, coeff] : c[k].terms)
        expr.add(v, weight * coeff);
    }
    bool has_output_term = false;
    for (const auto& [v, coeff] : expr.terms)
      has_output_term = has_output_term || v.kind == DiffVar::Kind::Output;
    if (!has_output_term)
      fail(ErrorCode::Internal,
           "observability expression lost every output derivative");
    ob.exprs.emplace_back(lm.comp[order[l]], std::move(expr));
  }
  return ob;
}

// ---- walk matrix of a directed 0-tree --------------------------------------------

TreeWalkMatrix tree_walk_matrix(int n,
                                const std::vector<std::pair<int, int>>& edges) {
  if (n < 2)
    fail(ErrorCode::Precondition, "0-tree needs at least two vertices");
  if (static_cast<int>(edges.size()) != n - 1)
    fail(ErrorCode::Precondition,
         "a directed 0-tree on " + std::to_string(n) + " vertices has " +
             std::to_string(n - 1) + " edges");
  std::vector<int> parent(n, -1);
  for (const auto& [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      fail(ErrorCode::Precondition, "0-tree edge endpoint out of range");
    if (i == j) fail(ErrorCode::Precondition, "0-tree edge is a self-loop");
    if (i == 0)
      fail(ErrorCode::Precondition, "vertex 0 of a 0-tree has no outgoing edge");
    if (parent[i] != -1)
      fail(ErrorCode::Precondition,
           "vertex " + std::to_string(i) + " has two outgoing edges");
    parent[i] = j;
  }
  for (int v = 1; v < n; ++v) {
    int cur = v, steps = 0;
    while (cur != 0 && steps <= n) {
      if (cur < 0 || parent[cur] < 0)
        fail(ErrorCode::Precondition,
             "vertex " + std::to_string(v) + " does not reach vertex 0");
      cur = parent[cur];
      ++steps;
    }
    if (cur != 0)
      fail(ErrorCode::Precondition, "0-tree contains a directed cycle");
  }

  const auto label = [](int j, int i) {
    if (j < 10 && i < 10) return "a" + std::to_string(j) + std::to_string(i);
    return "a" + std::to_string(j) + "_" + std::to_string(i);
  };
  std::vector<Var> vars;
  for (int i = 1; i < n; ++i) vars.push_back({label(parent[i], i), VarKind::Rate});
  Ring ring{vars};

  // Adjacency of the tree plus, per edge i->j, a self-loop at i labeled -a_ji.
  std::vector<std::vector<Poly>> ad(n, std::vector<Poly>(n, Poly(ring)));
  for (int i = 1; i < n; ++i) {
    Poly v = Poly::variable(ring, i - 1);
    ad[parent[i]][i] += v;
    ad[i][i] -= v;
  }

  TreeWalkMatrix tw;
  tw.ring = ring;
  tw.B.assign(n - 1, std::vector<Poly>(n - 1, Poly(ring)));
  std::vector<std::vector<Poly>> pw = ad;  // ad^t, starting at t = 1
  for (int t = 1; t <= n - 1; ++t) {
    for (int j = 1; j < n; ++j) tw.B[t - 1][j - 1] = pw[0][j];
    if (t == n - 1) break;
    std::vector<std::vector<Poly>> next(n, std::vector<Poly>(n, Poly(ring)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (pw[i][k].is_zero()) continue;
        for (int j = 0; j < n; ++j) next[i][j] += pw[i][k] * ad[k][j];
      }
    pw = std::move(next);
  }
  tw.det_b = poly_det(ring, tw.B);
  if (tw.det_b.is_zero())
    fail(ErrorCode::Internal, "0-tree walk matrix is singular");
  return tw;
}

// ---- substituted input-output equation --------------------------------------------

DiffEquation substituted_io_equation(const Model& m_prev, const Model& n_r,
                                     const OneWayFlowSpec& join,
                                     const std::string& output) {
  if (join.scenario != 1 || join.flows.size() != 1)
    fail(ErrorCode::Precondition,
         "substituted input-output equation requires a single-flow "
         "Scenario-1 join");
  const Model joined = join_one_way_flow(m_prev, n_r, join);
  const LinearModel lj = linear_model(joined);
  const LinearModel lp = linear_model(m_prev);

  // Designated upstream output: reachable from every upstream compartment.
  int istar = -1;
  for (int o : lp.outputs) {
    if (static_cast<int>(output_reachable_vertices(lp, o).size()) == lp.n()) {
      istar = o;
      break;
    }
  }
  if (istar < 0)
    fail(ErrorCode::Hypothesis,
         "no output of the upstream model is reachable from every upstream "
         "compartment");

  const std::string& xi = join.flows[0].first;
  const std::string& xj = join.flows[0].second;

  // The bridge inherits the upstream outflow's label kappa.
  std::string kappa;
  for (const Reaction& r : m_prev.net.reactions)
    if (!r.reactant.is_zero() && r.product.is_zero() &&
        m_prev.net.species[r.reactant.parts.begin()->first] == xi)
      kappa = r.label;
  if (kappa.empty())
    fail(ErrorCode::Internal, "joined model lost the upstream outflow label");

  // g: x_xi expressed through the designated output and the upstream inputs.
  LinearExpr g;
  if (lp.comp[istar] == xi) {
    g.add({DiffVar::Kind::Output, xi, 0}, RatFunc(Poly::constant(lp.ring, 1)));
  } else {
    const Observability ob = observability_equations(lp, istar);
    bool found = false;
    for (const auto& [name, expr] : ob.exprs) {
      if (name == xi) {
        g = expr;
        found = true;
      }
    }
    if (!found)
      fail(ErrorCode::Internal, "no observability expression for '" + xi + "'");
  }

  // Downstream equation, then substitute the removed forcing.
  const LinearModel ln = linear_model(n_r);
  const int lpos = ln.position(output);
  if (lpos < 0)
    fail(ErrorCode::Precondition, "output '" + output +
                                      "' is not a species of the downstream "
                                      "model");
  const IOEquation eqr = io_equation(ln, lpos);

  std::string removed_label;
  for (const Reaction& r : n_r.net.reactions)
    if (r.reactant.is_zero() &&
        n_r.net.species[r.product.parts.begin()->first] == xj)
      removed_label = r.label;
  if (removed_label.empty())
    fail(ErrorCode::Internal, "joined model lost the downstream inflow label");

  DiffEquation d;
  d.ring = lj.ring;
  d.output = output;
  const auto lift_poly = [&lj](const Poly& p) { return p.embed(lj.ring); };
  for (const Poly& p : eqr.lhs) d.lhs.push_back(RatFunc(lift_poly(p)));

  const RatFunc kap(Poly::variable(lj.ring, lj.ring.index_of(kappa)));
  for (size_t t = 0; t < eqr.rhs.size(); ++t) {
    const SPoly& p = eqr.rhs[t];
    if (eqr.rhs_labels[t] == removed_label) {
      // u = kappa * g along trajectories of the joined model; the s-power q
      // differentiates the substituted expression q times, which shifts
      // every derivative order by q (the coefficients are constants in t).
      for (size_t q = 0; q < p.size(); ++q) {
        if (p[q].is_zero()) continue;
        const RatFunc pq(lift_poly(p[q]));
        for (const auto& [v, coeff] : g.terms) {
          const RatFunc lifted(coeff.num.embed(lj.ring),
                               coeff.den.embed(lj.ring));
          d.rhs.add({v.kind, v.name, v.order + static_cast<int>(q)},
                    pq * kap * lifted);
        }
      }
    } else {
      for (size_t q = 0; q < p.size(); ++q)
        if (!p[q].is_zero())
          d.rhs.add({DiffVar::Kind::Input, eqr.rhs_labels[t],
                     static_cast<int>(q)},
                    RatFunc(lift_poly(p[q])));
    }
  }
  return d;
}

}  // namespace crn
