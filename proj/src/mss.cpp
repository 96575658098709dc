#include "crn/mss.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crn/error.hpp"
#include "crn/linalg.hpp"
#include "crn/massaction.hpp"
#include "crn/poly.hpp"

namespace crn {

const Rat& residual_gate() {
  static const Rat g = rat(1, 10000000000L);  // 1e-10
  return g;
}

const Rat& dedup_distance() {
  static const Rat d = rat(1, 100000000L);  // 1e-8
  return d;
}

namespace {

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

void validate_rates(const Network& n, const RateAssignment& kappa) {
  for (const Reaction& r : n.reactions) {
    auto it = kappa.find(r.label);
    if (it == kappa.end())
      fail(ErrorCode::Precondition,
           "no rate constant given for '" + r.label + "'");
    if (!(it->second > 0))
      fail(ErrorCode::Precondition,
           "rate constant '" + r.label + "' must be positive");
  }
  if (kappa.size() != n.reactions.size())
    for (const auto& [label, value] : kappa) {
      bool known = false;
      for (const Reaction& r : n.reactions) known = known || r.label == label;
      if (!known)
        fail(ErrorCode::Precondition,
             "rate constant '" + label + "' does not name a reaction");
    }
}

// Evaluation point over the mass-action ring: rate values by reaction label,
// concentrations from x (species order).
std::vector<Rat> ring_point(const MassActionSystem& sys,
                            const RateAssignment& kappa,
                            const std::vector<Rat>& x) {
  std::vector<Rat> point(static_cast<size_t>(sys.ring.size()), Rat(0));
  for (size_t r = 0; r < sys.net.reactions.size(); ++r)
    point[sys.rate_var[r]] = kappa.at(sys.net.reactions[r].label);
  for (size_t s = 0; s < sys.net.species.size(); ++s)
    point[sys.conc_var[s]] = x[s];
  return point;
}

std::vector<Rat> residuals(const MassActionSystem& sys,
                           const RateAssignment& kappa,
                           const std::vector<Rat>& x) {
  std::vector<Rat> point = ring_point(sys, kappa, x);
  std::vector<Rat> out;
  out.reserve(sys.polys.size());
  for (const Poly& p : sys.polys) out.push_back(p.eval(point));
  return out;
}

void validate_point_shape(const Network& n, const std::vector<Rat>& x) {
  if (x.size() != n.species.size())
    fail(ErrorCode::Precondition,
         "state has " + std::to_string(x.size()) + " coordinates, expected " +
             std::to_string(n.species.size()));
  for (const Rat& c : x)
    if (!(c > 0))
      fail(ErrorCode::Precondition, "state coordinates must be positive");
}

// Deterministic uniform double in [0, 1) from the 32-bit engine output.
double unit(std::mt19937& rng) {
  return std::ldexp(static_cast<double>(rng()), -32);
}

double log_uniform(std::mt19937& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, lo_exp + (hi_exp - lo_exp) * unit(rng));
}

// ---- single-species enumeration ---------------------------------------------

// Smallest exact integer root of u in (lo, hi], if any.
std::optional<Rat> integer_root_in(const UniPoly& u, const Rat& lo,
                                   const Rat& hi) {
  mpz_class a, b;
  mpz_fdiv_q(a.get_mpz_t(), lo.get_num().get_mpz_t(),
             lo.get_den().get_mpz_t());
  a += 1;
  mpz_fdiv_q(b.get_mpz_t(), hi.get_num().get_mpz_t(),
             hi.get_den().get_mpz_t());
  int guard = 0;
  for (mpz_class t = a; t <= b && guard < 64; ++t, ++guard)
    if (t > 0 && u.eval(Rat(t)) == 0) return Rat(t);
  return std::nullopt;
}

// Refines the isolating interval (lo, hi] of `factor`'s single root until the
// midpoint is an exact root or |full(mid)| <= tol.
Rat refine_state_point(const UniPoly& factor, const UniPoly& full, Rat lo,
                       Rat hi, const Rat& tol) {
  if (factor.eval(hi) == 0) return hi;
  if (auto z = integer_root_in(factor, lo, hi)) return *z;
  Rat flo = factor.eval(lo);
  if (flo == 0)
    fail(ErrorCode::Internal, "isolating interval has a root at its open end");
  // Only accept a small full-polynomial residual once the bracket is well
  // below the state-merge distance, so the midpoint cannot sit near some
  // other root of the full polynomial inside a wide bracket.
  const Rat narrow = dedup_distance() / 4;
  for (int i = 0; i < 400; ++i) {
    Rat mid = (lo + hi) / 2;
    Rat fm = factor.eval(mid);
    if (fm == 0) return mid;
    if (hi - lo <= narrow && abs_rat(full.eval(mid)) <= tol) return mid;
    if (sgn(fm) == sgn(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  fail(ErrorCode::Internal, "positive-root refinement did not converge");
}

StateSearch enumerate_univariate(const Network& n,
                                 const RateAssignment& kappa) {
  StateSearch out;
  UniPoly p = steady_state_univariate(n, kappa);
  if (p.is_zero()) {
    // Every positive concentration is a degenerate steady state; report two
    // samples from the continuum.
    out.continuum = true;
    for (long v : {1L, 2L}) {
      WitnessState s;
      s.x = {Rat(v)};
      s.exact = true;
      StateClassification cls = classify_state(n, kappa, s.x);
      s.nondegenerate = cls.nondegenerate;
      s.exp_stable = cls.exp_stable;
      out.states.push_back(std::move(s));
    }
    return out;
  }
  UniPoly dp = p.derivative();
  Rat tol = residual_gate() / 100;
  std::vector<UniPoly> sqf = squarefree_decomposition(p);
  for (size_t mi = 0; mi < sqf.size(); ++mi) {
    // Drop any root at zero so the factor is nonzero on [0, inf) endpoints;
    // only strictly positive roots are wanted anyway.
    UniPoly u = sqf[mi].strip_root_at_zero().first;
    if (u.degree() < 1) continue;
    int mult = static_cast<int>(mi) + 1;
    for (const auto& [lo, hi] : isolate_positive_roots(u)) {
      WitnessState s;
      s.x = {refine_state_point(u, p, lo, hi, tol)};
      s.exact = p.eval(s.x[0]) == 0;
      // A root is simple exactly when the full derivative is nonzero there,
      // so multiplicity decides nondegeneracy without any threshold.
      s.nondegenerate = mult == 1;
      s.exp_stable = mult == 1 && dp.eval(s.x[0]) < 0;
      out.states.push_back(std::move(s));
    }
  }
  std::sort(out.states.begin(), out.states.end(),
            [](const WitnessState& a, const WitnessState& b) {
              return a.x[0] < b.x[0];
            });
  return out;
}

// ---- multivariate enumeration ----------------------------------------------

// One system polynomial with the rates substituted: a sum of terms
// coefficient * prod_j x_j^exp_j, ready for fast double evaluation.
struct CompiledPoly {
  struct T {
    double coef;
    std::vector<int> exp;
  };
  std::vector<T> terms;

  double eval(const Eigen::VectorXd& x) const {
    double v = 0;
    for (const T& t : terms) {
      double m = t.coef;
      for (size_t j = 0; j < t.exp.size(); ++j)
        for (int e = 0; e < t.exp[j]; ++e) m *= x(static_cast<int>(j));
      v += m;
    }
    return v;
  }
};

CompiledPoly compile_with_rates(const MassActionSystem& sys, const Poly& p,
                                const RateAssignment& kappa) {
  int nv = sys.ring.size();
  int nsp = static_cast<int>(sys.net.species.size());
  std::vector<Rat> rate_val(static_cast<size_t>(nv), Rat(0));
  for (size_t r = 0; r < sys.net.reactions.size(); ++r)
    rate_val[sys.rate_var[r]] = kappa.at(sys.net.reactions[r].label);
  std::vector<int> species_of(static_cast<size_t>(nv), -1);
  for (size_t s = 0; s < sys.net.species.size(); ++s)
    species_of[sys.conc_var[s]] = static_cast<int>(s);

  CompiledPoly out;
  for (const Term& t : p.terms()) {
    Rat c = t.coeff;
    std::vector<int> exp(static_cast<size_t>(nsp), 0);
    for (int v = 0; v < nv; ++v) {
      int e = t.mono[v];
      if (e == 0) continue;
      if (species_of[v] >= 0) {
        exp[species_of[v]] = e;
      } else {
        for (int k = 0; k < e; ++k) c *= rate_val[v];
      }
    }
    out.terms.push_back({to_double(c), std::move(exp)});
  }
  return out;
}

StateSearch enumerate_multivariate(const Network& n,
                                   const RateAssignment& kappa,
                                   const StoichMatrix& st, unsigned seed,
                                   int starts,
                                   std::vector<Rat> anchor) {
  MassActionSystem sys = mass_action_system(n);
  int nsp = static_cast<int>(n.species.size());
  int ncons = static_cast<int>(st.conservation.size());
  bool vacuous = st.rank == nsp;
  std::mt19937 rng(seed);

  StateSearch out;
  if (!vacuous) {
    if (anchor.empty())
      for (int j = 0; j < nsp; ++j)
        anchor.push_back(Rat(log_uniform(rng, -1.0, 1.0)));
    out.class_anchor = anchor;
  }

  // Compile f and its Jacobian with the rates substituted.
  std::vector<CompiledPoly> cf;
  std::vector<std::vector<CompiledPoly>> cj(static_cast<size_t>(nsp));
  for (int i = 0; i < nsp; ++i) {
    cf.push_back(compile_with_rates(sys, sys.polys[i], kappa));
    for (int j = 0; j < nsp; ++j)
      cj[i].push_back(compile_with_rates(
          sys, sys.polys[i].derivative(sys.conc_var[j]), kappa));
  }
  Eigen::MatrixXd W(ncons, nsp);
  Eigen::VectorXd w0(ncons);
  for (int c = 0; c < ncons; ++c)
    for (int j = 0; j < nsp; ++j) W(c, j) = to_double(st.conservation[c][j]);
  if (ncons > 0) {
    Eigen::VectorXd a(nsp);
    for (int j = 0; j < nsp; ++j) a(j) = vacuous ? 0.0 : to_double(anchor[j]);
    w0 = W * a;
  }

  auto eval_f = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd F(nsp + ncons);
    for (int i = 0; i < nsp; ++i) F(i) = cf[i].eval(x);
    for (int c = 0; c < ncons; ++c) F(nsp + c) = W.row(c).dot(x) - w0(c);
    return F;
  };
  auto eval_j = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd J(nsp + ncons, nsp);
    for (int i = 0; i < nsp; ++i)
      for (int j = 0; j < nsp; ++j) J(i, j) = cj[i][j].eval(x);
    if (ncons > 0) J.bottomRows(ncons) = W;
    return J;
  };

  // Multi-start damped Newton with a positivity barrier: least-squares step,
  // halved until the residual norm decreases.
  std::vector<Eigen::VectorXd> found;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd x(nsp);
    for (int j = 0; j < nsp; ++j) x(j) = log_uniform(rng, -3.0, 3.0);
    for (int it = 0; it < 80; ++it) {
      Eigen::VectorXd F = eval_f(x);
      if (F.lpNorm<Eigen::Infinity>() <= 1e-13) break;
      Eigen::VectorXd delta = eval_j(x).colPivHouseholderQr().solve(-F);
      if (!delta.allFinite()) break;
      double f0 = F.squaredNorm();
      double alpha = 1.0;
      bool stepped = false;
      while (alpha >= 1e-8) {
        Eigen::VectorXd xn = x + alpha * delta;
        if (xn.minCoeff() > 0) {
          double f1 = eval_f(xn).squaredNorm();
          if (f1 < f0 * (1 - 1e-4 * alpha) || f1 <= 1e-26) {
            x = xn;
            stepped = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!stepped) break;
    }
    if (eval_f(x).lpNorm<Eigen::Infinity>() > 1e-12) continue;
    bool dup = false;
    for (const auto& y : found)
      dup = dup || (x - y).lpNorm<Eigen::Infinity>() < 1e-8;
    if (!dup) found.push_back(x);
  }

  // Exact gates: residual and class membership are re-checked with rational
  // arithmetic at the (exactly converted) double point. A coordinate closer
  // to zero than the state-merge distance marks a Newton limit collapsing
  // onto a boundary face — that approximates a boundary steady state, not a
  // positive one — so such candidates are rejected.
  for (const Eigen::VectorXd& xd : found) {
    std::vector<Rat> x;
    bool positive = true;
    for (int j = 0; j < nsp; ++j) {
      x.emplace_back(xd(j));  // exact binary-to-rational conversion
      positive = positive && x.back() > dedup_distance();
    }
    if (!positive) continue;
    bool pass = true;
    bool exact = true;
    for (const Rat& r : residuals(sys, kappa, x)) {
      pass = pass && abs_rat(r) <= residual_gate();
      exact = exact && r == 0;
    }
    if (!vacuous)
      for (const RatVec& row : st.conservation) {
        Rat dot(0);
        for (int j = 0; j < nsp; ++j) dot += row[j] * (x[j] - anchor[j]);
        pass = pass && abs_rat(dot) <= residual_gate();
      }
    if (!pass) continue;
    WitnessState s;
    s.x = std::move(x);
    s.exact = exact;
    StateClassification cls = classify_state(n, kappa, s.x);
    s.nondegenerate = cls.nondegenerate;
    s.exp_stable = cls.exp_stable;
    out.states.push_back(std::move(s));
  }
  std::sort(out.states.begin(), out.states.end(),
            [](const WitnessState& a, const WitnessState& b) {
              return a.x < b.x;
            });
  return out;
}

}  // namespace

// ---- public operations --------------------------------------------------------

UniPoly steady_state_univariate(const Network& n, const RateAssignment& kappa) {
  if (n.species.size() != 1)
    fail(ErrorCode::Precondition,
         "expected a single-species network, got " +
             std::to_string(n.species.size()) + " species");
  validate_rates(n, kappa);
  int maxm = 0;
  for (const Reaction& r : n.reactions)
    maxm = std::max(maxm, r.reactant.molecularity());
  std::vector<Rat> c(static_cast<size_t>(maxm) + 1, Rat(0));
  for (const Reaction& r : n.reactions) {
    long net = r.product.molecularity() - r.reactant.molecularity();
    c[r.reactant.molecularity()] += Rat(net) * kappa.at(r.label);
  }
  return UniPoly(std::move(c));
}

PositiveRoots count_positive_steady_states(const Network& n,
                                           const RateAssignment& kappa) {
  return analyze_positive_roots(steady_state_univariate(n, kappa));
}

StateClassification classify_state(const Network& n,
                                   const RateAssignment& kappa,
                                   const std::vector<Rat>& x_star) {
  if (n.reactions.empty())
    fail(ErrorCode::Precondition, "network has no reactions");
  validate_rates(n, kappa);
  validate_point_shape(n, x_star);

  MassActionSystem sys = mass_action_system(n);
  bool exact = true;
  for (const Rat& r : residuals(sys, kappa, x_star)) {
    if (abs_rat(r) > residual_gate())
      fail(ErrorCode::Precondition,
           "not a steady state: a residual exceeds the gate");
    exact = exact && r == 0;
  }

  int nsp = static_cast<int>(n.species.size());
  int nrx = static_cast<int>(n.reactions.size());
  StoichMatrix st = stoichiometric_matrix(n);
  int sigma = st.rank;

  std::vector<Rat> point = ring_point(sys, kappa, x_star);
  RatMat jac(nsp, RatVec(nsp, Rat(0)));
  for (int i = 0; i < nsp; ++i)
    for (int j = 0; j < nsp; ++j)
      jac[i][j] = sys.polys[i].derivative(sys.conc_var[j]).eval(point);

  StateClassification out;
  out.exact = exact;

  // Exact restricted rank: gamma's columns span the stoichiometric subspace
  // and the Jacobian's image lies inside it, so rank(J * gamma) is the
  // dimension of the restricted image.
  RatMat jg(nsp, RatVec(nrx, Rat(0)));
  for (int i = 0; i < nsp; ++i)
    for (int c = 0; c < nrx; ++c)
      for (int k = 0; k < nsp; ++k)
        jg[i][c] += jac[i][k] * Rat(st.gamma[k][c]);
  bool nondeg_exact = rank(jg) == sigma;

  // Numeric margin: smallest singular value of the Jacobian applied to an
  // orthonormal basis of the subspace.
  Eigen::MatrixXd jd(nsp, nsp), g(nsp, nrx);
  for (int i = 0; i < nsp; ++i)
    for (int j = 0; j < nsp; ++j) jd(i, j) = to_double(jac[i][j]);
  for (int i = 0; i < nsp; ++i)
    for (int c = 0; c < nrx; ++c) g(i, c) = static_cast<double>(st.gamma[i][c]);
  if (sigma > 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q =
        Eigen::MatrixXd(qr.householderQ()).leftCols(sigma);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jd * q);
    out.rank_gap = svd.singularValues()(sigma - 1);
  }
  out.nondegenerate = exact ? nondeg_exact : out.rank_gap > kRankGapThreshold;

  // Stability: nsp - sigma eigenvalues within 1e-8 of zero, the remaining
  // sigma with strictly negative real part.
  Eigen::EigenSolver<Eigen::MatrixXd> es(jd);
  int zero_count = 0;
  bool rest_negative = true;
  for (int i = 0; i < nsp; ++i) {
    std::complex<double> lam = es.eigenvalues()(i);
    if (std::abs(lam) <= kRankGapThreshold)
      ++zero_count;
    else
      rest_negative = rest_negative && lam.real() < 0;
  }
  out.exp_stable = zero_count == nsp - sigma && rest_negative;
  return out;
}

StateSearch enumerate_positive_steady_states(
    const Network& n, const RateAssignment& kappa, unsigned seed,
    int newton_starts, const std::vector<Rat>& class_anchor) {
  if (n.reactions.empty())
    fail(ErrorCode::Precondition, "network has no reactions");
  size_t nsp = n.species.size();
  if (nsp < 1 || nsp > 3)
    fail(ErrorCode::Precondition,
         "steady-state enumeration handles 1 to 3 species, got " +
             std::to_string(nsp));
  if (newton_starts < 1)
    fail(ErrorCode::Precondition, "newton_starts must be positive");
  validate_rates(n, kappa);

  StoichMatrix st = stoichiometric_matrix(n);
  bool vacuous = st.rank == static_cast<int>(nsp);
  if (vacuous && !class_anchor.empty())
    fail(ErrorCode::Precondition,
         "class anchor given, but the stoichiometric subspace is full and "
         "the class constraint is vacuous");
  if (!class_anchor.empty()) validate_point_shape(n, class_anchor);

  if (nsp == 1) return enumerate_univariate(n, kappa);
  return enumerate_multivariate(n, kappa, st, seed, newton_starts,
                                class_anchor);
}

MssVerdict search_multistationarity(const Network& n,
                                    const MssSearchOptions& opts) {
  if (n.reactions.empty())
    fail(ErrorCode::Precondition, "network has no reactions");
  if (n.species.size() > 3)
    fail(ErrorCode::Precondition,
         "the desk-scale search handles at most 3 species, got " +
             std::to_string(n.species.size()));
  if (opts.kappa_samples < 1 || opts.newton_starts < 1)
    fail(ErrorCode::Precondition, "search budget must be positive");
  if (opts.target_count < 2)
    fail(ErrorCode::Precondition, "target count must be at least 2");

  std::mt19937 rng(opts.seed);
  MssVerdict v;
  for (int s = 0; s < opts.kappa_samples; ++s) {
    RateAssignment kappa;
    for (const Reaction& r : n.reactions)
      kappa[r.label] = Rat(log_uniform(rng, -3.0, 3.0));
    unsigned inner = opts.seed ^ (0x9e3779b9u * static_cast<unsigned>(s + 1));
    StateSearch found = enumerate_positive_steady_states(
        n, kappa, inner, opts.newton_starts);
    ++v.kappa_samples;
    if (found.continuum ||
        static_cast<int>(found.states.size()) >= opts.target_count) {
      SteadyStateWitness w;
      w.kappa = std::move(kappa);
      w.class_anchor = found.class_anchor;
      w.states = found.states;
      w.continuum = found.continuum;
      WitnessCheck chk = verify_witness(n, w);
      if (!chk.ok)
        fail(ErrorCode::Internal,
             "witness failed re-verification: " + chk.detail);
      v.kind = MssVerdict::Kind::MultistationaryWitness;
      v.reason = found.continuum
                     ? "the steady-state polynomial vanished identically: a "
                       "continuum of degenerate positive steady states"
                     : std::to_string(w.states.size()) +
                           " positive steady states in one compatibility "
                           "class";
      v.witness = std::move(w);
      return v;
    }
  }
  v.kind = MssVerdict::Kind::NoWitnessFound;
  v.reason = "no witness among " + std::to_string(v.kappa_samples) +
             " rate samples (not a proof of monostationarity)";
  return v;
}

MssVerdict monomolecular_mono_check(const Network& n) {
  if (n.reactions.empty())
    fail(ErrorCode::Precondition, "network has no reactions");
  for (const Reaction& r : n.reactions)
    if (!(r.reactant.is_zero() || r.reactant.is_single_species()))
      fail(ErrorCode::NotApplicable,
           "reactant complex '" + n.complex_text(r.reactant) +
               "' is neither a single species nor the zero complex");

  // Cross-check the structural reason: with such reactants the right-hand
  // side must be linear in the concentrations.
  MassActionSystem sys = mass_action_system(n);
  for (const Poly& p : sys.polys)
    for (const Term& t : p.terms()) {
      int cdeg = 0;
      for (int v = 0; v < sys.ring.size(); ++v)
        if (sys.ring.var(v).kind == VarKind::Conc) cdeg += t.mono[v];
      if (cdeg > 1)
        fail(ErrorCode::Internal,
             "nonlinear steady-state term despite monomolecular reactants");
    }

  MssVerdict v;
  v.kind = MssVerdict::Kind::ProvedMono;
  v.reason =
      "every reactant complex is a single species or the zero complex, so "
      "the steady-state system is linear in the concentrations; each "
      "compatibility class then carries 0, 1, or a continuum of steady "
      "states, never two or more nondegenerate ones";
  return v;
}

WitnessCheck verify_witness(const Network& n, const SteadyStateWitness& w) {
  auto bad = [](std::string d) { return WitnessCheck{false, std::move(d)}; };
  try {
    validate_rates(n, w.kappa);
  } catch (const Error& e) {
    return bad(e.what());
  }
  if (w.states.size() < 2) return bad("fewer than two states");

  MassActionSystem sys = mass_action_system(n);
  StoichMatrix st = stoichiometric_matrix(n);
  size_t nsp = n.species.size();
  if (!w.class_anchor.empty() && w.class_anchor.size() != nsp)
    return bad("class anchor has the wrong dimension");

  for (size_t i = 0; i < w.states.size(); ++i) {
    const WitnessState& s = w.states[i];
    std::string tag = "state " + std::to_string(i);
    if (s.x.size() != nsp) return bad(tag + " has the wrong dimension");
    for (const Rat& c : s.x)
      if (!(c > 0)) return bad(tag + " is not strictly positive");
    Rat worst(0);
    for (const Rat& r : residuals(sys, w.kappa, s.x))
      worst = std::max(worst, abs_rat(r));
    if (worst > residual_gate())
      return bad(tag + " violates the residual gate");
    if (s.exact && worst != 0)
      return bad(tag + " is flagged exact but its residual is nonzero");
    const std::vector<Rat>& ref =
        w.class_anchor.empty() ? w.states[0].x : w.class_anchor;
    for (const RatVec& row : st.conservation) {
      Rat dot(0);
      for (size_t j = 0; j < nsp; ++j) dot += row[j] * (s.x[j] - ref[j]);
      if (abs_rat(dot) > residual_gate())
        return bad(tag + " lies outside the compatibility class");
    }
  }
  for (size_t i = 0; i < w.states.size(); ++i)
    for (size_t j = i + 1; j < w.states.size(); ++j) {
      Rat dist(0);
      for (size_t k = 0; k < nsp; ++k)
        dist = std::max(dist, abs_rat(w.states[i].x[k] - w.states[j].x[k]));
      if (dist <= dedup_distance())
        return bad("states " + std::to_string(i) + " and " +
                   std::to_string(j) + " are closer than the merge distance");
    }
  return {};
}

}  // namespace crn
