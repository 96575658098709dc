#include "crn/massaction.hpp"

#include <cctype>
#include <set>

#include "crn/error.hpp"

namespace crn {

std::string conc_name(const std::string& species) {
  bool canonical = species.size() >= 2 && species[0] == 'X';
  for (size_t i = 1; canonical && i < species.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(species[i]))) canonical = false;
  if (canonical) return "x" + species.substr(1);
  return "x" + species;
}

MassActionSystem mass_action_system(const Network& n) {
  MassActionSystem sys;
  sys.net = n;
  std::vector<Var> vars;
  std::set<std::string> names;
  for (const Reaction& r : n.reactions) {
    vars.push_back({r.label, VarKind::Rate});
    names.insert(r.label);
  }
  for (const auto& s : n.species) {
    std::string cn = conc_name(s);
    if (names.count(cn))
      fail(ErrorCode::Precondition, "rate label '" + cn +
                                        "' collides with the concentration "
                                        "variable of species '" +
                                        s + "'");
    vars.push_back({cn, VarKind::Conc});
  }
  sys.ring = Ring(std::move(vars));
  int r = static_cast<int>(n.reactions.size());
  for (int k = 0; k < r; ++k) sys.rate_var.push_back(k);
  for (size_t i = 0; i < n.species.size(); ++i)
    sys.conc_var.push_back(r + static_cast<int>(i));

  sys.polys.assign(n.species.size(), Poly(sys.ring));
  for (int k = 0; k < r; ++k) {
    const Reaction& rx = n.reactions[k];
    Poly flux = Poly::variable(sys.ring, sys.rate_var[k]) *
                complex_monomial(sys, rx.reactant);
    // column of the stoichiometric matrix: product minus reactant
    for (auto& [sp, c] : rx.product.parts)
      sys.polys[sp] += flux * Rat(c);
    for (auto& [sp, c] : rx.reactant.parts)
      sys.polys[sp] -= flux * Rat(c);
  }
  return sys;
}

Poly complex_monomial(const MassActionSystem& sys, const Complex& y) {
  Monomial m(sys.ring.size());
  for (auto& [sp, c] : y.parts)
    m.set(sys.conc_var[sp], static_cast<uint32_t>(c));
  return Poly::from_monomial(sys.ring, m, Rat(1));
}

StoichMatrix stoichiometric_matrix(const Network& n) {
  StoichMatrix out;
  size_t ns = n.species.size(), nr = n.reactions.size();
  out.gamma.assign(ns, std::vector<long>(nr, 0));
  for (size_t k = 0; k < nr; ++k) {
    for (auto& [sp, c] : n.reactions[k].product.parts) out.gamma[sp][k] += c;
    for (auto& [sp, c] : n.reactions[k].reactant.parts) out.gamma[sp][k] -= c;
  }
  // exact rank and orthogonal complement via Gamma^T v = 0
  RatMat gt(nr, RatVec(ns, Rat(0)));
  for (size_t i = 0; i < ns; ++i)
    for (size_t k = 0; k < nr; ++k) gt[k][i] = Rat(out.gamma[i][k]);
  out.conservation = nullspace(gt);
  out.rank = static_cast<int>(ns - out.conservation.size());
  return out;
}

Ideal steady_state_ideal_full(const Network& n) {
  MassActionSystem sys = mass_action_system(n);
  return make_ideal(sys.ring, sys.polys);
}

Ideal steady_state_ideal(const Network& n) {
  MassActionSystem sys = mass_action_system(n);
  std::vector<Poly> gens = sys.polys;
  if (n.is_monomolecular() && !n.has_zero_complex() && gens.size() >= 2) {
    Poly sum(sys.ring);
    for (const Poly& p : gens) sum += p;
    if (!sum.is_zero())
      fail(ErrorCode::Internal,
           "system polynomials of a monomolecular network without inflows or "
           "outflows must sum to zero");
    gens.pop_back();  // dependent generator: the rest already generate
  }
  return make_ideal(sys.ring, gens);
}

GlueOdeDecomposition glue_ode_decomposition(const Network& n1,
                                            const Network& n2) {
  GlueOdeDecomposition out;
  out.net = network_union(n1, n2);
  out.sys = mass_action_system(out.net);

  auto lift = [&](const Network& part) {
    MassActionSystem ps = mass_action_system(part);
    std::vector<Poly> lifted(out.net.species.size(), Poly(out.sys.ring));
    for (size_t i = 0; i < part.species.size(); ++i) {
      int j = out.net.species_index(part.species[i]);
      lifted[j] = ps.polys[i].embed(out.sys.ring);
    }
    return lifted;
  };

  out.f = lift(n1);

  // operand 2 minus the reactions already counted in operand 1
  std::vector<NamedReaction> rest;
  for (const Reaction& r : n2.reactions) {
    NamedComplex reac = n2.named(r.reactant), prod = n2.named(r.product);
    if (n1.reaction_index(reac, prod) >= 0) {
      out.shared_reactions = true;
      continue;
    }
    rest.push_back({std::move(reac), std::move(prod), r.label});
  }
  Network tail = build_network(n2.species, rest, /*allow_empty=*/true);
  out.g = tail.empty() ? std::vector<Poly>(out.net.species.size(),
                                           Poly(out.sys.ring))
                       : lift(tail);

  for (size_t j = 0; j < out.sys.polys.size(); ++j)
    if (out.sys.polys[j] != out.f[j] + out.g[j])
      fail(ErrorCode::Internal,
           "glued mass-action system failed to decompose as f + g");
  return out;
}

std::vector<char> foreign_var_mask(const Ring& ring, const Network& n) {
  std::set<std::string> own;
  for (const Reaction& r : n.reactions) own.insert(r.label);
  for (const auto& s : n.species) own.insert(conc_name(s));
  std::vector<char> mask(ring.size(), 0);
  for (int i = 0; i < ring.size(); ++i)
    if (!own.count(ring.var(i).name)) mask[i] = 1;
  return mask;
}

}  // namespace crn
