#pragma once

#include <string>
#include <vector>

#include "crn/ideal.hpp"
#include "crn/linalg.hpp"
#include "crn/net.hpp"
#include "crn/poly.hpp"

namespace crn {

// Concentration-variable name for a species: "X7" -> "x7", anything else is
// prefixed ("A" -> "xA") so rate labels and concentrations cannot collide by
// accident.
std::string conc_name(const std::string& species);

// Mass-action dynamical system of a network over Q[rates; concentrations].
// Ring layout: one rate variable per reaction (reaction order), then one
// concentration per species (species order).
struct MassActionSystem {
  Network net;
  Ring ring;
  std::vector<int> rate_var;  // reaction index -> ring index
  std::vector<int> conc_var;  // species index -> ring index
  std::vector<Poly> polys;    // d x_i / dt, one per species
};

MassActionSystem mass_action_system(const Network& n);

// The reactant monomial x^y of a complex (1 for the zero complex).
Poly complex_monomial(const MassActionSystem& sys, const Complex& y);

// Stoichiometric data: columns of gamma are product-minus-reactant vectors.
struct StoichMatrix {
  std::vector<std::vector<long>> gamma;  // species x reactions
  int rank = 0;                          // dim of the stoichiometric subspace
  std::vector<RatVec> conservation;      // basis of its orthogonal complement
};

StoichMatrix stoichiometric_matrix(const Network& n);

// Steady-state ideal <f_1, ..., f_n> in Q[rates; concentrations].  For a
// monomolecular network without the zero complex the system polynomials sum
// to zero, so the last one is dropped from the generating set (the ideal is
// unchanged; the smaller presentation matches hand computations).
Ideal steady_state_ideal(const Network& n);

// Same ideal, but always generated by the full list of system polynomials.
Ideal steady_state_ideal_full(const Network& n);

// Mass-action ODE decomposition of a union: h = f + g where h is the glued
// system, f is operand 1's system, and g is the system of operand 2 minus
// any reactions shared with operand 1 (all embedded into the union's ring,
// missing species contributing zero).  The decomposition is verified exactly
// at construction.
struct GlueOdeDecomposition {
  Network net;            // the union network
  MassActionSystem sys;   // its mass-action system (h = sys.polys)
  std::vector<Poly> f;    // operand 1's polynomials in the union ring
  std::vector<Poly> g;    // operand 2's (shared reactions removed)
  bool shared_reactions = false;  // true when reactions were removed from g
};

GlueOdeDecomposition glue_ode_decomposition(const Network& n1,
                                            const Network& n2);

// kill-mask selecting the variables of `ring` that do NOT belong to `n`
// (rates by label, concentrations by species name).  Applying
// Poly::kill_vars with this mask is the projection onto n's subring.
std::vector<char> foreign_var_mask(const Ring& ring, const Network& n);

}  // namespace crn
