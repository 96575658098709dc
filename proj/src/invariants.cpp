#include "crn/invariants.hpp"

#include <algorithm>
#include <utility>

#include "crn/error.hpp"
#include "crn/massaction.hpp"

namespace crn {

namespace {

// Ring indices of the concentrations of `elim` inside `ring`, restricted to
// species the network actually contains.  With `require_all`, a name missing
// from the network is a Precondition error.
std::vector<int> elim_indices(const Ring& ring, const Network& net,
                              const std::vector<std::string>& elim,
                              bool require_all) {
  std::vector<int> drop;
  for (const auto& name : elim) {
    if (!net.has_species(name)) {
      if (require_all)
        fail(ErrorCode::Precondition,
             "eliminated species '" + name + "' is not in the union network");
      continue;
    }
    int idx = ring.index_of(conc_name(name));
    if (idx < 0)
      fail(ErrorCode::Internal,
           "species '" + name + "' has no concentration variable");
    if (std::find(drop.begin(), drop.end(), idx) == drop.end())
      drop.push_back(idx);
  }
  return drop;
}

Ideal eliminate_species(const Ideal& ideal, const Network& net,
                        const std::vector<std::string>& elim, bool require_all,
                        const Budget& budget) {
  std::vector<int> drop = elim_indices(ideal.ring, net, elim, require_all);
  if (drop.empty()) return ideal;
  return eliminate(ideal, drop, budget);
}

Ideal embed_ideal(const Ring& target, const Ideal& src) {
  std::vector<Poly> gens;
  gens.reserve(src.gens.size());
  for (const Poly& g : src.gens) gens.push_back(g.embed(target));
  return make_ideal(target, std::move(gens));
}

// Smaller first by total degree, then term count; ties keep basis order.
bool witness_less(const Poly& a, const Poly& b) {
  if (a.total_degree() != b.total_degree())
    return a.total_degree() < b.total_degree();
  return a.term_count() < b.term_count();
}

ComparisonReport compare_one_operand(const Ideal& union_elim,
                                     const Network& operand, int target,
                                     const std::vector<std::string>& elim,
                                     const Budget& budget) {
  ComparisonReport rep;
  rep.target = target;

  Projection proj = make_projection(union_elim.ring, operand, target);
  Ideal image = project_ideal(proj, union_elim);

  Ideal operand_ideal = steady_state_ideal(operand);
  rep.ring = operand_ideal.ring;
  rep.operand_elim =
      eliminate_species(operand_ideal, operand, elim, false, budget);
  rep.projected = embed_ideal(rep.ring, image);

  const MonomialOrder ord = MonomialOrder::grevlex();
  std::vector<Poly> gb_operand = buchberger(rep.operand_elim, ord, budget);
  std::vector<Poly> gb_projected = buchberger(rep.projected, ord, budget);

  rep.containment_holds = true;
  for (const Poly& g : rep.projected.gens) {
    if (!normal_form(g, gb_operand, ord, budget).is_zero()) {
      rep.containment_holds = false;
      fail(ErrorCode::Internal,
           "restriction containment failed for operand " +
               std::to_string(target) + ": generator '" + g.text() +
               "' lies outside the operand's elimination ideal");
    }
  }
  rep.equality_holds = (gb_projected == gb_operand);

  if (!rep.equality_holds) {
    std::vector<Poly> candidates = gb_operand;
    std::stable_sort(candidates.begin(), candidates.end(), witness_less);
    for (const Poly& c : candidates) {
      if (!normal_form(c, gb_projected, ord, budget).is_zero()) {
        if (!ideal_membership(c, rep.operand_elim, budget) ||
            ideal_membership(c, rep.projected, budget))
          fail(ErrorCode::Internal,
               "witness '" + c.text() + "' failed its membership re-check");
        rep.witness = c;
        break;
      }
    }
    if (!rep.witness)
      fail(ErrorCode::Internal,
           "ideals differ but no reduced-basis witness was found");
  }
  return rep;
}

bool complex_contains(const Complex& c, int species) {
  return c.parts.count(species) != 0;
}

bool reaction_touches(const Reaction& r, int species) {
  return complex_contains(r.reactant, species) ||
         complex_contains(r.product, species);
}

// For the theorem checkers: operands must be monomolecular and must not use
// the zero complex.
void require_monomolecular_operand(const Network& n, int which) {
  if (!n.is_monomolecular())
    fail(ErrorCode::NotApplicable,
         "operand " + std::to_string(which) +
             " is not monomolecular; this check only applies to "
             "monomolecular networks");
  if (n.has_zero_complex())
    fail(ErrorCode::Precondition,
         "operand " + std::to_string(which) +
             " uses the zero complex; monomolecular operands here must not "
             "contain it");
}

std::vector<std::string> shared_species_names(const Network& a,
                                              const Network& b) {
  std::vector<std::string> shared;
  for (const auto& s : a.species)
    if (b.has_species(s)) shared.push_back(s);
  return shared;
}

}  // namespace

Projection make_projection(const Ring& joint_ring, const Network& operand,
                           int target) {
  if (target != 1 && target != 2)
    fail(ErrorCode::Precondition, "projection target must be 1 or 2");
  for (const Reaction& r : operand.reactions)
    if (joint_ring.index_of(r.label) < 0)
      fail(ErrorCode::Precondition,
           "operand rate '" + r.label + "' is not a variable of the ring");
  for (const auto& s : operand.species)
    if (joint_ring.index_of(conc_name(s)) < 0)
      fail(ErrorCode::Precondition, "operand species '" + s +
                                        "' has no concentration variable in "
                                        "the ring");

  Projection p;
  p.target = target;
  p.ring = joint_ring;
  p.killed = foreign_var_mask(joint_ring, operand);
  for (int i = 0; i < joint_ring.size(); ++i) {
    if (p.killed[i]) continue;
    const Var& v = joint_ring.var(i);
    if (v.kind == VarKind::Rate)
      p.kept_rates.push_back(v.name);
    else
      p.kept_species.push_back(v.name);
  }
  return p;
}

Ideal project_ideal(const Projection& p, const Ideal& ideal) {
  if (!p.ring.same_as(ideal.ring) && !p.ring.same_vars(ideal.ring))
    fail(ErrorCode::Precondition,
         "projection and ideal are over different rings");
  std::vector<Poly> gens;
  gens.reserve(ideal.gens.size());
  for (const Poly& g : ideal.gens) gens.push_back(g.kill_vars(p.killed));
  return make_ideal(ideal.ring, std::move(gens));
}

ProjectionComparison compare_projections(
    const Network& n1, const Network& n2,
    const std::vector<std::string>& elim_species, const Budget& budget) {
  ProjectionComparison out;
  out.joint = network_union(n1, n2);
  out.glue = classify_glue(n1, n2);

  Ideal union_ideal = steady_state_ideal(out.joint);
  // Validates the names against the union before anything else.
  std::vector<int> drop =
      elim_indices(union_ideal.ring, out.joint, elim_species, true);
  Ideal union_elim =
      drop.empty() ? union_ideal : eliminate(union_ideal, drop, budget);
  out.eliminated = elim_species;

  out.op1 = compare_one_operand(union_elim, n1, 1, elim_species, budget);
  out.op2 = compare_one_operand(union_elim, n2, 2, elim_species, budget);
  return out;
}

bool check_glue_sum_decomposition(const Network& n1, const Network& n2,
                                  const std::string& glue_species,
                                  const std::vector<std::string>& elim_species,
                                  const Budget& budget) {
  require_monomolecular_operand(n1, 1);
  require_monomolecular_operand(n2, 2);

  std::vector<std::string> shared = shared_species_names(n1, n2);
  if (shared.size() != 1 || shared[0] != glue_species) {
    std::string have;
    for (const auto& s : shared) have += (have.empty() ? "" : ", ") + s;
    fail(ErrorCode::Hypothesis,
         "operands must share exactly the glue species '" + glue_species +
             "'; they share {" + have + "}");
  }

  Network joint = network_union(n1, n2);
  int k = joint.species_index(glue_species);

  // Unidirectional flow through the glue species: producers all in one
  // operand, consumers all in the other.  A reaction of the union belongs to
  // exactly one operand (sharing a reaction would need both endpoints
  // shared).
  bool in1_out2 = true, in2_out1 = true;
  for (const Reaction& r : joint.reactions) {
    NamedComplex reactant = joint.named(r.reactant);
    NamedComplex product = joint.named(r.product);
    bool in_n1 = n1.reaction_index(reactant, product) >= 0;
    if (complex_contains(r.product, k)) {
      (in_n1 ? in2_out1 : in1_out2) = false;
    } else if (complex_contains(r.reactant, k)) {
      (in_n1 ? in1_out2 : in2_out1) = false;
    }
  }
  if (!in1_out2 && !in2_out1)
    fail(ErrorCode::Hypothesis,
         "flow through '" + glue_species +
             "' is not unidirectional: it is produced and consumed on both "
             "sides of the union");

  Ideal union_ideal = steady_state_ideal(joint);
  std::vector<int> drop =
      elim_indices(union_ideal.ring, joint, elim_species, true);
  Ideal union_elim =
      drop.empty() ? union_ideal : eliminate(union_ideal, drop, budget);

  Ideal e1 = eliminate_species(steady_state_ideal(n1), n1, elim_species, false,
                               budget);
  Ideal e2 = eliminate_species(steady_state_ideal(n2), n2, elim_species, false,
                               budget);
  Ideal sum = ideal_sum(embed_ideal(union_ideal.ring, e1),
                        embed_ideal(union_ideal.ring, e2));
  return ideal_equal(union_elim, sum, budget);
}

bool check_shared_reaction_equality(
    const Network& n1, const Network& n2, const NamedReaction& shared,
    const std::vector<std::string>& elim_species, const Budget& budget) {
  require_monomolecular_operand(n1, 1);
  require_monomolecular_operand(n2, 2);
  if (shared.reactant.size() != 1 || shared.reactant.begin()->second != 1 ||
      shared.product.size() != 1 || shared.product.begin()->second != 1)
    fail(ErrorCode::Precondition,
         "the shared reaction must convert one species into another");
  const std::string& from = shared.reactant.begin()->first;
  const std::string& to = shared.product.begin()->first;

  int idx1 = n1.reaction_index(shared.reactant, shared.product);
  int idx2 = n2.reaction_index(shared.reactant, shared.product);
  if (idx1 < 0 || idx2 < 0)
    fail(ErrorCode::Hypothesis, "shared reaction " + from + " -> " + to +
                                    " is missing from operand " +
                                    (idx1 < 0 ? "1" : "2"));
  if (n1.reactions[idx1].label != n2.reactions[idx2].label)
    fail(ErrorCode::Precondition,
         "shared reaction carries different labels in the two operands");
  if (!shared.label.empty() && n1.reactions[idx1].label != shared.label)
    fail(ErrorCode::Precondition,
         "shared reaction label mismatch: expected '" + shared.label +
             "', network has '" + n1.reactions[idx1].label + "'");

  // A reversible partner present in both operands is part of the overlap.
  int rev1 = n1.reaction_index(shared.product, shared.reactant);
  int rev2 = n2.reaction_index(shared.product, shared.reactant);
  bool reversible_pair = rev1 >= 0 && rev2 >= 0;
  if (reversible_pair && n1.reactions[rev1].label != n2.reactions[rev2].label)
    fail(ErrorCode::Precondition,
         "reverse of the shared reaction carries different labels in the two "
         "operands");

  std::vector<std::string> shared_sp = shared_species_names(n1, n2);
  if (shared_sp.size() != 2 ||
      !(std::find(shared_sp.begin(), shared_sp.end(), from) !=
            shared_sp.end() &&
        std::find(shared_sp.begin(), shared_sp.end(), to) != shared_sp.end()))
    fail(ErrorCode::Hypothesis,
         "operands must share exactly the two species of the shared "
         "reaction");

  // The overlap must be exactly the shared reaction (and its reversible
  // partner when both operands carry it), and each endpoint may appear in
  // unshared reactions of only one operand: the reactant's other reactions
  // in one operand, the product's in the other.  Either orientation works.
  auto unshared_touches = [&](const Network& n, int skip_a, int skip_b,
                              const std::string& species) {
    int sp = n.species_index(species);
    for (int i = 0; i < static_cast<int>(n.reactions.size()); ++i) {
      if (i == skip_a || i == skip_b) continue;
      if (reaction_touches(n.reactions[i], sp)) return true;
    }
    return false;
  };
  int skip1 = reversible_pair ? rev1 : -1;
  int skip2 = reversible_pair ? rev2 : -1;
  if ((rev1 >= 0) != (rev2 >= 0))
    fail(ErrorCode::Hypothesis,
         "the reverse reaction " + to + " -> " + from +
             " appears in only one operand, so the overlap is larger than "
             "the shared reaction");
  bool orient1 = !unshared_touches(n2, idx2, skip2, from) &&
                 !unshared_touches(n1, idx1, skip1, to);
  bool orient2 = !unshared_touches(n1, idx1, skip1, from) &&
                 !unshared_touches(n2, idx2, skip2, to);
  if (!orient1 && !orient2)
    fail(ErrorCode::Hypothesis,
         "each endpoint of the shared reaction may belong to unshared "
         "reactions of only one operand ('" +
             from + "' on one side, '" + to + "' on the other)");

  ProjectionComparison cmp =
      compare_projections(n1, n2, elim_species, budget);
  return cmp.op1.equality_holds && cmp.op2.equality_holds;
}

}  // namespace crn
