// Restriction maps onto union operands, elimination-ideal comparisons, and
// the gluing equality/decomposition checkers, plus randomized property
// coverage with seeded, reproducible instances.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crn/error.hpp"
#include "crn/ideal.hpp"
#include "crn/invariants.hpp"
#include "crn/massaction.hpp"
#include "crn/net.hpp"
#include "crn/poly.hpp"
#include "doctest.h"

using namespace crn;

namespace {

Network netp(const std::string& text) { return parse_network(text); }

std::vector<std::string> texts(const Ideal& ideal) {
  return ideal_canonical_text(ideal);
}

template <typename F>
void expect_error(F&& f, ErrorCode code, const std::string& substr) {
  try {
    f();
    FAIL_CHECK("expected an error containing '" << substr << "'");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    CHECK_MESSAGE(std::string(e.what()).find(substr) != std::string::npos,
                  "message was: ", e.what());
  }
}

// Deterministic across standard libraries, unlike uniform_int_distribution.
uint32_t rand_int(std::mt19937& rng, uint32_t lo, uint32_t hi) {
  return lo + rng() % (hi - lo + 1);
}

// Random monomolecular edge set over `pool` with labels prefix0, prefix1, ...
// A banned index never appears in the banned role.
std::vector<NamedReaction> random_edges(std::mt19937& rng,
                                        const std::vector<std::string>& pool,
                                        int min_edges, int max_edges,
                                        const std::string& prefix,
                                        int ban_reactant = -1,
                                        int ban_product = -1) {
  int n = static_cast<int>(pool.size());
  int want = static_cast<int>(rand_int(rng, min_edges, max_edges));
  std::set<std::pair<int, int>> edges;
  for (int attempts = 0; static_cast<int>(edges.size()) < want && attempts < 80;
       ++attempts) {
    int i = static_cast<int>(rand_int(rng, 0, n - 1));
    int j = static_cast<int>(rand_int(rng, 0, n - 1));
    if (i == j || i == ban_reactant || j == ban_product) continue;
    edges.insert({i, j});
  }
  std::vector<NamedReaction> rxns;
  int k = 0;
  for (const auto& [i, j] : edges)
    rxns.push_back(
        {{{pool[i], 1}}, {{pool[j], 1}}, prefix + std::to_string(k++)});
  return rxns;
}

bool touches_name(const std::vector<NamedReaction>& rxns,
                  const std::string& s) {
  for (const auto& r : rxns)
    if (r.reactant.count(s) || r.product.count(s)) return true;
  return false;
}

// Appends one edge touching pool[k] (as product or reactant) unless an equal
// edge already exists.
void force_touch(std::mt19937& rng, std::vector<NamedReaction>& rxns,
                 const std::vector<std::string>& pool, int k, bool as_product,
                 const std::string& label) {
  int n = static_cast<int>(pool.size());
  int other = k;
  while (other == k) other = static_cast<int>(rand_int(rng, 0, n - 1));
  NamedReaction r =
      as_product ? NamedReaction{{{pool[other], 1}}, {{pool[k], 1}}, label}
                 : NamedReaction{{{pool[k], 1}}, {{pool[other], 1}}, label};
  for (const auto& e : rxns)
    if (e.reactant == r.reactant && e.product == r.product) return;
  rxns.push_back(r);
}

void dump_instance(const std::string& tag, unsigned seed, const Network& a,
                   const Network& b) {
  std::ofstream f("invariants_" + tag + "_" + std::to_string(seed) +
                  ".instance.txt");
  f << "# operand 1\n" << a.text() << "# operand 2\n" << b.text();
}

// Every term has total concentration-degree exactly one.
bool is_x_linear(const Poly& p) {
  for (const auto& t : p.terms()) {
    uint32_t cdeg = 0;
    for (int i = 0; i < p.ring().size(); ++i)
      if (p.ring().var(i).kind == VarKind::Conc) cdeg += t.mono[i];
    if (cdeg != 1) return false;
  }
  return true;
}

// Independent of the Groebner machinery: keeps the generators that avoid the
// variable and adds every fraction-free pairwise combination that cancels
// it.  For x-linear generators each returned row is a member of the
// elimination ideal by construction.
std::vector<Poly> cross_elimination_rows(const Ideal& ideal, int x_index) {
  std::vector<Poly> keep, pivot;
  for (const Poly& g : ideal.gens) {
    REQUIRE(is_x_linear(g));
    (g.touches(x_index) ? pivot : keep).push_back(g);
  }
  for (size_t i = 0; i < pivot.size(); ++i)
    for (size_t j = i + 1; j < pivot.size(); ++j) {
      Poly ci = pivot[i].derivative(x_index);
      Poly cj = pivot[j].derivative(x_index);
      Poly comb = cj * pivot[i] - ci * pivot[j];
      REQUIRE(!comb.touches(x_index));
      if (!comb.is_zero()) keep.push_back(comb);
    }
  return keep;
}

const char* kExchange1 = "X1 -> X2 [k1]";
const char* kExchange2 = "X2 -> X1 [k2]";
const char* kShareRxn1 = "X3 -> X1 + X3 [k1]; X4 -> X2 [k2]";
const char* kShareRxn2 = "X4 -> X2 [k2]; X2 -> X1 + X2 [k3]";
const char* kChainLeft = "X1 -> X2 [k1]; X2 -> X3 [k2]";
const char* kChainRight = "X3 -> X4 [k3]; X4 -> X5 [k4]";
const char* kChainShared1 = "X1 -> X2 [k1]; X2 -> X3 [k2]";
const char* kChainShared2 = "X2 -> X3 [k2]; X3 -> X4 [k3]";

NamedReaction shared_x2_x3() { return {{{"X2", 1}}, {{"X3", 1}}, "k2"}; }

}  // namespace

TEST_CASE("restriction onto an operand keeps exactly its variables") {
  Network n1 = netp(kExchange1), n2 = netp(kExchange2);
  Network joint = network_union(n1, n2);
  MassActionSystem sys = mass_action_system(joint);

  Projection p1 = make_projection(sys.ring, n1, 1);
  CHECK(p1.target == 1);
  CHECK(p1.kept_rates == std::vector<std::string>{"k1"});
  CHECK(p1.kept_species == std::vector<std::string>{"x1", "x2"});
  CHECK(p1.killed[sys.ring.index_of("k2")] == 1);
  CHECK(p1.killed[sys.ring.index_of("k1")] == 0);

  Projection p2 = make_projection(sys.ring, n2, 2);
  CHECK(p2.kept_rates == std::vector<std::string>{"k2"});
  CHECK(p2.kept_species == std::vector<std::string>{"x1", "x2"});

  // The image of the zero ideal is the zero ideal.
  Ideal zero = make_ideal(sys.ring, {});
  CHECK(project_ideal(p2, zero).gens.empty());

  // Killing the foreign rate on the union's steady-state ideal.
  Ideal full = steady_state_ideal(joint);
  REQUIRE(full.gens.size() == 1);
  CHECK(full.gens[0].text() == "-k1*x1 + k2*x2");
  Ideal img1 = project_ideal(p1, full);
  REQUIRE(img1.gens.size() == 1);
  CHECK(img1.gens[0].text() == "-k1*x1");
}

TEST_CASE("restriction construction validates its inputs") {
  Network n1 = netp(kExchange1), n2 = netp(kExchange2);
  Network joint = network_union(n1, n2);
  Ring joint_ring = mass_action_system(joint).ring;
  Ring small_ring = mass_action_system(n1).ring;

  expect_error([&] { make_projection(joint_ring, n1, 3); },
               ErrorCode::Precondition, "target");
  // The joint network has a rate the small ring lacks.
  expect_error([&] { make_projection(small_ring, joint, 1); },
               ErrorCode::Precondition, "k2");
  // Ideal over a different ring than the projection.
  Projection p1 = make_projection(joint_ring, n1, 1);
  Ideal small_ideal = steady_state_ideal(n1);
  expect_error([&] { project_ideal(p1, small_ideal); },
               ErrorCode::Precondition, "different rings");
}

TEST_CASE("restricting the full steady-state ideal recovers each operand") {
  Network n1 = netp(kExchange1), n2 = netp(kExchange2);
  ProjectionComparison cmp = compare_projections(n1, n2, {});
  CHECK(cmp.glue.kind == GlueKind::OverComplexes);
  CHECK(cmp.glue.shared_species.size() == 2);
  CHECK(cmp.eliminated.empty());

  CHECK(cmp.op1.containment_holds);
  CHECK(cmp.op1.equality_holds);
  CHECK(!cmp.op1.witness.has_value());
  CHECK(texts(cmp.op1.projected) == std::vector<std::string>{"k1*x1"});
  CHECK(texts(cmp.op1.operand_elim) == std::vector<std::string>{"k1*x1"});

  CHECK(cmp.op2.equality_holds);
  CHECK(texts(cmp.op2.projected) == std::vector<std::string>{"k2*x2"});

  // Species-disjoint operands are the degenerate overlap; the recovery still
  // holds, with or without elimination.
  Network d1 = netp("X1 -> X2 [k1]"), d2 = netp("X3 -> X4 [k2]");
  ProjectionComparison dj = compare_projections(d1, d2, {});
  CHECK(dj.glue.kind == GlueKind::SpeciesDisjoint);
  CHECK(dj.op1.equality_holds);
  CHECK(dj.op2.equality_holds);
  ProjectionComparison dje = compare_projections(d1, d2, {"X2"});
  CHECK(dje.op1.equality_holds);
  CHECK(dje.op2.equality_holds);
  CHECK(texts(dje.op2.operand_elim) == std::vector<std::string>{"k2*x3"});

  expect_error([&] { compare_projections(d1, d2, {"X9"}); },
               ErrorCode::Precondition, "not in the union");
}

TEST_CASE(
    "two one-step conversions glued over both species: eliminating the "
    "shared reactant loses the second operand's invariant") {
  Network n1 = netp(kExchange1), n2 = netp(kExchange2);
  ProjectionComparison cmp = compare_projections(n1, n2, {"X1"});

  // Operand 1: both sides collapse to the zero ideal.
  CHECK(cmp.op1.containment_holds);
  CHECK(cmp.op1.equality_holds);
  CHECK(texts(cmp.op1.projected).empty());
  CHECK(texts(cmp.op1.operand_elim).empty());

  // Operand 2 keeps k2*x2, which the restricted union ideal cannot see.
  CHECK(cmp.op2.containment_holds);
  CHECK(!cmp.op2.equality_holds);
  CHECK(texts(cmp.op2.projected).empty());
  CHECK(texts(cmp.op2.operand_elim) == std::vector<std::string>{"k2*x2"});
  REQUIRE(cmp.op2.witness.has_value());
  CHECK(cmp.op2.witness->text() == "k2*x2");
}

TEST_CASE(
    "operands overlapping in one reaction: eliminated restrictions can be "
    "strict or exact depending on the eliminated species") {
  Network n1 = netp(kShareRxn1), n2 = netp(kShareRxn2);

  // The union's steady-state ideal, frozen.
  Network joint = network_union(n1, n2);
  CHECK(texts(steady_state_ideal(joint)) ==
        std::vector<std::string>{"k1*x3 + k3*x2", "k2*x4"});

  ProjectionComparison cmp = compare_projections(n1, n2, {"X3"});
  CHECK(cmp.glue.kind == GlueKind::OverReactions);
  REQUIRE(cmp.glue.shared_reactions.size() == 1);

  CHECK(cmp.op1.equality_holds);
  CHECK(texts(cmp.op1.projected) == std::vector<std::string>{"k2*x4"});
  CHECK(texts(cmp.op1.operand_elim) == std::vector<std::string>{"k2*x4"});

  CHECK(cmp.op2.containment_holds);
  CHECK(!cmp.op2.equality_holds);
  CHECK(texts(cmp.op2.projected) == std::vector<std::string>{"k2*x4"});
  CHECK(texts(cmp.op2.operand_elim) ==
        std::vector<std::string>{"k2*x4", "k3*x2"});
  REQUIRE(cmp.op2.witness.has_value());
  CHECK(cmp.op2.witness->text() == "k3*x2");

  // Eliminating the other operand-1-only species instead gives equality on
  // both sides.
  ProjectionComparison cmp4 = compare_projections(n1, n2, {"X4"});
  CHECK(cmp4.op1.equality_holds);
  CHECK(texts(cmp4.op1.projected) == std::vector<std::string>{"k1*x3"});
  CHECK(cmp4.op2.equality_holds);
  CHECK(texts(cmp4.op2.projected) == std::vector<std::string>{"k3*x2"});

  // Full ideals always restrict exactly.
  ProjectionComparison cmp0 = compare_projections(n1, n2, {});
  CHECK(cmp0.op1.equality_holds);
  CHECK(cmp0.op2.equality_holds);
}

TEST_CASE("chain glued at one species: eliminated ideal splits into the sum") {
  Network n1 = netp(kChainLeft), n2 = netp(kChainRight);
  CHECK(check_glue_sum_decomposition(n1, n2, "X3", {"X2"}));
  for (const char* sp : {"X1", "X2", "X3", "X4", "X5"})
    CHECK_MESSAGE(check_glue_sum_decomposition(n1, n2, "X3", {sp}),
                  "eliminating ", sp);

  // Frozen algebra behind the X2 case: the union's eliminated ideal and the
  // operands' parts.
  Network joint = network_union(n1, n2);
  Ideal in = steady_state_ideal(joint);
  int x2 = in.ring.index_of("x2");
  REQUIRE(x2 >= 0);
  Ideal ine = eliminate(in, {x2});
  CHECK(texts(ine) == std::vector<std::string>{"k1*x1", "k3*x3", "k4*x4"});
  Ideal i1 = steady_state_ideal(n1);
  Ideal i1e = eliminate(i1, {i1.ring.index_of("x2")});
  CHECK(texts(i1e) == std::vector<std::string>{"k1*x1"});
  CHECK(texts(steady_state_ideal(n2)) ==
        std::vector<std::string>{"k3*x3", "k4*x4"});

  // Fraction-free cross-combinations land inside the eliminated ideal.
  std::vector<Poly> rows = cross_elimination_rows(in, x2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].text() == "-k1*x1");
  CHECK(rows[1].text() == "k3*x3 - k4*x4");
  CHECK(rows[2].text() == "k1*k2*x1 - k2*k3*x3");
  for (const Poly& r : rows) CHECK(ideal_membership(r, ine));

  // Mirrored flow direction (producers in operand 2, consumers in operand 1).
  Network m1 = netp("X3 -> X1 [k1]"), m2 = netp("X2 -> X3 [k2]");
  for (const char* sp : {"X1", "X2", "X3"})
    CHECK_MESSAGE(check_glue_sum_decomposition(m1, m2, "X3", {sp}),
                  "mirrored, eliminating ", sp);
}

TEST_CASE("glue-at-species checker separates requirement failures") {
  Network n1 = netp(kChainLeft), n2 = netp(kChainRight);

  // Bidirectional flow through the glue species.
  Network b1 = netp("X1 -> X3 [k1]; X3 -> X1 [k1r]");
  Network b2 = netp("X3 -> X4 [k3]");
  expect_error([&] { check_glue_sum_decomposition(b1, b2, "X3", {"X1"}); },
               ErrorCode::Hypothesis, "unidirectional");

  // Zero complex in an operand.
  Network z1 = netp("0 -> X3 [a0]; X3 -> X1 [k1]");
  expect_error([&] { check_glue_sum_decomposition(z1, b2, "X3", {"X1"}); },
               ErrorCode::Precondition, "zero complex");

  // Non-monomolecular operand.
  Network m1 = netp("2 X1 -> X3 [k1]");
  expect_error([&] { check_glue_sum_decomposition(m1, b2, "X3", {"X1"}); },
               ErrorCode::NotApplicable, "monomolecular");

  // Wrong or missing glue species.
  expect_error([&] { check_glue_sum_decomposition(n1, n2, "X4", {"X1"}); },
               ErrorCode::Hypothesis, "share exactly");
  Network s2 = netp("X3 -> X4 [k3]; X2 -> X4 [k9]");
  expect_error([&] { check_glue_sum_decomposition(n1, s2, "X3", {"X1"}); },
               ErrorCode::Hypothesis, "share exactly");
}

TEST_CASE(
    "three-step chain split at its middle reaction: restrictions are exact "
    "for every eliminated species") {
  Network n1 = netp(kChainShared1), n2 = netp(kChainShared2);
  for (const char* sp : {"X1", "X2", "X3", "X4"}) {
    CHECK_MESSAGE(check_shared_reaction_equality(n1, n2, shared_x2_x3(), {sp}),
                  "eliminating ", sp);
    // Operand order does not matter.
    CHECK(check_shared_reaction_equality(n2, n1, shared_x2_x3(), {sp}));
  }

  // Reversible shared pair.
  Network r1 = netp("X1 -> X2 [k1]; X2 <-> X3 [k2, k2r]");
  Network r2 = netp("X2 <-> X3 [k2, k2r]; X3 -> X4 [k3]");
  for (const char* sp : {"X1", "X2", "X3", "X4"})
    CHECK_MESSAGE(check_shared_reaction_equality(r1, r2, shared_x2_x3(), {sp}),
                  "reversible pair, eliminating ", sp);
}

TEST_CASE("shared-reaction checker separates requirement failures") {
  Network n1 = netp(kChainShared1), n2 = netp(kChainShared2);

  // Not monomolecular: the one-reaction-overlap counterexample pair.
  expect_error(
      [&] {
        check_shared_reaction_equality(
            netp(kShareRxn1), netp(kShareRxn2),
            {{{"X4", 1}}, {{"X2", 1}}, "k2"}, {"X3"});
      },
      ErrorCode::NotApplicable, "monomolecular");

  // Shared reaction missing from an operand.
  expect_error(
      [&] {
        check_shared_reaction_equality(
            n1, n2, {{{"X1", 1}}, {{"X2", 1}}, "k1"}, {"X1"});
      },
      ErrorCode::Hypothesis, "missing");

  // The reactant endpoint may not appear in unshared reactions of both
  // operands.
  Network v1 = netp("X1 -> X2 [k1]; X2 -> X3 [k2]; X3 -> X1 [k5]");
  expect_error(
      [&] { check_shared_reaction_equality(v1, n2, shared_x2_x3(), {"X1"}); },
      ErrorCode::Hypothesis, "endpoint");

  // Reverse reaction present in only one operand.
  Network o1 = netp("X1 -> X2 [k1]; X2 -> X3 [k2]; X3 -> X2 [k2r]");
  expect_error(
      [&] { check_shared_reaction_equality(o1, n2, shared_x2_x3(), {"X1"}); },
      ErrorCode::Hypothesis, "only one operand");

  // Extra shared species beyond the endpoints.
  Network s1 = netp("X1 -> X2 [k1]; X2 -> X3 [k2]; X1 -> X5 [k7]");
  Network s2 = netp("X2 -> X3 [k2]; X3 -> X5 [k8]");
  expect_error(
      [&] { check_shared_reaction_equality(s1, s2, shared_x2_x3(), {"X1"}); },
      ErrorCode::Hypothesis, "exactly the two species");

  // Label disagreement between the operands.
  Network lm = netp("X2 -> X3 [q2]; X3 -> X4 [k3]");
  expect_error(
      [&] { check_shared_reaction_equality(n1, lm, shared_x2_x3(), {"X1"}); },
      ErrorCode::Precondition, "labels");

  // The shared reaction must be between two single species.
  expect_error(
      [&] {
        check_shared_reaction_equality(
            n1, n2, {{{"X2", 2}}, {{"X3", 1}}, "k2"}, {"X1"});
      },
      ErrorCode::Precondition, "one species");
}

TEST_CASE(
    "two modification cycles glued over two shared complexes restrict "
    "exactly for every species") {
  Network n1 = netp(
      "S0 + E <-> X [k1, k2]; X -> S1 + E [k3]; "
      "S1 + F <-> Y [k4, k5]; Y -> S0 + F [k6]");
  Network n2 = netp(
      "S1 + E <-> X1 [l1, l2]; X1 -> S2 + E [l3]; "
      "S2 + F <-> Y2 [l4, l5]; Y2 -> S1 + F [l6]");

  GlueInfo glue = classify_glue(n1, n2);
  CHECK(glue.kind == GlueKind::OverComplexes);
  CHECK(glue.shared_species.size() == 3);
  CHECK(glue.shared_nonzero_complexes.size() == 2);

  Network joint = network_union(n1, n2);
  REQUIRE(joint.species.size() == 9);

  Budget budget{20'000'000, 60};
  for (const auto& sp : joint.species) {
    ProjectionComparison cmp = compare_projections(n1, n2, {sp}, budget);
    CHECK_MESSAGE(cmp.op1.equality_holds, "operand 1, eliminating ", sp);
    CHECK_MESSAGE(cmp.op2.equality_holds, "operand 2, eliminating ", sp);
  }
}

TEST_CASE(
    "property: restricting the full ideal recovers the operand on random "
    "unions, and eliminated restrictions are always contained") {
  for (int t = 0; t < 40; ++t) {
    unsigned seed = 81000u + static_cast<unsigned>(t);
    std::mt19937 rng(seed);
    int c = static_cast<int>(rand_int(rng, 1, 2));
    int m = static_cast<int>(rand_int(rng, 1, 2));
    int n = static_cast<int>(rand_int(rng, 1, 2));
    std::vector<std::string> shared;
    for (int i = 0; i < c; ++i) shared.push_back("S" + std::to_string(i + 1));
    std::vector<std::string> pool1, pool2;
    for (int i = 0; i < m; ++i) pool1.push_back("A" + std::to_string(i + 1));
    pool1.insert(pool1.end(), shared.begin(), shared.end());
    pool2 = shared;
    for (int i = 0; i < n; ++i) pool2.push_back("B" + std::to_string(i + 1));

    auto r1 = random_edges(rng, pool1, 1, 3, "a");
    auto r2 = random_edges(rng, pool2, 1, 3, "b");

    // Occasionally go beyond single-species complexes.
    if (rand_int(rng, 0, 1) == 1) {
      int i = static_cast<int>(rand_int(rng, 0, pool1.size() - 1));
      int j = static_cast<int>(rand_int(rng, 0, pool1.size() - 1));
      int k = static_cast<int>(rand_int(rng, 0, pool1.size() - 1));
      NamedComplex reac;
      reac[pool1[i]] += 1;
      reac[pool1[j]] += 1;
      r1.push_back({reac, {{pool1[k], 1}}, "abi"});
    }
    // Occasionally add an outflow (zero complex) to the second operand.
    if (rand_int(rng, 0, 1) == 1) {
      int i = static_cast<int>(rand_int(rng, 0, pool2.size() - 1));
      r2.push_back({{{pool2[i], 1}}, {}, "bout"});
    }
    // Occasionally share a reaction between the shared species.
    if (c == 2 && rand_int(rng, 0, 1) == 1) {
      auto drop = [&](std::vector<NamedReaction>& rxns) {
        rxns.erase(std::remove_if(rxns.begin(), rxns.end(),
                                  [&](const NamedReaction& r) {
                                    return r.reactant ==
                                               NamedComplex{{"S1", 1}} &&
                                           r.product == NamedComplex{{"S2", 1}};
                                  }),
                   rxns.end());
      };
      drop(r1);
      drop(r2);
      r1.push_back({{{"S1", 1}}, {{"S2", 1}}, "sh"});
      r2.push_back({{{"S1", 1}}, {{"S2", 1}}, "sh"});
    }

    // A pair drawn independently in both operands is one shared reaction and
    // must carry a single label.
    for (auto& rb : r2)
      for (const auto& ra : r1)
        if (ra.reactant == rb.reactant && ra.product == rb.product)
          rb.label = ra.label;

    Network n1 = build_network(pool1, r1);
    Network n2 = build_network(pool2, r2);

    ProjectionComparison full = compare_projections(n1, n2, {});
    bool ok = full.op1.equality_holds && full.op2.equality_holds;
    if (!ok) dump_instance("full_restriction", seed, n1, n2);
    if (!ok)
      FAIL("full-ideal restriction failed, seed ",
           seed, ": ", n1.text(), " / ", n2.text());

    Network joint = network_union(n1, n2);
    std::vector<std::string> elim;
    int e = static_cast<int>(rand_int(rng, 0, 2));
    for (int i = 0; i < e && i < static_cast<int>(joint.species.size()); ++i)
      elim.push_back(
          joint.species[rand_int(rng, 0, joint.species.size() - 1)]);
    // Containment violations raise Internal inside; reaching here means the
    // contained-restriction property held.
    ProjectionComparison cmp = compare_projections(n1, n2, elim);
    CHECK(cmp.op1.containment_holds);
    CHECK(cmp.op2.containment_holds);
  }
}

TEST_CASE(
    "property: gluing monomolecular networks over one species keeps every "
    "eliminated restriction exact") {
  int instances = 0;
  for (int t = 0; t < 100; ++t) {
    unsigned seed = 52000u + static_cast<unsigned>(t);
    std::mt19937 rng(seed);
    int m = static_cast<int>(rand_int(rng, 1, 3));
    int n = static_cast<int>(rand_int(rng, 1, 3));
    std::vector<std::string> pool1, pool2;
    for (int i = 0; i < m; ++i) pool1.push_back("A" + std::to_string(i + 1));
    pool1.push_back("K");
    pool2.push_back("K");
    for (int i = 0; i < n; ++i) pool2.push_back("B" + std::to_string(i + 1));

    auto r1 = random_edges(rng, pool1, 1, 4, "a");
    if (!touches_name(r1, "K"))
      force_touch(rng, r1, pool1, m, rand_int(rng, 0, 1) == 1, "af");
    auto r2 = random_edges(rng, pool2, 1, 4, "b");
    if (!touches_name(r2, "K"))
      force_touch(rng, r2, pool2, 0, rand_int(rng, 0, 1) == 1, "bf");

    Network n1 = build_network(pool1, r1);
    Network n2 = build_network(pool2, r2);
    Network joint = network_union(n1, n2);
    for (const auto& sp : joint.species) {
      ProjectionComparison cmp = compare_projections(n1, n2, {sp});
      bool ok = cmp.op1.equality_holds && cmp.op2.equality_holds;
      if (!ok) dump_instance("glue_species", seed, n1, n2);
      if (!ok)
        FAIL("restriction equality failed, seed ", seed, ", eliminating ", sp,
             ": ", n1.text(), " / ", n2.text());
    }
    ++instances;
  }
  CHECK(instances == 100);
}

TEST_CASE(
    "property: one shared reaction with endpoints owned by opposite "
    "operands keeps every eliminated restriction exact") {
  int instances = 0;
  for (int t = 0; t < 100; ++t) {
    unsigned seed = 61000u + static_cast<unsigned>(t);
    std::mt19937 rng(seed);
    int m = static_cast<int>(rand_int(rng, 0, 2));
    int n = static_cast<int>(rand_int(rng, 0, 2));
    bool reversible = rand_int(rng, 0, 1) == 1;

    std::vector<std::string> left, right;  // P's side / Q's side
    for (int i = 0; i < m; ++i) left.push_back("A" + std::to_string(i + 1));
    left.push_back("P");
    right.push_back("Q");
    for (int i = 0; i < n; ++i) right.push_back("B" + std::to_string(i + 1));

    auto r1 = random_edges(rng, left, 0, 3, "a");
    r1.push_back({{{"P", 1}}, {{"Q", 1}}, "s"});
    if (reversible) r1.push_back({{{"Q", 1}}, {{"P", 1}}, "sr"});
    auto r2 = random_edges(rng, right, 0, 3, "b");
    r2.push_back({{{"P", 1}}, {{"Q", 1}}, "s"});
    if (reversible) r2.push_back({{{"Q", 1}}, {{"P", 1}}, "sr"});

    std::vector<std::string> pool1 = left, pool2 = right;
    pool1.push_back("Q");
    pool2.push_back("P");
    Network n1 = build_network(pool1, r1);
    Network n2 = build_network(pool2, r2);
    NamedReaction shared{{{"P", 1}}, {{"Q", 1}}, "s"};

    Network joint = network_union(n1, n2);
    for (const auto& sp : joint.species) {
      bool ok = check_shared_reaction_equality(n1, n2, shared, {sp});
      if (!ok) dump_instance("shared_reaction", seed, n1, n2);
      if (!ok)
        FAIL("restriction equality failed, seed ", seed, ", eliminating ", sp,
             ": ", n1.text(), " / ", n2.text());
    }
    ++instances;
  }
  CHECK(instances == 100);
}

TEST_CASE(
    "property: one-way flow through the glue species splits every "
    "eliminated ideal into the operands' sum") {
  int instances = 0;
  for (int t = 0; t < 100; ++t) {
    unsigned seed = 73000u + static_cast<unsigned>(t);
    std::mt19937 rng(seed);
    int m = static_cast<int>(rand_int(rng, 1, 3));
    int n = static_cast<int>(rand_int(rng, 1, 3));
    bool forward = rand_int(rng, 0, 1) == 1;  // producers in operand 1?

    std::vector<std::string> pool1, pool2;
    for (int i = 0; i < m; ++i) pool1.push_back("A" + std::to_string(i + 1));
    pool1.push_back("K");
    pool2.push_back("K");
    for (int i = 0; i < n; ++i) pool2.push_back("B" + std::to_string(i + 1));
    int k1 = m, k2 = 0;  // K's index in each pool

    std::vector<NamedReaction> r1, r2;
    if (forward) {
      r1 = random_edges(rng, pool1, 1, 4, "a", /*ban_reactant=*/k1, -1);
      if (!touches_name(r1, "K")) force_touch(rng, r1, pool1, k1, true, "af");
      r2 = random_edges(rng, pool2, 1, 4, "b", -1, /*ban_product=*/k2);
      if (!touches_name(r2, "K")) force_touch(rng, r2, pool2, k2, false, "bf");
    } else {
      r1 = random_edges(rng, pool1, 1, 4, "a", -1, /*ban_product=*/k1);
      if (!touches_name(r1, "K")) force_touch(rng, r1, pool1, k1, false, "af");
      r2 = random_edges(rng, pool2, 1, 4, "b", /*ban_reactant=*/k2, -1);
      if (!touches_name(r2, "K")) force_touch(rng, r2, pool2, k2, true, "bf");
    }

    Network n1 = build_network(pool1, r1);
    Network n2 = build_network(pool2, r2);
    Network joint = network_union(n1, n2);
    for (const auto& sp : joint.species) {
      bool ok = check_glue_sum_decomposition(n1, n2, "K", {sp});
      if (!ok) dump_instance("glue_sum", seed, n1, n2);
      if (!ok)
        FAIL("sum decomposition failed, seed ", seed, ", eliminating ", sp,
             ": ", n1.text(), " / ", n2.text());
    }

    // Independent check: fraction-free cross-combinations that cancel a
    // random concentration must land in the eliminated ideal.
    if (t % 10 == 0) {
      Ideal in = steady_state_ideal(joint);
      const std::string& sp =
          joint.species[rand_int(rng, 0, joint.species.size() - 1)];
      int xi = in.ring.index_of(conc_name(sp));
      REQUIRE(xi >= 0);
      Ideal ine = eliminate(in, {xi});
      for (const Poly& row : cross_elimination_rows(in, xi))
        CHECK(ideal_membership(row, ine));
    }
    ++instances;
  }
  CHECK(instances == 100);
}
