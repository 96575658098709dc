#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace crn {

// Formal nonnegative-integer combination of species; indices refer to the
// owning Network's species list.  Empty = the zero complex.
struct Complex {
  std::map<int, int> parts;  // species index -> coefficient >= 1

  bool is_zero() const { return parts.empty(); }
  bool is_single_species() const {
    return parts.size() == 1 && parts.begin()->second == 1;
  }
  int molecularity() const {
    int m = 0;
    for (auto& [s, c] : parts) m += c;
    return m;
  }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.parts == b.parts;
  }
  friend bool operator<(const Complex& a, const Complex& b) {
    return a.parts < b.parts;
  }
};

struct Reaction {
  Complex reactant;
  Complex product;
  std::string label;  // rate-constant name; unique within a network
};

// Species-name-keyed complex, for talking about complexes across networks.
using NamedComplex = std::map<std::string, int>;

struct Network {
  std::vector<std::string> species;   // order of first appearance
  std::vector<Complex> complexes;     // distinct, scan order over reactions
  std::vector<Reaction> reactions;

  int species_index(const std::string& name) const;
  bool has_species(const std::string& name) const {
    return species_index(name) >= 0;
  }
  NamedComplex named(const Complex& c) const;
  bool has_complex(const NamedComplex& c) const;
  // -1 when absent; matches by (reactant, product).
  int reaction_index(const NamedComplex& reactant,
                     const NamedComplex& product) const;

  bool is_monomolecular() const;  // every complex zero or a single species
  bool has_zero_complex() const;
  bool empty() const { return species.empty(); }

  std::string complex_text(const Complex& c) const;
  std::string text() const;  // canonical DSL, one reaction per line
};

// inputs are derived (species with an inflow 0 -> X); outputs are declared.
struct Model {
  Network net;
  std::vector<int> inputs;
  std::vector<int> outputs;

  bool is_input(int sp) const;
  bool is_output(int sp) const;
};

// ---- construction & validation ---------------------------------------------

struct NamedReaction {
  NamedComplex reactant;
  NamedComplex product;
  std::string label;
};

// Assembles a network from reactions.  Species order: `species_hint` order
// filtered to species actually used (the representation assumption prunes
// orphans); complexes in scan order.  Validates: identifiers, no self-loops,
// distinct (reactant, product) pairs, unique nonempty labels.
Network build_network(const std::vector<std::string>& species_hint,
                      const std::vector<NamedReaction>& reactions,
                      bool allow_empty = false);

Model make_model(Network net, const std::vector<std::string>& output_names);

// ---- DSL --------------------------------------------------------------------
// statement  := reaction | "output" NAME ("," NAME)*
// reaction   := complex "->" complex "[" NAME "]"
//             | complex "<->" complex "[" NAME "," NAME "]"
// complex    := "0" | term ("+" term)*      term := [INT] NAME
// Statements are separated by ";" or newlines; "#" starts a comment.
Network parse_network(const std::string& text);
Model parse_model(const std::string& text);  // requires an output directive
// Networks whose text has no output directive parse with empty outputs here:
struct ParsedCrn {
  Network net;
  std::vector<std::string> output_names;
};
ParsedCrn parse_crn(const std::string& text);

// ---- classification ----------------------------------------------------------

enum class GlueKind {
  SpeciesDisjoint,
  ComplexDisjoint,  // shared species but no shared nonzero complex
  OverComplexes,    // shared nonzero complex, no shared reaction
  OverReactions,    // shared reaction
};
std::string to_string(GlueKind k);

struct GlueInfo {
  GlueKind kind;
  std::vector<std::string> shared_species;
  std::vector<NamedComplex> shared_nonzero_complexes;
  std::vector<std::pair<NamedComplex, NamedComplex>> shared_reactions;
};
GlueInfo classify_glue(const Network& a, const Network& b);

// ---- the four composition operators -----------------------------------------

// Set-theoretic union; shared reactions must carry identical labels, and no
// label may name two different reactions.
Network network_union(const Network& a, const Network& b);

// Union plus one new reaction y -> yp with y a complex of `a`, yp a complex
// of `b`; the reaction must be genuinely new and the label fresh.
Network join_by_new_reaction(const Network& a, const Network& b,
                             const NamedComplex& y, const NamedComplex& yp,
                             const std::string& label);

// Union, minus `removed` (must exist in R1 u R2; matched by complexes, label
// checked when given), plus `added` (must be new; reactant complex from `a`,
// product complex from `b`).  Orphaned complexes/species are pruned.
Network join_replacing(const Network& a, const Network& b,
                       const std::vector<NamedReaction>& removed,
                       const std::vector<NamedReaction>& added);

// One-way flow join of species-disjoint models.  `flows` maps species of m1
// with an outflow to species of m2; the four scenarios decide what gets
// replaced:
//   1: drop {Xi -> 0} and {0 -> Xphi}, add Xi -> Xphi (keeps the outflow's label)
//   2: drop {Xi -> 0} only, add Xi -> Xphi (keeps the outflow's label)
//   3: drop nothing, add Xi -> Xphi (fresh label)
//   4: drop {0 -> Xphi} only, add Xi -> Xphi (fresh label)
// Inputs of the result are re-derived from the surviving inflows; outputs are
// the union of the operands' outputs.
struct OneWayFlowSpec {
  int scenario = 1;
  std::vector<std::pair<std::string, std::string>> flows;
  std::vector<std::string> fresh_labels;  // optional, scenarios 3/4
};
Model join_one_way_flow(const Model& m1, const Model& m2,
                        const OneWayFlowSpec& spec);

// ---- structural queries -------------------------------------------------------

// Removes the zero complex and every inflow/outflow reaction, pruning orphans.
// May legitimately return an empty network.
Network non_flow_subnetwork(const Network& n);

// Species digraph of a monomolecular network: edge X -> Y per reaction X -> Y
// (flow reactions contribute no edges).
std::vector<std::vector<int>> species_digraph(const Network& n);

// Strong connectivity of the species digraph of the non-flow subnetwork
// (species with only flow reactions are pruned first).  Empty and
// single-vertex graphs count as strongly connected.  Pre: monomolecular.
bool is_strongly_connected(const Network& n);

// Every species has a directed path (possibly empty) to some output.
// Pre: monomolecular non-flow part (flow reactions are ignored).
bool is_output_connectable(const Model& m);

// Species with a directed path to `out_species` (inclusive), ascending.
std::vector<int> output_reachable_set(const Network& n, int out_species);

}  // namespace crn
