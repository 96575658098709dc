#include "crn/net.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "crn/error.hpp"

namespace crn {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return s != "output";  // reserved directive word
}

}  // namespace

int Network::species_index(const std::string& name) const {
  for (size_t i = 0; i < species.size(); ++i)
    if (species[i] == name) return static_cast<int>(i);
  return -1;
}

NamedComplex Network::named(const Complex& c) const {
  NamedComplex out;
  for (auto& [idx, coeff] : c.parts) out[species[idx]] = coeff;
  return out;
}

bool Network::has_complex(const NamedComplex& c) const {
  for (const Complex& own : complexes)
    if (named(own) == c) return true;
  return false;
}

int Network::reaction_index(const NamedComplex& reactant,
                            const NamedComplex& product) const {
  for (size_t i = 0; i < reactions.size(); ++i)
    if (named(reactions[i].reactant) == reactant &&
        named(reactions[i].product) == product)
      return static_cast<int>(i);
  return -1;
}

bool Network::is_monomolecular() const {
  for (const Complex& c : complexes)
    if (!c.is_zero() && !c.is_single_species()) return false;
  return true;
}

bool Network::has_zero_complex() const {
  for (const Complex& c : complexes)
    if (c.is_zero()) return true;
  return false;
}

std::string Network::complex_text(const Complex& c) const {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [idx, coeff] : c.parts) {
    if (!first) os << " + ";
    first = false;
    if (coeff != 1) os << coeff;
    os << species[idx];
  }
  return os.str();
}

std::string Network::text() const {
  std::ostringstream os;
  for (size_t i = 0; i < reactions.size(); ++i) {
    if (i) os << "\n";
    os << complex_text(reactions[i].reactant) << " -> "
       << complex_text(reactions[i].product) << " [" << reactions[i].label
       << "]";
  }
  return os.str();
}

bool Model::is_input(int sp) const {
  return std::find(inputs.begin(), inputs.end(), sp) != inputs.end();
}
bool Model::is_output(int sp) const {
  return std::find(outputs.begin(), outputs.end(), sp) != outputs.end();
}

Network build_network(const std::vector<std::string>& species_hint,
                      const std::vector<NamedReaction>& reactions,
                      bool allow_empty) {
  // which species are actually used
  std::set<std::string> used;
  for (const auto& r : reactions) {
    for (auto& [s, c] : r.reactant) used.insert(s);
    for (auto& [s, c] : r.product) used.insert(s);
  }
  Network net;
  std::set<std::string> hinted;
  for (const auto& s : species_hint) {
    if (hinted.count(s)) continue;  // tolerate duplicated hints
    hinted.insert(s);
    if (!used.count(s)) continue;   // prune orphaned species
    if (!valid_identifier(s))
      fail(ErrorCode::Precondition, "bad species name '" + s + "'");
    net.species.push_back(s);
  }
  for (const auto& s : used)
    if (!hinted.count(s))
      fail(ErrorCode::Internal, "species '" + s + "' missing from hint");

  auto resolve = [&](const NamedComplex& nc) {
    Complex c;
    for (auto& [s, coeff] : nc) {
      if (coeff < 1)
        fail(ErrorCode::Precondition,
             "complex coefficient must be >= 1 for species '" + s + "'");
      c.parts[net.species_index(s)] = coeff;
    }
    return c;
  };

  std::set<std::string> labels;
  std::set<std::pair<Complex, Complex>> pairs;
  std::map<Complex, int> complex_index;
  auto note_complex = [&](const Complex& c) {
    if (complex_index.emplace(c, static_cast<int>(net.complexes.size())).second)
      net.complexes.push_back(c);
  };
  for (const auto& r : reactions) {
    Complex reac = resolve(r.reactant);
    Complex prod = resolve(r.product);
    if (reac == prod)
      fail(ErrorCode::Precondition,
           "self-loop reaction '" + net.complex_text(reac) + " -> " +
               net.complex_text(prod) + "'");
    if (!pairs.emplace(reac, prod).second)
      fail(ErrorCode::Precondition,
           "duplicate reaction '" + net.complex_text(reac) + " -> " +
               net.complex_text(prod) + "'");
    if (!valid_identifier(r.label))
      fail(ErrorCode::Precondition, "bad rate label '" + r.label + "'");
    if (!labels.insert(r.label).second)
      fail(ErrorCode::Precondition,
           "rate label '" + r.label + "' used by two reactions");
    note_complex(reac);
    note_complex(prod);
    net.reactions.push_back({std::move(reac), std::move(prod), r.label});
  }
  if (!allow_empty && net.species.empty())
    fail(ErrorCode::Precondition, "network has no species");
  return net;
}

Model make_model(Network net, const std::vector<std::string>& output_names) {
  Model m;
  m.net = std::move(net);
  for (const auto& name : output_names) {
    int idx = m.net.species_index(name);
    if (idx < 0)
      fail(ErrorCode::Precondition, "output species '" + name +
                                        "' not in the network");
    if (!m.is_output(idx)) m.outputs.push_back(idx);
  }
  std::sort(m.outputs.begin(), m.outputs.end());
  if (m.outputs.empty())
    fail(ErrorCode::Precondition, "model needs at least one output species");
  // input species are exactly those with an inflow 0 -> X; an inflow feeding
  // a composite complex does not designate an input species
  for (const Reaction& r : m.net.reactions)
    if (r.reactant.is_zero() && r.product.is_single_species()) {
      int sp = r.product.parts.begin()->first;
      if (!m.is_input(sp)) m.inputs.push_back(sp);
    }
  std::sort(m.inputs.begin(), m.inputs.end());
  return m;
}

// ---- DSL parser ---------------------------------------------------------------

namespace {

struct Token {
  enum Kind { Number, Name, Arrow, BiArrow, Plus, Comma, LBrack, RBrack, Sep,
              End } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : s_(src) { next(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    next();
    return t;
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::Parse, "parse error at line " + std::to_string(tok_.line) +
                               ", col " + std::to_string(tok_.col) + ": " +
                               msg);
  }

 private:
  void next() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        continue;
      }
      if (c == '\n') break;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
        ++col_;
        continue;
      }
      break;
    }
    tok_.line = line_;
    tok_.col = col_;
    if (i_ >= s_.size()) {
      tok_.kind = Token::End;
      tok_.text = "<end>";
      return;
    }
    char c = s_[i_];
    auto single = [&](Token::Kind k, const char* t) {
      tok_.kind = k;
      tok_.text = t;
      ++i_;
      ++col_;
    };
    if (c == '\n') {
      tok_.kind = Token::Sep;
      tok_.text = "<newline>";
      ++i_;
      ++line_;
      col_ = 1;
      return;
    }
    if (c == ';') return single(Token::Sep, ";");
    if (c == '+') return single(Token::Plus, "+");
    if (c == ',') return single(Token::Comma, ",");
    if (c == '[') return single(Token::LBrack, "[");
    if (c == ']') return single(Token::RBrack, "]");
    if (c == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
      tok_.kind = Token::Arrow;
      tok_.text = "->";
      i_ += 2;
      col_ += 2;
      return;
    }
    if (c == '<' && i_ + 2 < s_.size() && s_[i_ + 1] == '-' &&
        s_[i_ + 2] == '>') {
      tok_.kind = Token::BiArrow;
      tok_.text = "<->";
      i_ += 3;
      col_ += 3;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t b = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
        ++col_;
      }
      tok_.kind = Token::Number;
      tok_.text = s_.substr(b, i_ - b);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t b = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                                s_[i_] == '_')) {
        ++i_;
        ++col_;
      }
      tok_.kind = Token::Name;
      tok_.text = s_.substr(b, i_ - b);
      return;
    }
    tok_.kind = Token::End;
    tok_.text = std::string(1, c);
    fail(ErrorCode::Parse, "parse error at line " + std::to_string(line_) +
                               ", col " + std::to_string(col_) +
                               ": unexpected character '" + tok_.text + "'");
  }

  const std::string& s_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

NamedComplex parse_complex(Lexer& lx) {
  NamedComplex out;
  // zero complex: a bare "0"
  if (lx.peek().kind == Token::Number && lx.peek().text == "0") {
    Token zero = lx.take();
    if (lx.peek().kind == Token::Name || lx.peek().kind == Token::Plus) {
      (void)zero;
      lx.error("the zero complex '0' cannot be combined with species");
    }
    return out;
  }
  while (true) {
    int coeff = 1;
    if (lx.peek().kind == Token::Number) {
      coeff = std::stoi(lx.take().text);
      if (coeff < 1) lx.error("complex coefficient must be >= 1");
    }
    if (lx.peek().kind != Token::Name)
      lx.error("expected a species name, got '" + lx.peek().text + "'");
    std::string name = lx.take().text;
    if (name == "output") lx.error("'output' is a reserved word");
    out[name] += coeff;
    if (lx.peek().kind == Token::Plus) {
      lx.take();
      continue;
    }
    break;
  }
  return out;
}

}  // namespace

ParsedCrn parse_crn(const std::string& text) {
  Lexer lx(text);
  std::vector<std::string> hint;
  std::set<std::string> seen;
  auto note = [&](const NamedComplex& c) {
    for (auto& [s, coeff] : c)
      if (seen.insert(s).second) hint.push_back(s);
  };
  std::vector<NamedReaction> reactions;
  std::vector<std::string> outputs;
  while (true) {
    while (lx.peek().kind == Token::Sep) lx.take();
    if (lx.peek().kind == Token::End) break;
    if (lx.peek().kind == Token::Name && lx.peek().text == "output") {
      lx.take();
      while (true) {
        if (lx.peek().kind != Token::Name)
          lx.error("expected a species name after 'output'");
        outputs.push_back(lx.take().text);
        if (lx.peek().kind == Token::Comma) {
          lx.take();
          continue;
        }
        break;
      }
    } else {
      NamedComplex lhs = parse_complex(lx);
      Token arrow = lx.peek();
      if (arrow.kind != Token::Arrow && arrow.kind != Token::BiArrow)
        lx.error("expected '->' or '<->', got '" + arrow.text + "'");
      lx.take();
      NamedComplex rhs = parse_complex(lx);
      if (lx.peek().kind != Token::LBrack)
        lx.error("expected '[label]' after the reaction");
      lx.take();
      if (lx.peek().kind != Token::Name) lx.error("expected a rate label");
      std::string fwd = lx.take().text;
      std::string rev;
      if (arrow.kind == Token::BiArrow) {
        if (lx.peek().kind != Token::Comma)
          lx.error("reversible reaction needs two labels '[fwd,rev]'");
        lx.take();
        if (lx.peek().kind != Token::Name) lx.error("expected a rate label");
        rev = lx.take().text;
      }
      if (lx.peek().kind != Token::RBrack) lx.error("expected ']'");
      lx.take();
      note(lhs);
      note(rhs);
      reactions.push_back({lhs, rhs, fwd});
      if (arrow.kind == Token::BiArrow) reactions.push_back({rhs, lhs, rev});
    }
    if (lx.peek().kind == Token::Sep) {
      lx.take();
      continue;
    }
    if (lx.peek().kind == Token::End) break;
    lx.error("expected ';' or a newline, got '" + lx.peek().text + "'");
  }
  if (reactions.empty()) fail(ErrorCode::Parse, "no reactions in input");
  ParsedCrn out;
  out.net = build_network(hint, reactions);
  out.output_names = std::move(outputs);
  return out;
}

Network parse_network(const std::string& text) { return parse_crn(text).net; }

Model parse_model(const std::string& text) {
  ParsedCrn p = parse_crn(text);
  if (p.output_names.empty())
    fail(ErrorCode::Precondition,
         "model requires an 'output X' directive in the input");
  return make_model(std::move(p.net), p.output_names);
}

// ---- classification -------------------------------------------------------------

std::string to_string(GlueKind k) {
  switch (k) {
    case GlueKind::SpeciesDisjoint: return "species-disjoint";
    case GlueKind::ComplexDisjoint: return "complex-disjoint";
    case GlueKind::OverComplexes: return "glued-over-complexes";
    case GlueKind::OverReactions: return "glued-over-reactions";
  }
  return "?";
}

GlueInfo classify_glue(const Network& a, const Network& b) {
  GlueInfo info;
  for (const auto& s : a.species)
    if (b.has_species(s)) info.shared_species.push_back(s);
  for (const Complex& c : a.complexes) {
    if (c.is_zero()) continue;
    NamedComplex nc = a.named(c);
    if (b.has_complex(nc)) info.shared_nonzero_complexes.push_back(nc);
  }
  for (const Reaction& r : a.reactions) {
    NamedComplex reac = a.named(r.reactant), prod = a.named(r.product);
    if (b.reaction_index(reac, prod) >= 0)
      info.shared_reactions.push_back({reac, prod});
  }
  if (info.shared_species.empty())
    info.kind = GlueKind::SpeciesDisjoint;
  else if (info.shared_nonzero_complexes.empty())
    info.kind = GlueKind::ComplexDisjoint;
  else if (info.shared_reactions.empty())
    info.kind = GlueKind::OverComplexes;
  else
    info.kind = GlueKind::OverReactions;
  return info;
}

// ---- composition ----------------------------------------------------------------

namespace {

std::vector<NamedReaction> named_reactions(const Network& n) {
  std::vector<NamedReaction> out;
  for (const Reaction& r : n.reactions)
    out.push_back({n.named(r.reactant), n.named(r.product), r.label});
  return out;
}

std::vector<std::string> union_hint(const Network& a, const Network& b) {
  std::vector<std::string> hint = a.species;
  for (const auto& s : b.species)
    if (!a.has_species(s)) hint.push_back(s);
  return hint;
}

std::vector<NamedReaction> union_reactions(const Network& a,
                                           const Network& b) {
  std::vector<NamedReaction> out = named_reactions(a);
  std::set<std::string> a_labels;
  for (const auto& r : out) a_labels.insert(r.label);
  for (const Reaction& rb : b.reactions) {
    NamedComplex reac = b.named(rb.reactant), prod = b.named(rb.product);
    int shared = a.reaction_index(reac, prod);
    if (shared >= 0) {
      if (a.reactions[shared].label != rb.label)
        fail(ErrorCode::Precondition,
             "shared reaction '" + b.complex_text(rb.reactant) + " -> " +
                 b.complex_text(rb.product) + "' has two labels ('" +
                 a.reactions[shared].label + "' vs '" + rb.label + "')");
      continue;  // one copy, one rate constant
    }
    if (a_labels.count(rb.label))
      fail(ErrorCode::Precondition, "rate label '" + rb.label +
                                        "' names two different reactions");
    out.push_back({std::move(reac), std::move(prod), rb.label});
  }
  return out;
}

}  // namespace

Network network_union(const Network& a, const Network& b) {
  return build_network(union_hint(a, b), union_reactions(a, b));
}

Network join_by_new_reaction(const Network& a, const Network& b,
                             const NamedComplex& y, const NamedComplex& yp,
                             const std::string& label) {
  if (!a.has_complex(y))
    fail(ErrorCode::Precondition,
         "join: the source complex must belong to the first network");
  if (!b.has_complex(yp))
    fail(ErrorCode::Precondition,
         "join: the target complex must belong to the second network");
  if (y == yp)
    fail(ErrorCode::Precondition, "join: source and target complexes coincide");
  if (a.reaction_index(y, yp) >= 0 || b.reaction_index(y, yp) >= 0)
    fail(ErrorCode::Precondition, "join: the new reaction already exists");
  auto reactions = union_reactions(a, b);
  std::string use = label;
  if (use.empty()) {
    std::set<std::string> used;
    for (const auto& r : reactions) used.insert(r.label);
    std::string base = "k_join";
    use = base;
    int suffix = 2;
    while (used.count(use)) use = base + "_" + std::to_string(suffix++);
  }
  reactions.push_back({y, yp, use});
  return build_network(union_hint(a, b), reactions);
}

Network join_replacing(const Network& a, const Network& b,
                       const std::vector<NamedReaction>& removed,
                       const std::vector<NamedReaction>& added) {
  auto reactions = union_reactions(a, b);
  for (const auto& rm : removed) {
    bool found = false;
    for (size_t i = 0; i < reactions.size(); ++i) {
      if (reactions[i].reactant != rm.reactant ||
          reactions[i].product != rm.product)
        continue;
      if (!rm.label.empty() && rm.label != reactions[i].label)
        fail(ErrorCode::Precondition,
             "replace: label mismatch for removed reaction (have '" +
                 reactions[i].label + "', asked for '" + rm.label + "')");
      reactions.erase(reactions.begin() + static_cast<long>(i));
      found = true;
      break;
    }
    if (!found)
      fail(ErrorCode::Precondition,
           "replace: reaction to remove is not present in the union");
  }
  for (const auto& ad : added) {
    if (a.reaction_index(ad.reactant, ad.product) >= 0 ||
        b.reaction_index(ad.reactant, ad.product) >= 0)
      fail(ErrorCode::Precondition,
           "replace: added reaction already belongs to an operand");
    if (!a.has_complex(ad.reactant))
      fail(ErrorCode::Precondition,
           "replace: added reactant must be a complex of the first operand");
    if (!b.has_complex(ad.product))
      fail(ErrorCode::Precondition,
           "replace: added product must be a complex of the second operand");
    reactions.push_back(ad);
  }
  return build_network(union_hint(a, b), reactions);
}

Model join_one_way_flow(const Model& m1, const Model& m2,
                        const OneWayFlowSpec& spec) {
  const Network& n1 = m1.net;
  const Network& n2 = m2.net;
  if (spec.scenario < 1 || spec.scenario > 4)
    fail(ErrorCode::Precondition, "one-way flow: scenario must be 1..4");
  if (spec.flows.empty())
    fail(ErrorCode::Precondition, "one-way flow: need at least one species pair");
  if (!classify_glue(n1, n2).shared_species.empty())
    fail(ErrorCode::Precondition,
         "one-way flow: operand species sets must be disjoint");

  std::set<std::string> used_labels;
  for (const Reaction& r : n1.reactions) used_labels.insert(r.label);
  for (const Reaction& r : n2.reactions) used_labels.insert(r.label);
  auto fresh_label = [&](size_t k, const std::string& xi,
                         const std::string& xj) {
    if (k < spec.fresh_labels.size() && !spec.fresh_labels[k].empty()) {
      if (!used_labels.insert(spec.fresh_labels[k]).second)
        fail(ErrorCode::Precondition, "one-way flow: label '" +
                                          spec.fresh_labels[k] +
                                          "' is already in use");
      return spec.fresh_labels[k];
    }
    std::string base = "k_" + xi + "_" + xj, cand = base;
    int suffix = 2;
    while (!used_labels.insert(cand).second)
      cand = base + "_" + std::to_string(suffix++);
    return cand;
  };

  std::vector<NamedReaction> removed, added;
  std::set<NamedComplex> inflows_removed;
  for (size_t k = 0; k < spec.flows.size(); ++k) {
    const auto& [xi, xj] = spec.flows[k];
    if (n1.species_index(xi) < 0)
      fail(ErrorCode::Precondition,
           "one-way flow: species '" + xi + "' not in the first model");
    if (n2.species_index(xj) < 0)
      fail(ErrorCode::Precondition,
           "one-way flow: species '" + xj + "' not in the second model");
    NamedComplex ci{{xi, 1}}, cj{{xj, 1}}, zero;

    std::string label;
    if (spec.scenario == 1 || spec.scenario == 2) {
      int out_idx = n1.reaction_index(ci, zero);
      if (out_idx < 0)
        fail(ErrorCode::Hypothesis,
             "one-way flow: first model lacks the outflow '" + xi + " -> 0'");
      label = n1.reactions[out_idx].label;  // the replaced outflow keeps its rate
      removed.push_back({ci, zero, label});
    } else {
      label = fresh_label(k, xi, xj);
    }
    if (spec.scenario == 1 || spec.scenario == 4) {
      if (n2.reaction_index(zero, cj) < 0)
        fail(ErrorCode::Hypothesis,
             "one-way flow: second model lacks the inflow '0 -> " + xj + "'");
      if (inflows_removed.insert(cj).second) removed.push_back({zero, cj, ""});
    }
    added.push_back({ci, cj, label});
  }

  auto reactions = union_reactions(n1, n2);
  for (const auto& rm : removed) {
    for (size_t i = 0; i < reactions.size(); ++i)
      if (reactions[i].reactant == rm.reactant &&
          reactions[i].product == rm.product) {
        reactions.erase(reactions.begin() + static_cast<long>(i));
        break;
      }
  }
  for (const auto& ad : added) reactions.push_back(ad);
  Network joined = build_network(union_hint(n1, n2), reactions);

  std::vector<std::string> outputs;
  for (int o : m1.outputs) outputs.push_back(n1.species[o]);
  for (int o : m2.outputs) outputs.push_back(n2.species[o]);
  return make_model(std::move(joined), outputs);
}

// ---- structural queries ------------------------------------------------------------

Network non_flow_subnetwork(const Network& n) {
  std::vector<NamedReaction> kept;
  for (const Reaction& r : n.reactions)
    if (!r.reactant.is_zero() && !r.product.is_zero())
      kept.push_back({n.named(r.reactant), n.named(r.product), r.label});
  return build_network(n.species, kept, /*allow_empty=*/true);
}

std::vector<std::vector<int>> species_digraph(const Network& n) {
  if (!n.is_monomolecular())
    fail(ErrorCode::Precondition,
         "species digraph requires a monomolecular network");
  std::vector<std::vector<int>> adj(n.species.size());
  for (const Reaction& r : n.reactions) {
    if (r.reactant.is_zero() || r.product.is_zero()) continue;
    adj[r.reactant.parts.begin()->first].push_back(
        r.product.parts.begin()->first);
  }
  return adj;
}

namespace {

std::vector<char> reach_from(const std::vector<std::vector<int>>& adj,
                             std::vector<int> seeds) {
  std::vector<char> vis(adj.size(), 0);
  std::deque<int> q;
  for (int s : seeds) {
    if (!vis[s]) {
      vis[s] = 1;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (!vis[w]) {
        vis[w] = 1;
        q.push_back(w);
      }
  }
  return vis;
}

std::vector<std::vector<int>> reversed(const std::vector<std::vector<int>>& adj) {
  std::vector<std::vector<int>> rev(adj.size());
  for (size_t v = 0; v < adj.size(); ++v)
    for (int w : adj[v]) rev[w].push_back(static_cast<int>(v));
  return rev;
}

}  // namespace

bool is_strongly_connected(const Network& n) {
  // strong connectivity is assessed on the non-flow subnetwork, whose
  // species set may be smaller than n's (isolated species are pruned)
  Network core = non_flow_subnetwork(n);
  if (core.species.size() <= 1) return true;
  auto adj = species_digraph(core);
  auto fwd = reach_from(adj, {0});
  auto bwd = reach_from(reversed(adj), {0});
  for (size_t v = 0; v < adj.size(); ++v)
    if (!fwd[v] || !bwd[v]) return false;
  return true;
}

bool is_output_connectable(const Model& m) {
  auto adj = species_digraph(m.net);
  auto vis = reach_from(reversed(adj), m.outputs);
  for (size_t v = 0; v < adj.size(); ++v)
    if (!vis[v]) return false;
  return true;
}

std::vector<int> output_reachable_set(const Network& n, int out_species) {
  if (out_species < 0 || out_species >= static_cast<int>(n.species.size()))
    fail(ErrorCode::Precondition, "output species index out of range");
  auto vis = reach_from(reversed(species_digraph(n)), {out_species});
  std::vector<int> out;
  for (size_t v = 0; v < vis.size(); ++v)
    if (vis[v]) out.push_back(static_cast<int>(v));
  return out;
}

}  // namespace crn
