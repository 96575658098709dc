// Command-line front end: parses reaction networks and linear compartmental
// models, runs the library's analyses, and emits deterministic text or JSON
// reports.  Exit codes: 0 success, 2 theorem-hypothesis / not-applicable
// outcomes, 1 all other errors.  Timings go to stderr so stdout is
// byte-stable for fixed inputs, seed, and version.
#include <chrono>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "crn/error.hpp"
#include "crn/ideal.hpp"
#include "crn/invariants.hpp"
#include "crn/lincomp.hpp"
#include "crn/massaction.hpp"
#include "crn/mss.hpp"
#include "crn/net.hpp"
#include "crn/poly.hpp"
#include "crn/rational.hpp"
#include "json.hpp"

using nlohmann::ordered_json;
using namespace crn;

namespace {

constexpr int kSchemaVersion = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Precondition, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string basename_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::Hypothesis: return "Hypothesis";
    case ErrorCode::Budget: return "Budget";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

// Step/degree budget for basis computations, overridable per process.
Budget budget_from_env() {
  Budget b;
  if (const char* s = std::getenv("CRN_MAX_REDUCTION_STEPS"))
    b.max_reduction_steps = std::atol(s);
  if (const char* s = std::getenv("CRN_MAX_TOTAL_DEGREE"))
    b.max_total_degree = static_cast<uint32_t>(std::atol(s));
  return b;
}

ordered_json budget_json(const Budget& b) {
  return {{"max_reduction_steps", b.max_reduction_steps},
          {"max_total_degree", b.max_total_degree}};
}

// One report per invocation: plain lines, or a JSON document with the same
// numeric content plus the request echo and diagnostics.
struct Report {
  bool json = false;
  std::vector<std::string> lines;
  ordered_json request = ordered_json::object();
  ordered_json result = ordered_json::object();
  ordered_json diagnostics;

  void line(const std::string& s) { lines.push_back(s); }
  void multiline(const std::string& s) {
    std::string cur;
    for (char c : s) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }

  void emit() const {
    if (json) {
      ordered_json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["request"] = request;
      doc["result"] = result;
      if (!diagnostics.is_null()) doc["diagnostics"] = diagnostics;
      std::fputs((doc.dump(2) + "\n").c_str(), stdout);
    } else {
      for (const auto& s : lines) std::fputs((s + "\n").c_str(), stdout);
    }
  }
};

ordered_json echo_request(const std::string& sub,
                          const std::vector<std::string>& inputs,
                          ordered_json options) {
  ordered_json req;
  req["subcommand"] = sub;
  ordered_json in = ordered_json::array();
  for (const auto& p : inputs) in.push_back(basename_of(p));
  req["inputs"] = in;
  req["options"] = std::move(options);
  return req;
}

std::string join_names(const std::vector<std::string>& names) {
  if (names.empty()) return "(none)";
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

std::string named_complex_text(const NamedComplex& c) {
  if (c.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [name, coeff] : c) {
    if (!first) out += " + ";
    first = false;
    if (coeff != 1) out += std::to_string(coeff);
    out += name;
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "A -> B [k]" (exactly one reaction) as a name-keyed reaction.
NamedReaction parse_reaction_text(const std::string& text) {
  Network tmp = parse_network(text);
  if (tmp.reactions.size() != 1)
    fail(ErrorCode::Precondition,
         "expected exactly one reaction, got '" + text + "'");
  return {tmp.named(tmp.reactions[0].reactant),
          tmp.named(tmp.reactions[0].product), tmp.reactions[0].label};
}

// "label=value,label=value" with exact rational values ("3", "-3/2").
RateAssignment parse_kappa(const std::string& s) {
  RateAssignment out;
  for (const std::string& item : split_csv(s)) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      fail(ErrorCode::Precondition,
           "rate assignments must look like label=value, got '" + item + "'");
    out[item.substr(0, eq)] = rat_from_string(item.substr(eq + 1));
  }
  return out;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  for (const std::string& item : split_csv(s)) out.push_back(rat_from_string(item));
  return out;
}

std::string decimal(const Rat& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", to_double(v));
  return buf;
}

std::string state_coords_text(const std::vector<Rat>& x) {
  std::string out = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += decimal(x[i]);
  }
  return out + ")";
}

std::string state_text(const WitnessState& s) {
  std::string out = "x = " + state_coords_text(s.x);
  out += s.exact ? "; exact" : "; approx";
  out += s.nondegenerate ? "; nondegenerate" : "; degenerate";
  out += s.exp_stable ? "; exp-stable" : "; not-exp-stable";
  return out;
}

ordered_json state_json(const WitnessState& s) {
  ordered_json st;
  ordered_json xs = ordered_json::array();
  ordered_json ds = ordered_json::array();
  for (const Rat& c : s.x) {
    xs.push_back(to_string(c));
    ds.push_back(decimal(c));
  }
  st["x"] = xs;
  st["x_decimal"] = ds;
  st["exact"] = s.exact;
  st["nondegenerate"] = s.nondegenerate;
  st["exp_stable"] = s.exp_stable;
  return st;
}

ordered_json witness_to_json(const SteadyStateWitness& w) {
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  ordered_json kk = ordered_json::object();
  for (const auto& [l, v] : w.kappa) kk[l] = to_string(v);
  out["kappa"] = kk;
  ordered_json anchor = ordered_json::array();
  for (const Rat& a : w.class_anchor) anchor.push_back(to_string(a));
  out["class_anchor"] = anchor;
  out["continuum"] = w.continuum;
  ordered_json states = ordered_json::array();
  for (const WitnessState& s : w.states) {
    ordered_json st;
    ordered_json xs = ordered_json::array();
    for (const Rat& c : s.x) xs.push_back(to_string(c));
    st["x"] = xs;
    st["exact"] = s.exact;
    st["nondegenerate"] = s.nondegenerate;
    st["exp_stable"] = s.exp_stable;
    states.push_back(st);
  }
  out["states"] = states;
  return out;
}

SteadyStateWitness witness_from_json(const std::string& text,
                                     const std::string& path) {
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::Precondition, "witness file '" + path + "': " + why);
  };
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("not valid JSON");
  if (!j.is_object()) bad("top level must be an object");
  SteadyStateWitness w;
  if (!j.contains("kappa") || !j["kappa"].is_object())
    bad("missing 'kappa' object");
  for (const auto& [label, v] : j["kappa"].items()) {
    if (!v.is_string()) bad("rate '" + label + "' must be a rational string");
    w.kappa[label] = rat_from_string(v.get<std::string>());
  }
  if (j.contains("class_anchor")) {
    if (!j["class_anchor"].is_array()) bad("'class_anchor' must be an array");
    for (const auto& v : j["class_anchor"]) {
      if (!v.is_string()) bad("anchor entries must be rational strings");
      w.class_anchor.push_back(rat_from_string(v.get<std::string>()));
    }
  }
  w.continuum = j.value("continuum", false);
  if (!j.contains("states") || !j["states"].is_array())
    bad("missing 'states' array");
  for (const auto& sj : j["states"]) {
    if (!sj.is_object() || !sj.contains("x") || !sj["x"].is_array())
      bad("each state needs an 'x' array");
    WitnessState s;
    for (const auto& v : sj["x"]) {
      if (!v.is_string()) bad("state coordinates must be rational strings");
      s.x.push_back(rat_from_string(v.get<std::string>()));
    }
    s.exact = sj.value("exact", false);
    s.nondegenerate = sj.value("nondegenerate", false);
    s.exp_stable = sj.value("exp_stable", false);
    w.states.push_back(std::move(s));
  }
  return w;
}

// ---- subcommand handlers ----------------------------------------------------

struct ParseOpts {
  std::string file;
};

int run_parse(const ParseOpts& o, Report& rep) {
  ParsedCrn pc = parse_crn(read_file(o.file));
  const Network& n = pc.net;
  rep.request = echo_request("parse", {o.file}, ordered_json::object());
  rep.multiline(n.text());
  rep.line("species: " + join_names(n.species));
  rep.line("complexes: " + std::to_string(n.complexes.size()));
  rep.line("reactions: " + std::to_string(n.reactions.size()));
  rep.line(std::string("monomolecular: ") + (n.is_monomolecular() ? "yes" : "no"));
  rep.line(std::string("zero complex: ") + (n.has_zero_complex() ? "yes" : "no"));
  if (!pc.output_names.empty())
    rep.line("outputs: " + join_names(pc.output_names));

  rep.result["text"] = n.text();
  rep.result["species"] = n.species;
  rep.result["complex_count"] = n.complexes.size();
  rep.result["reaction_count"] = n.reactions.size();
  rep.result["monomolecular"] = n.is_monomolecular();
  rep.result["has_zero_complex"] = n.has_zero_complex();
  rep.result["outputs"] = pc.output_names;
  rep.emit();
  return 0;
}

struct OdeOpts {
  std::string file;
};

int run_ode(const OdeOpts& o, Report& rep) {
  Network n = parse_crn(read_file(o.file)).net;
  MassActionSystem sys = mass_action_system(n);
  rep.request = echo_request("ode", {o.file}, ordered_json::object());
  ordered_json eqs = ordered_json::array();
  for (size_t i = 0; i < n.species.size(); ++i) {
    std::string lhs = conc_name(n.species[i]) + "'";
    rep.line(lhs + " = " + sys.polys[i].text());
    ordered_json e;
    e["species"] = n.species[i];
    e["lhs"] = lhs;
    e["rhs"] = sys.polys[i].text();
    eqs.push_back(e);
  }
  std::vector<std::string> vars;
  for (int i = 0; i < sys.ring.size(); ++i) vars.push_back(sys.ring.var(i).name);
  rep.result["ring"] = vars;
  rep.result["equations"] = eqs;
  rep.emit();
  return 0;
}

struct GlueOpts {
  std::string file1, file2;
};

int run_glue(const GlueOpts& o, Report& rep) {
  Network n1 = parse_crn(read_file(o.file1)).net;
  Network n2 = parse_crn(read_file(o.file2)).net;
  GlueInfo g = classify_glue(n1, n2);
  rep.request = echo_request("glue", {o.file1, o.file2}, ordered_json::object());
  rep.line("kind: " + to_string(g.kind));
  rep.line("shared species: " + join_names(g.shared_species));
  std::vector<std::string> cx;
  for (const auto& c : g.shared_nonzero_complexes)
    cx.push_back(named_complex_text(c));
  rep.line("shared nonzero complexes: " + join_names(cx));
  std::vector<std::string> rx;
  for (const auto& [y, yp] : g.shared_reactions)
    rx.push_back(named_complex_text(y) + " -> " + named_complex_text(yp));
  rep.line("shared reactions: " + join_names(rx));

  rep.result["kind"] = to_string(g.kind);
  rep.result["shared_species"] = g.shared_species;
  rep.result["shared_nonzero_complexes"] = cx;
  rep.result["shared_reactions"] = rx;
  rep.emit();
  return 0;
}

struct JoinOpts {
  std::string file1, file2;
  std::vector<std::string> flows;  // "X2:X3"
  int scenario = 1;
  std::vector<std::string> fresh_labels;
  std::string new_reaction;  // "Y -> Yp [lab]"
};

int run_join(const JoinOpts& o, Report& rep) {
  ordered_json options = ordered_json::object();
  if (!o.flows.empty()) {
    options["scenario"] = o.scenario;
    options["flows"] = o.flows;
    if (!o.fresh_labels.empty()) options["fresh_labels"] = o.fresh_labels;
  }
  if (!o.new_reaction.empty()) options["new_reaction"] = o.new_reaction;
  rep.request = echo_request("join", {o.file1, o.file2}, options);

  if (!o.flows.empty()) {
    ParsedCrn p1 = parse_crn(read_file(o.file1));
    ParsedCrn p2 = parse_crn(read_file(o.file2));
    Model m1 = make_model(p1.net, p1.output_names);
    Model m2 = make_model(p2.net, p2.output_names);
    OneWayFlowSpec spec;
    spec.scenario = o.scenario;
    spec.fresh_labels = o.fresh_labels;
    for (const std::string& f : o.flows) {
      auto colon = f.find(':');
      if (colon == std::string::npos)
        fail(ErrorCode::Precondition,
             "flows must look like UPSTREAM:DOWNSTREAM, got '" + f + "'");
      spec.flows.push_back({f.substr(0, colon), f.substr(colon + 1)});
    }
    Model r = join_one_way_flow(m1, m2, spec);
    rep.multiline(r.net.text());
    std::vector<std::string> ins, outs;
    for (int sp : r.inputs) ins.push_back(r.net.species[sp]);
    for (int sp : r.outputs) outs.push_back(r.net.species[sp]);
    rep.line("inputs: " + join_names(ins));
    rep.line("outputs: " + join_names(outs));
    rep.result["text"] = r.net.text();
    rep.result["species"] = r.net.species;
    rep.result["inputs"] = ins;
    rep.result["outputs"] = outs;
    rep.emit();
    return 0;
  }

  Network n1 = parse_crn(read_file(o.file1)).net;
  Network n2 = parse_crn(read_file(o.file2)).net;
  Network r;
  if (!o.new_reaction.empty()) {
    NamedReaction nr = parse_reaction_text(o.new_reaction);
    r = join_by_new_reaction(n1, n2, nr.reactant, nr.product, nr.label);
  } else {
    r = network_union(n1, n2);
  }
  rep.multiline(r.text());
  rep.line("kind: " + to_string(classify_glue(n1, n2).kind));
  rep.result["text"] = r.text();
  rep.result["species"] = r.species;
  rep.result["kind"] = to_string(classify_glue(n1, n2).kind);
  rep.emit();
  return 0;
}

struct IoEqOpts {
  std::string file;
  std::string output;
};

int run_ioeq(const IoEqOpts& o, Report& rep) {
  Model m = parse_model(read_file(o.file));
  LinearModel lm = linear_model(m);
  int pos = lm.position(o.output);
  if (pos < 0 || !lm.is_output(pos))
    fail(ErrorCode::Precondition, "'" + o.output + "' is not an output");
  IOEquation eq = io_equation(lm, pos);
  rep.request = echo_request("io-eq", {o.file}, {{"output", o.output}});
  rep.line(io_equation_text(eq));
  rep.line("restriction: " + join_names(eq.vh));
  rep.result["output"] = o.output;
  rep.result["restriction"] = eq.vh;
  rep.result["equation"] = io_equation_text(eq);
  rep.emit();
  return 0;
}

struct IdentOpts {
  std::string file;
  unsigned seed = 0;
};

int run_ident(const IdentOpts& o, Report& rep) {
  Model m = parse_model(read_file(o.file));
  LinearModel lm = linear_model(m);
  IdentVerdict v = global_identifiability(lm, o.seed);
  rep.request = echo_request("identifiability", {o.file},
                             {{"seed", o.seed}});
  rep.line("verdict: " + to_string(v.kind));
  rep.line("jacobian rank: " + std::to_string(v.rank) + " of " +
           std::to_string(v.r) + " parameters (" + std::to_string(v.T) +
           " coefficients)");
  rep.line("points sampled: " + std::to_string(v.points));
  if (v.fiber >= 0) rep.line("fiber solutions: " + std::to_string(v.fiber));
  if (!v.note.empty()) rep.line("note: " + v.note);
  rep.result["kind"] = to_string(v.kind);
  rep.result["rank"] = v.rank;
  rep.result["parameters"] = v.r;
  rep.result["coefficients"] = v.T;
  rep.result["points"] = v.points;
  rep.result["fiber"] = v.fiber;
  if (!v.note.empty()) rep.result["note"] = v.note;
  rep.diagnostics = ordered_json{{"seed", v.seed}};
  rep.emit();
  return 0;
}

struct ObserveOpts {
  std::string file;
  std::string output;  // empty: the model's first output
};

int run_observe(const ObserveOpts& o, Report& rep) {
  Model m = parse_model(read_file(o.file));
  LinearModel lm = linear_model(m);
  int pos;
  if (o.output.empty()) {
    if (lm.outputs.empty())
      fail(ErrorCode::Precondition, "model declares no output");
    pos = lm.outputs.front();
  } else {
    pos = lm.position(o.output);
    if (pos < 0 || !lm.is_output(pos))
      fail(ErrorCode::Precondition, "'" + o.output + "' is not an output");
  }
  Observability ob = observability_equations(lm, pos);
  rep.request = echo_request(
      "observe", {o.file},
      {{"output", o.output.empty() ? lm.comp[pos] : o.output}});
  ordered_json exprs = ordered_json::array();
  for (const auto& [name, expr] : ob.exprs) {
    rep.line(name + " = " + expr.text());
    ordered_json e;
    e["compartment"] = name;
    e["expression"] = expr.text();
    exprs.push_back(e);
  }
  rep.line("det B = " + ob.det_b.text());
  rep.result["output"] = lm.comp[pos];
  rep.result["expressions"] = exprs;
  rep.result["det_b"] = ob.det_b.text();
  rep.emit();
  return 0;
}

struct InvOpts {
  std::string file1, file2;
  std::string eliminate;  // CSV species names
  std::string glue_at;
  std::string shared_reaction;
};

int run_invariants(const InvOpts& o, Report& rep) {
  Network n1 = parse_crn(read_file(o.file1)).net;
  Network n2 = parse_crn(read_file(o.file2)).net;
  std::vector<std::string> elim = split_csv(o.eliminate);
  Budget budget = budget_from_env();
  ordered_json options = ordered_json::object();
  if (!elim.empty()) options["eliminate"] = elim;
  if (!o.glue_at.empty()) options["glue_at"] = o.glue_at;
  if (!o.shared_reaction.empty())
    options["shared_reaction"] = o.shared_reaction;
  rep.request = echo_request("invariants", {o.file1, o.file2}, options);
  rep.diagnostics = ordered_json{{"budget", budget_json(budget)}};

  if (!o.glue_at.empty()) {
    bool holds =
        check_glue_sum_decomposition(n1, n2, o.glue_at, elim, budget);
    rep.line("glue species: " + o.glue_at);
    rep.line("eliminated: " + join_names(elim));
    rep.line(std::string("sum decomposition: ") +
             (holds ? "holds" : "does not hold"));
    rep.result["mode"] = "glue-sum";
    rep.result["glue_species"] = o.glue_at;
    rep.result["eliminated"] = elim;
    rep.result["holds"] = holds;
    rep.emit();
    return 0;
  }
  if (!o.shared_reaction.empty()) {
    NamedReaction nr = parse_reaction_text(o.shared_reaction);
    bool holds = check_shared_reaction_equality(n1, n2, nr, elim, budget);
    rep.line("shared reaction: " + named_complex_text(nr.reactant) + " -> " +
             named_complex_text(nr.product));
    rep.line("eliminated: " + join_names(elim));
    rep.line(std::string("restriction equality: ") +
             (holds ? "holds" : "does not hold"));
    rep.result["mode"] = "shared-reaction";
    rep.result["eliminated"] = elim;
    rep.result["holds"] = holds;
    rep.emit();
    return 0;
  }

  ProjectionComparison c = compare_projections(n1, n2, elim, budget);
  rep.line("glue kind: " + to_string(c.glue.kind));
  rep.line("eliminated: " + join_names(elim));
  ordered_json ops = ordered_json::array();
  for (const ComparisonReport* r : {&c.op1, &c.op2}) {
    std::string text = "operand " + std::to_string(r->target) + ": ";
    text += r->containment_holds ? "containment holds" : "CONTAINMENT VIOLATED";
    text += "; ";
    if (r->equality_holds) {
      text += "equality holds";
    } else {
      text += "equality strict";
      if (r->witness) text += "; witness: " + r->witness->text();
    }
    rep.line(text);
    ordered_json op;
    op["target"] = r->target;
    op["containment_holds"] = r->containment_holds;
    op["equality_holds"] = r->equality_holds;
    if (r->witness) op["witness"] = r->witness->text();
    ops.push_back(op);
  }
  rep.result["mode"] = "compare";
  rep.result["glue_kind"] = to_string(c.glue.kind);
  rep.result["eliminated"] = elim;
  rep.result["operands"] = ops;
  rep.emit();
  return 0;
}

struct ElimOpts {
  std::string file;
  std::string eliminate;  // CSV species names
  bool full = false;
};

int run_elim(const ElimOpts& o, Report& rep) {
  Network n = parse_crn(read_file(o.file)).net;
  std::vector<std::string> elim = split_csv(o.eliminate);
  Budget budget = budget_from_env();
  ordered_json options = ordered_json::object();
  if (!elim.empty()) options["eliminate"] = elim;
  if (o.full) options["full"] = true;
  rep.request = echo_request("elim", {o.file}, options);
  rep.diagnostics = ordered_json{{"budget", budget_json(budget)}};

  Ideal ideal = o.full ? steady_state_ideal_full(n) : steady_state_ideal(n);
  MassActionSystem sys = mass_action_system(n);
  std::vector<int> drop;
  for (const std::string& name : elim) {
    int idx = n.species_index(name);
    if (idx < 0)
      fail(ErrorCode::Precondition,
           "species '" + name + "' is not in the network");
    drop.push_back(sys.conc_var[idx]);
  }
  Ideal result = drop.empty() ? ideal : eliminate(ideal, drop, budget);
  std::vector<std::string> gens = ideal_canonical_text(result, budget);

  std::vector<std::string> vars;
  for (int i = 0; i < sys.ring.size(); ++i)
    vars.push_back(sys.ring.var(i).name);
  rep.line("ring: " + join_names(vars));
  rep.line("eliminated: " + join_names(elim));
  rep.line("generators (" + std::to_string(gens.size()) + "):");
  for (const std::string& g : gens) rep.line("  " + g);
  rep.result["ring"] = vars;
  rep.result["eliminated"] = elim;
  rep.result["generators"] = gens;
  rep.emit();
  return 0;
}

struct MssOpts {
  std::string file;
  std::string verify_path;
  std::string kappa;
  std::string anchor;
  std::string witness_out;
  bool prove_mono = false;
  int budget = 100;
  unsigned seed = 0;
  int target_count = 2;
  int newton_starts = 200;
};

void append_witness_report(const SteadyStateWitness& w, Report& rep) {
  rep.line("kappa:");
  ordered_json kk = ordered_json::object();
  for (const auto& [l, v] : w.kappa) {
    rep.line("  " + l + " = " + to_string(v));
    kk[l] = to_string(v);
  }
  if (w.class_anchor.empty()) {
    rep.line("class anchor: (none; the class constraint is vacuous)");
  } else {
    rep.line("class anchor: " + state_coords_text(w.class_anchor));
  }
  rep.line("states (" + std::to_string(w.states.size()) + "):");
  ordered_json states = ordered_json::array();
  for (const WitnessState& s : w.states) {
    rep.line("  " + state_text(s));
    states.push_back(state_json(s));
  }
  ordered_json anchors = ordered_json::array();
  for (const Rat& a : w.class_anchor) anchors.push_back(to_string(a));
  rep.result["kappa"] = kk;
  rep.result["class_anchor"] = anchors;
  rep.result["continuum"] = w.continuum;
  rep.result["states"] = states;
}

void write_witness_file(const SteadyStateWitness& w, const std::string& path,
                        Report& rep) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Precondition, "cannot write '" + path + "'");
  out << witness_to_json(w).dump(2) << "\n";
  rep.line("witness written: " + path);
}

int run_mss(const MssOpts& o, Report& rep) {
  ParsedCrn pc = parse_crn(read_file(o.file));
  const Network& n = pc.net;

  if (!o.verify_path.empty()) {
    SteadyStateWitness w =
        witness_from_json(read_file(o.verify_path), o.verify_path);
    rep.request = echo_request(
        "mss", {o.file, o.verify_path},
        {{"mode", "verify"}});
    WitnessCheck chk = verify_witness(n, w);
    rep.line(std::string("verification: ") + (chk.ok ? "ok" : "failed"));
    if (!chk.ok) rep.line("detail: " + chk.detail);
    rep.line("states: " + std::to_string(w.states.size()));
    rep.line(std::string("continuum: ") + (w.continuum ? "yes" : "no"));
    if (chk.ok) rep.line("residual gate (1e-10): satisfied");
    rep.result["mode"] = "verify";
    rep.result["ok"] = chk.ok;
    if (!chk.ok) rep.result["detail"] = chk.detail;
    rep.result["states"] = w.states.size();
    rep.result["continuum"] = w.continuum;
    rep.emit();
    return chk.ok ? 0 : 1;
  }

  if (o.prove_mono) {
    rep.request = echo_request("mss", {o.file}, {{"mode", "prove-mono"}});
    MssVerdict v = monomolecular_mono_check(n);  // NotApplicable -> exit 2
    rep.line("verdict: ProvedMono");
    rep.line("reason: " + v.reason);
    rep.result["mode"] = "prove-mono";
    rep.result["kind"] = "ProvedMono";
    rep.result["reason"] = v.reason;
    rep.emit();
    return 0;
  }

  if (!o.kappa.empty()) {
    RateAssignment kappa = parse_kappa(o.kappa);
    std::vector<Rat> anchor = parse_rat_list(o.anchor);
    ordered_json options;
    options["mode"] = "enumerate";
    options["kappa"] = o.kappa;
    if (!o.anchor.empty()) options["anchor"] = o.anchor;
    options["seed"] = o.seed;
    rep.request = echo_request("mss", {o.file}, options);
    rep.diagnostics =
        ordered_json{{"seed", o.seed}, {"newton_starts", o.newton_starts}};

    StateSearch fs = enumerate_positive_steady_states(
        n, kappa, o.seed, o.newton_starts, anchor);
    rep.result["mode"] = "enumerate";
    if (n.species.size() == 1) {
      PositiveRoots pr = count_positive_steady_states(n, kappa);
      if (pr.identically_zero) {
        rep.line(
            "count: continuum (the steady-state polynomial vanishes "
            "identically); all positive concentrations are degenerate "
            "steady states");
        rep.result["count"] = "continuum";
      } else {
        rep.line("count: " + std::to_string(pr.distinct) +
                 " distinct positive steady states (" +
                 std::to_string(pr.with_multiplicity) +
                 " with multiplicity); exact");
        rep.result["count"] = pr.distinct;
        rep.result["count_with_multiplicity"] = pr.with_multiplicity;
      }
    } else {
      rep.line("count: " + std::to_string(fs.states.size()) +
               " positive steady states found (numeric evidence, not a "
               "completeness proof)");
      rep.result["count"] = fs.states.size();
    }
    SteadyStateWitness w;
    w.kappa = kappa;
    w.class_anchor = fs.class_anchor;
    w.states = fs.states;
    w.continuum = fs.continuum;
    append_witness_report(w, rep);
    if (!o.witness_out.empty()) write_witness_file(w, o.witness_out, rep);
    rep.emit();
    return 0;
  }

  // Rate-sampling search.
  MssSearchOptions opts;
  opts.kappa_samples = o.budget;
  opts.seed = o.seed;
  opts.target_count = o.target_count;
  opts.newton_starts = o.newton_starts;
  ordered_json options;
  options["mode"] = "search";
  options["budget"] = o.budget;
  options["seed"] = o.seed;
  options["target_count"] = o.target_count;
  options["newton_starts"] = o.newton_starts;
  rep.request = echo_request("mss", {o.file}, options);
  rep.diagnostics = ordered_json{{"seed", o.seed},
                                 {"kappa_samples", o.budget},
                                 {"newton_starts", o.newton_starts}};

  MssVerdict v = search_multistationarity(n, opts);
  const char* kind = v.kind == MssVerdict::Kind::MultistationaryWitness
                         ? "MultistationaryWitness"
                         : v.kind == MssVerdict::Kind::ProvedMono
                               ? "ProvedMono"
                               : "NoWitnessFound";
  rep.line(std::string("verdict: ") + kind);
  rep.line("reason: " + v.reason);
  rep.line("kappa samples used: " + std::to_string(v.kappa_samples));
  rep.result["mode"] = "search";
  rep.result["kind"] = kind;
  rep.result["reason"] = v.reason;
  rep.result["kappa_samples"] = v.kappa_samples;
  if (v.witness) {
    append_witness_report(*v.witness, rep);
    if (!o.witness_out.empty()) write_witness_file(*v.witness, o.witness_out, rep);
  }
  rep.emit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact analysis of chemical reaction networks and linear "
      "compartmental models"};
  app.require_subcommand(1);
  bool json = false;

  ParseOpts po;
  CLI::App* sub_parse = app.add_subcommand(
      "parse", "Parse a .crn file and report its canonical form");
  sub_parse->add_option("file", po.file, "network file")->required();
  sub_parse->add_flag("--json", json, "machine-readable report");

  OdeOpts oo;
  CLI::App* sub_ode =
      app.add_subcommand("ode", "Mass-action differential equations");
  sub_ode->add_option("file", oo.file, "network file")->required();
  sub_ode->add_flag("--json", json, "machine-readable report");

  GlueOpts go;
  CLI::App* sub_glue = app.add_subcommand(
      "glue", "Classify how two networks overlap");
  sub_glue->add_option("file1", go.file1, "first network")->required();
  sub_glue->add_option("file2", go.file2, "second network")->required();
  sub_glue->add_flag("--json", json, "machine-readable report");

  JoinOpts jo;
  CLI::App* sub_join = app.add_subcommand(
      "join", "Union or one-way-flow join of two networks");
  sub_join->add_option("file1", jo.file1, "first network")->required();
  sub_join->add_option("file2", jo.file2, "second network")->required();
  sub_join->add_option("--flow", jo.flows,
                       "UPSTREAM:DOWNSTREAM species pair (repeatable); "
                       "selects the one-way-flow join");
  sub_join->add_option("--scenario", jo.scenario,
                       "flow scenario 1-4 (default 1)");
  sub_join->add_option("--fresh-label", jo.fresh_labels,
                       "bridge label for scenarios 3/4 (repeatable)");
  sub_join->add_option("--new-reaction", jo.new_reaction,
                       "single reaction text joining the operands");
  sub_join->add_flag("--json", json, "machine-readable report");

  IoEqOpts io;
  CLI::App* sub_ioeq = app.add_subcommand(
      "io-eq", "Input-output equation of an observed compartment");
  sub_ioeq->add_option("file", io.file, "model file")->required();
  sub_ioeq->add_option("--output", io.output, "observed species")->required();
  sub_ioeq->add_flag("--json", json, "machine-readable report");

  IdentOpts id;
  CLI::App* sub_ident = app.add_subcommand(
      "identifiability", "Identifiability of the coefficient map");
  sub_ident->add_option("file", id.file, "model file")->required();
  sub_ident->add_option("--seed", id.seed, "sampling seed (default 0)");
  sub_ident->add_flag("--json", json, "machine-readable report");

  ObserveOpts ob;
  CLI::App* sub_obs = app.add_subcommand(
      "observe", "Algebraic observability equations");
  sub_obs->add_option("file", ob.file, "model file")->required();
  sub_obs->add_option("--output", ob.output,
                      "observed species (default: the first output)");
  sub_obs->add_flag("--json", json, "machine-readable report");

  InvOpts in;
  CLI::App* sub_inv = app.add_subcommand(
      "invariants", "Steady-state invariants of unions and gluings");
  sub_inv->add_option("file1", in.file1, "first operand")->required();
  sub_inv->add_option("file2", in.file2, "second operand")->required();
  sub_inv->add_option("--eliminate", in.eliminate,
                      "species to eliminate, comma-separated");
  sub_inv->add_option("--glue-at", in.glue_at,
                      "check the sum decomposition at this glue species");
  sub_inv->add_option("--shared-reaction", in.shared_reaction,
                      "check restriction equality over this shared reaction");
  sub_inv->add_flag("--json", json, "machine-readable report");

  ElimOpts el;
  CLI::App* sub_elim = app.add_subcommand(
      "elim", "Steady-state ideal and its elimination ideals");
  sub_elim->add_option("file", el.file, "network file")->required();
  sub_elim->add_option("--eliminate", el.eliminate,
                       "species to eliminate, comma-separated");
  sub_elim->add_flag("--full", el.full,
                     "keep the full generating set (no dependent-row drop)");
  sub_elim->add_flag("--json", json, "machine-readable report");

  MssOpts ms;
  CLI::App* sub_mss = app.add_subcommand(
      "mss", "Count, enumerate, or search positive steady states");
  sub_mss->add_option("file", ms.file, "network file")->required();
  sub_mss->add_option("--verify", ms.verify_path,
                      "verify a witness file against the network");
  sub_mss->add_option("--kappa", ms.kappa,
                      "exact rates label=value,... ; enumerate at these rates");
  sub_mss->add_option("--anchor", ms.anchor,
                      "compatibility-class anchor, comma-separated rationals");
  sub_mss->add_option("--witness-out", ms.witness_out,
                      "write the found witness to this file");
  sub_mss->add_flag("--prove-mono", ms.prove_mono,
                    "structural monostationarity shortcut for linear kinetics");
  sub_mss->add_option("--budget", ms.budget,
                      "rate samples for the search (default 100)");
  sub_mss->add_option("--seed", ms.seed, "sampling seed (default 0)");
  sub_mss->add_option("--target-count", ms.target_count,
                      "states required for a witness (default 2)");
  sub_mss->add_option("--newton-starts", ms.newton_starts,
                      "starts per rate sample (default 200)");
  sub_mss->add_flag("--json", json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = 1;
  try {
    Report rep;
    rep.json = json;
    if (sub_parse->parsed()) rc = run_parse(po, rep);
    else if (sub_ode->parsed()) rc = run_ode(oo, rep);
    else if (sub_glue->parsed()) rc = run_glue(go, rep);
    else if (sub_join->parsed()) rc = run_join(jo, rep);
    else if (sub_ioeq->parsed()) rc = run_ioeq(io, rep);
    else if (sub_ident->parsed()) rc = run_ident(id, rep);
    else if (sub_obs->parsed()) rc = run_observe(ob, rep);
    else if (sub_inv->parsed()) rc = run_invariants(in, rep);
    else if (sub_elim->parsed()) rc = run_elim(el, rep);
    else if (sub_mss->parsed()) rc = run_mss(ms, rep);
  } catch (const Error& e) {
    std::fprintf(stderr, "error[%s]: %s\n", code_name(e.code()), e.what());
    rc = (e.code() == ErrorCode::Hypothesis ||
          e.code() == ErrorCode::NotApplicable)
             ? 2
             : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error[Internal]: %s\n", e.what());
    rc = 1;
  }
  auto ms_elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  std::fprintf(stderr, "timing: %lld ms\n",
               static_cast<long long>(ms_elapsed));
  return rc;
}
