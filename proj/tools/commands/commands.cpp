#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "relim/analysis.hpp"
#include "relim/diagram.hpp"
#include "relim/family.hpp"
#include "relim/round_elim.hpp"
#include "relim/simulator.hpp"
#include "relim/text_format.hpp"

namespace relim::commands {

namespace {

// Argument access ----------------------------------------------------------

const Json& need(const Json& args, const char* key) {
  if (!args.is_object() || !args.contains(key)) {
    throw UsageError(std::string("missing argument '") + key + "'");
  }
  return args.at(key);
}

long long integer(const Json& args, const char* key) {
  const Json& v = need(args, key);
  if (!v.is_number_integer()) throw UsageError(std::string("argument '") + key + "' must be an integer");
  return v.get<long long>();
}

long long integer_or(const Json& args, const char* key, long long fallback) {
  return args.is_object() && args.contains(key) ? integer(args, key) : fallback;
}

int small_int(const Json& args, const char* key) {
  const long long v = integer(args, key);
  if (v < -1000000000LL || v > 1000000000LL) {
    throw UsageError(std::string("argument '") + key + "' out of range");
  }
  return static_cast<int>(v);
}

double number(const Json& args, const char* key) {
  const Json& v = need(args, key);
  if (!v.is_number()) throw UsageError(std::string("argument '") + key + "' must be a number");
  return v.get<double>();
}

std::string string_or(const Json& args, const char* key, const std::string& fallback) {
  if (!args.is_object() || !args.contains(key)) return fallback;
  const Json& v = args.at(key);
  if (!v.is_string()) throw UsageError(std::string("argument '") + key + "' must be a string");
  return v.get<std::string>();
}

bool flag(const Json& args, const char* key) {
  if (!args.is_object() || !args.contains(key)) return false;
  const Json& v = args.at(key);
  if (!v.is_boolean()) throw UsageError(std::string("argument '") + key + "' must be a boolean");
  return v.get<bool>();
}

Problem problem_arg(const Json& args, const char* key = "problem") {
  const Json& v = need(args, key);
  if (v.is_string()) return read_problem(v.get<std::string>());
  if (v.is_object()) return problem_from_json(v.contains("problem") ? v.at("problem") : v);
  throw UsageError(std::string("argument '") + key + "' must be problem text or a problem object");
}

FamilyParams params_arg(const Json& args) {
  return FamilyParams(small_int(args, "delta"), small_int(args, "a"), small_int(args, "x"));
}

LabeledTree tree_arg(const Json& args) {
  if (args.contains("tree")) {
    const Json& v = args.at("tree");
    if (v.is_string()) {
      Json parsed;
      try {
        parsed = Json::parse(v.get<std::string>());
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, 0, std::string("json: ") + e.what());
      }
      return tree_from_json(parsed.contains("tree") ? parsed.at("tree") : parsed);
    }
    return tree_from_json(v.contains("tree") ? v.at("tree") : v);
  }
  const int n = small_int(args, "n");
  const int delta = small_int(args, "delta");
  LabeledTree t = random_tree(n, delta, static_cast<std::uint64_t>(integer_or(args, "seed", 1)),
                              flag(args, "symmetric"));
  if (flag(args, "color") && !t.colored) t = proper_edge_coloring(t);
  return t;
}

Side side_arg(const Json& args, const char* fallback) {
  try {
    return parse_side(string_or(args, "side", fallback));
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

EnumerationOptions enumeration(const Json& args, const Context& ctx) {
  EnumerationOptions o;
  o.max_labels = static_cast<std::size_t>(integer_or(args, "max_labels", static_cast<long long>(o.max_labels)));
  o.max_configs = static_cast<std::size_t>(integer_or(args, "max_configs", static_cast<long long>(o.max_configs)));
  o.threads = static_cast<unsigned>(std::max(1LL, integer_or(args, "threads", ctx.threads)));
  o.cancel = ctx.cancel;
  o.progress = ctx.progress;
  return o;
}

// Rendering ------------------------------------------------------------------

std::string braces(const LabelSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + s[i];
  return out + "}";
}

std::string lifted_text(const LiftedProblem& l) {
  std::string out = serialize_problem(l.problem);
  out += "# set-labels:\n";
  for (const auto& [set, name] : l.renaming) out += "# " + name + " = " + braces(set) + "\n";
  return out;
}

std::string verdict_text(const Verdict& v) {
  std::string out = std::string("verdict: ") + (v.holds ? "holds" : "fails") + "\n";
  for (const auto& w : v.witness) out += "witness: " + w + "\n";
  if (!v.narrative.empty()) out += v.narrative + "\n";
  return out;
}

std::string diagram_text(const Diagram& d) {
  std::string out = "side: " + to_string(d.side()) + "\nlabels:";
  for (const auto& l : d.labels()) out += " " + l;
  out += "\n";
  for (const auto& c : d.classes()) {
    if (c.size() > 1) out += "class: " + braces(c) + "\n";
  }
  out += "edges:\n";
  for (const auto& [from, to] : d.edges()) out += from + " -> " + to + "\n";
  return out;
}

Json dictionary_json(const SetLabelDictionary& d) {
  Json out = Json::array();
  for (const auto& [set, name] : d) out.push_back({{"name", name}, {"members", set}});
  return out;
}

SetLabelDictionary dictionary_from(const Json& j) {
  const Json& list = j.is_object() && j.contains("dictionary") ? j.at("dictionary") : j;
  if (!list.is_array()) throw UsageError("a renaming must be a list of {name, members}");
  SetLabelDictionary out;
  for (const auto& e : list) {
    if (!e.is_object() || !e.contains("name") || !e.contains("members") || !e.at("name").is_string() ||
        !e.at("members").is_array()) {
      throw UsageError("renaming entries need a string 'name' and a 'members' list");
    }
    LabelSet members;
    for (const auto& m : e.at("members")) {
      if (!m.is_string()) throw UsageError("renaming members must be strings");
      members.push_back(m.get<std::string>());
    }
    out.emplace_back(make_label_set(std::move(members)), e.at("name").get<std::string>());
  }
  return out;
}

Output problem_output(const Problem& p) {
  return {to_json(p), serialize_problem(p), 0, std::nullopt};
}

Output lifted_output(LiftedProblem l, const Json& args) {
  if (args.contains("rename")) l = rename_lifted(l, dictionary_from(args.at("rename")));
  Output out{to_json(l), lifted_text(l), 0, l.stats};
  return out;
}

Output verdict_output(const Verdict& v) { return {to_json(v), verdict_text(v), v.holds ? 0 : 1, std::nullopt}; }

SetConfig set_config_arg(const Json& args, const char* key) {
  const Json& v = need(args, key);
  if (v.is_string()) return parse_config(v.get<std::string>());
  return config_from_json(v);
}

// Verbs ----------------------------------------------------------------------

Output cmd_parse(const Json& args, const Context&) { return problem_output(problem_arg(args)); }

Output cmd_serialize(const Json& args, const Context&) {
  const Problem p = problem_arg(args);
  const std::string text = serialize_problem(p);
  return {Json{{"text", text}}, text, 0, std::nullopt};
}

Output cmd_re(const Json& args, const Context& ctx) {
  return lifted_output(re(problem_arg(args), enumeration(args, ctx)), args);
}

Output cmd_rere(const Json& args, const Context& ctx) {
  return lifted_output(rere(problem_arg(args), enumeration(args, ctx)), args);
}

Output cmd_rename(const Json& args, const Context&) {
  const Json& l = need(args, "lifted");
  LiftedProblem lifted;
  if (l.is_string()) {
    Json parsed;
    try {
      parsed = Json::parse(l.get<std::string>());
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(0, 0, std::string("json: ") + e.what());
    }
    lifted = lifted_from_json(parsed);
  } else {
    lifted = lifted_from_json(l);
  }
  Json rename = need(args, "rename");
  if (rename.is_string()) rename = parse_rename(rename.get<std::string>());
  Json with = Json::object();
  with["rename"] = rename;
  return lifted_output(std::move(lifted), with);
}

Output cmd_diagram(const Json& args, const Context&) {
  const Diagram d = build_diagram(problem_arg(args), side_arg(args, "edge"));
  return {to_json(d), flag(args, "dot") ? to_dot(d) : diagram_text(d), 0, std::nullopt};
}

Output cmd_right_closed(const Json& args, const Context&) {
  const Side side = side_arg(args, "edge");
  const auto sets = right_closed_sets(build_diagram(problem_arg(args), side));
  Json list = Json::array();
  std::string text;
  for (const auto& s : sets) {
    list.push_back(s);
    text += braces(s) + "\n";
  }
  return {Json{{"side", to_string(side)}, {"sets", list}}, text, 0, std::nullopt};
}

Output cmd_relax(const Json& args, const Context&) {
  const SetConfig from = set_config_arg(args, "from");
  const SetConfig to = set_config_arg(args, "to");
  const auto r = relaxes_to(from, to);
  Json out{{"relaxes", r.has_value()}, {"from", from.to_string()}, {"to", to.to_string()}};
  out["witness"] = r ? Json(r->witness) : Json(nullptr);
  std::string text = from.to_string() + (r ? " relaxes to " : " does not relax to ") + to.to_string() + "\n";
  if (r) {
    text += "slots ->";
    for (int w : r->witness) text += " " + std::to_string(w);
    text += "\n";
  }
  return {out, text, r ? 0 : 1, std::nullopt};
}

Output cmd_speedup(const Json& args, const Context& ctx) {
  Problem source;
  LiftedProblem target;
  if (args.contains("family")) {
    const FamilyParams p = params_arg(args.at("family"));
    source = rename_lifted(re(make_family_problem(p), enumeration(args, ctx)), expected_re_dictionary()).problem;
    target = make_rel_problem(p);
  } else {
    source = problem_arg(args, "problem");
    const Json& t = need(args, "target");
    if (t.is_string()) {
      Json parsed;
      try {
        parsed = Json::parse(t.get<std::string>());
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, 0, std::string("json: ") + e.what());
      }
      target = lifted_from_json(parsed);
    } else {
      target = lifted_from_json(t);
    }
  }
  if (args.contains("drop")) {
    const Json& drop = args.at("drop");
    if (drop.is_string()) {
      target = drop_node_line(target, drop.get<std::string>());
    } else if (drop.is_array()) {
      for (const auto& l : drop) target = drop_node_line(target, l.get<std::string>());
    } else {
      throw UsageError("'drop' must be a label or a list of labels");
    }
  }
  return verdict_output(verify_speedup_target(source, target, enumeration(args, ctx)));
}

Output cmd_zero_round(const Json& args, const Context&) {
  return verdict_output(zero_round_solvable_symmetric(problem_arg(args)));
}

Output cmd_failure_bound(const Json& args, const Context&) {
  const FailureBound b = randomized_failure_bound(problem_arg(args));
  std::string text = b.narrative + "\n";
  if (b.derivable) {
    text += "bound: " + b.bound.str() + "\nthreshold: " + b.threshold.str() + "\nmeets threshold: " +
            (b.meets_threshold ? "yes" : "no") + "\n";
  }
  return {to_json(b), text, b.derivable ? 0 : 1, std::nullopt};
}

Output cmd_family(const Json& args, const Context&) { return problem_output(make_family_problem(params_arg(args))); }
Output cmd_plus(const Json& args, const Context&) { return problem_output(make_plus_problem(params_arg(args))); }
Output cmd_mis(const Json& args, const Context&) { return problem_output(make_mis_problem(small_int(args, "delta"))); }
Output cmd_expected_re(const Json& args, const Context&) {
  return problem_output(expected_re_problem(params_arg(args)));
}

Output cmd_rel(const Json& args, const Context&) {
  const LiftedProblem l = make_rel_problem(params_arg(args));
  return {to_json(l), lifted_text(l), 0, std::nullopt};
}

Output cmd_sequence(const Json& args, const Context&) {
  const SequenceCertificate c =
      build_sequence(small_int(args, "delta"), small_int(args, "x0"), number(args, "epsilon"));
  return {to_json(c), c.report(), c.valid ? 0 : 1, std::nullopt};
}

Output cmd_iso(const Json& args, const Context&) {
  const auto m = problems_isomorphic(problem_arg(args, "problem"), problem_arg(args, "other"));
  Json out{{"isomorphic", m.has_value()}};
  std::string text = m ? "isomorphic\n" : "not isomorphic\n";
  if (m) {
    Json map = Json::object();
    for (const auto& [from, to] : *m) {
      map[from] = to;
      text += from + " -> " + to + "\n";
    }
    out["map"] = map;
  } else {
    out["map"] = nullptr;
  }
  return {out, text, m ? 0 : 1, std::nullopt};
}

Output cmd_simplify(const Json& args, const Context&) {
  const Problem p = problem_arg(args);
  const std::string side = string_or(args, "side", "both");
  if (side != "both" && side != "node" && side != "nodes" && side != "edge" && side != "edges") {
    throw UsageError("side must be node, edge or both");
  }
  const bool nodes = side != "edge" && side != "edges";
  const bool edges = side != "node" && side != "nodes";
  Problem out(p.delta(), nodes ? simplify_subsumed(p.nodes()) : p.nodes(),
              edges ? simplify_subsumed(p.edges()) : p.edges(), p.note());
  return problem_output(out);
}

Output cmd_statement(const Json& args, const Context&) {
  const KodsStatement s = kods_problem_statement(small_int(args, "delta"), small_int(args, "k"));
  return {to_json(s), s.text + "\n", 0, std::nullopt};
}

Output cmd_tree(const Json& args, const Context&) {
  const LabeledTree t = tree_arg(args);
  return {to_json(t), tree_to_dot(t), 0, std::nullopt};
}

std::string report_line(const char* what, const LabelingReport& r) {
  return std::string(what) + ": " + (r.verdict.holds ? "valid" : "invalid") + " (" + r.verdict.narrative + ")\n";
}

Output cmd_simulate_kods(const Json& args, const Context&) {
  const LabeledTree t = tree_arg(args);
  const int k = small_int(args, "k");
  const DSolution s = greedy_kods(t, k);
  const Verdict v = check_kods(t, s, k);
  Json out{{"tree", to_json(t)}, {"solution", to_json(s)}, {"check", to_json(v)}};
  std::string text = "k-outdegree dominating set: " + std::string(v.holds ? "valid" : "invalid") + " (" +
                     v.narrative + ")\n";
  int code = v.holds ? 0 : 1;
  if (args.contains("a")) {
    const int a = small_int(args, "a");
    const LabeledTree labeled = kods_to_family_labeling(t, s, a, k);
    const LabelingReport r = check_labeling(labeled, make_family_problem({t.delta, a, k}));
    out["labeled"] = to_json(labeled);
    out["labeling_check"] = to_json(r);
    text += report_line("family labeling", r);
    if (!r.verdict.holds) code = 1;
  }
  return {out, text, code, std::nullopt};
}

Output cmd_simulate_transform(const Json& args, const Context&) {
  const LabeledTree t = tree_arg(args);
  const int a = small_int(args, "a");
  const int x = small_int(args, "x");
  const LabeledTree out_tree = plus_to_family_transform(t, a, x);
  const FamilyParams stepped(t.delta, (a - 2 * x - 1) / 2, x + 1);
  const LabelingReport r = check_labeling(out_tree, make_family_problem(stepped));
  Json out{{"tree", to_json(out_tree)}, {"target", to_json(stepped)}, {"check", to_json(r)}};
  return {out, report_line(("family " + stepped.to_string()).c_str(), r), r.verdict.holds ? 0 : 1, std::nullopt};
}

Output cmd_simulate_check(const Json& args, const Context&) {
  const LabelingReport r = check_labeling(tree_arg(args), problem_arg(args));
  std::string text = verdict_text(r.verdict);
  if (!r.exempt.empty()) text += "exempt nodes: " + std::to_string(r.exempt.size()) + "\n";
  return {to_json(r), text, r.verdict.holds ? 0 : 1, std::nullopt};
}

Output cmd_simulate_weaken(const Json& args, const Context&) {
  const LabeledTree t = tree_arg(args);
  const Json& from = need(args, "from");
  const Json& to = need(args, "to");
  const int a_from = small_int(from, "a"), x_from = small_int(from, "x");
  const int a = small_int(to, "a"), x = small_int(to, "x");
  const LabeledTree out_tree = weaken_labeling(t, a_from, x_from, a, x);
  const LabelingReport r = check_labeling(out_tree, make_family_problem({t.delta, a, x}));
  Json out{{"tree", to_json(out_tree)}, {"check", to_json(r)}};
  return {out, report_line("weakened labeling", r), r.verdict.holds ? 0 : 1, std::nullopt};
}

Output cmd_simulate_generate(const Json& args, const Context&) {
  const LabeledTree t = tree_arg(args);
  const auto labeled =
      generate_valid_labeling(t, problem_arg(args), static_cast<std::uint64_t>(integer_or(args, "seed", 1)));
  Json out{{"found", labeled.has_value()}, {"tree", labeled ? to_json(*labeled) : Json(nullptr)}};
  return {out, labeled ? tree_to_dot(*labeled) : "no valid labeling\n", labeled ? 0 : 1, std::nullopt};
}

using Handler = Output (*)(const Json&, const Context&);

const std::vector<std::pair<std::string, Handler>>& table() {
  static const std::vector<std::pair<std::string, Handler>> t = {
      {"parse", cmd_parse},
      {"serialize", cmd_serialize},
      {"re", cmd_re},
      {"rere", cmd_rere},
      {"rename", cmd_rename},
      {"diagram", cmd_diagram},
      {"right-closed-sets", cmd_right_closed},
      {"relax-check", cmd_relax},
      {"speedup-verify", cmd_speedup},
      {"zero-round", cmd_zero_round},
      {"failure-bound", cmd_failure_bound},
      {"family", cmd_family},
      {"plus", cmd_plus},
      {"mis", cmd_mis},
      {"expected-re", cmd_expected_re},
      {"rel", cmd_rel},
      {"sequence", cmd_sequence},
      {"iso", cmd_iso},
      {"simplify", cmd_simplify},
      {"statement", cmd_statement},
      {"tree", cmd_tree},
      {"simulate-kods", cmd_simulate_kods},
      {"simulate-transform", cmd_simulate_transform},
      {"simulate-check", cmd_simulate_check},
      {"simulate-weaken", cmd_simulate_weaken},
      {"simulate-generate", cmd_simulate_generate},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, h] : table()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_verb(const std::string& verb) {
  const auto& v = verbs();
  return std::find(v.begin(), v.end(), verb) != v.end();
}

Output run(const std::string& verb, const Json& args, const Context& context) {
  if (!args.is_object()) throw UsageError("arguments must be a JSON object");
  for (const auto& [name, handler] : table()) {
    if (name != verb) continue;
    try {
      return handler(args, context);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad argument: ") + e.what());
    }
  }
  throw UsageError("unknown verb '" + verb + "'");
}

Json parse_rename(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    try {
      const Json j = Json::parse(text);
      return dictionary_json(dictionary_from(j));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(0, 0, std::string("json: ") + e.what());
    }
  }
  SetLabelDictionary out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find(':');
    if (sep == std::string::npos) throw ParseError(number, 1, "expected 'NAME = L1 L2 ...'");
    std::istringstream name_in(line.substr(0, sep));
    std::string name;
    name_in >> name;
    if (!is_valid_label(name)) throw ParseError(number, 1, "invalid label '" + name + "'");
    std::string members_text = line.substr(sep + 1);
    for (char& c : members_text) {
      if (c == '{' || c == '}' || c == '[' || c == ']' || c == ',') c = ' ';
    }
    std::istringstream members_in(members_text);
    LabelSet members;
    for (std::string m; members_in >> m;) {
      if (!is_valid_label(m)) throw ParseError(number, sep + 2, "invalid label '" + m + "'");
      members.push_back(m);
    }
    if (members.empty()) throw ParseError(number, sep + 2, "empty member set");
    out.emplace_back(make_label_set(std::move(members)), name);
  }
  return dictionary_json(out);
}

}  // namespace relim::commands
