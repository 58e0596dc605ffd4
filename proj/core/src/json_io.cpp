#include "relim/json_io.hpp"

#include <algorithm>

#include "relim/errors.hpp"
#include "relim/text_format.hpp"

namespace relim {

namespace {

[[noreturn]] void bad(const std::string& message) { throw ParseError(0, 0, "json: " + message); }

const Json& field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) bad(std::string("missing field '") + key + "'");
  return json.at(key);
}

Json rational(const Rational& r) {
  Json j;
  j["exact"] = r.str();
  j["approx"] = r.convert_to<double>();
  return j;
}

Json checks(const std::vector<Check>& list) {
  Json out = Json::array();
  for (const auto& c : list) {
    out.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
  }
  return out;
}

}  // namespace

Json to_json(const CondensedConfig& config) {
  Json out = Json::array();
  for (const auto& item : config.items()) {
    out.push_back(Json::array({item.group.members, item.multiplicity}));
  }
  return out;
}

Json to_json(const Constraint& constraint) {
  Json out = Json::array();
  for (const auto& c : constraint.configs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const Problem& problem) {
  Json out;
  out["delta"] = problem.delta();
  out["nodes"] = to_json(problem.nodes());
  out["edges"] = to_json(problem.edges());
  if (!problem.note().empty()) out["note"] = problem.note();
  return out;
}

CondensedConfig config_from_json(const Json& json) {
  if (!json.is_array()) bad("a configuration must be an array of [group, multiplicity] items");
  std::vector<Item> items;
  for (const auto& item : json) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_array() ||
        !item[1].is_number_integer()) {
      bad("configuration items must be [[labels...], multiplicity]");
    }
    LabelSet members;
    for (const auto& l : item[0]) {
      if (!l.is_string() || !is_valid_label(l.get<std::string>())) {
        bad("invalid label " + l.dump());
      }
      members.push_back(l.get<std::string>());
    }
    if (members.empty()) bad("empty group");
    int mult = item[1].get<int>();
    if (mult <= 0) bad("multiplicities must be positive");
    items.push_back({Group(std::move(members)), mult});
  }
  return CondensedConfig(std::move(items));
}

namespace {

Constraint constraint_from_json(const Json& json, int arity, const char* what) {
  if (!json.is_array()) bad(std::string(what) + " must be an array");
  std::vector<CondensedConfig> configs;
  for (const auto& c : json) {
    auto config = config_from_json(c);
    if (config.arity() != arity) {
      bad(std::string(what) + " configuration '" + config.to_string() + "' has length " +
          std::to_string(config.arity()) + ", expected " + std::to_string(arity));
    }
    configs.push_back(std::move(config));
  }
  return Constraint(arity, std::move(configs));
}

Problem problem_from_json_unchecked(const Json& json) {
  const Json& d = field(json, "delta");
  if (!d.is_number_integer()) bad("delta must be an integer");
  const int delta = d.get<int>();
  if (delta < 2) bad("delta must be at least 2");
  std::string note;
  if (json.contains("note") && json.at("note").is_string()) note = json.at("note").get<std::string>();
  return Problem(delta, constraint_from_json(field(json, "nodes"), delta, "nodes"),
                 constraint_from_json(field(json, "edges"), 2, "edges"), note);
}

}  // namespace

Problem problem_from_json(const Json& json) {
  try {
    return problem_from_json_unchecked(json);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const SearchStats& stats) {
  Json out;
  out["candidates"] = stats.candidates;
  out["search_nodes"] = stats.search_nodes;
  out["good_configs"] = stats.good_configs;
  out["maximal_configs"] = stats.maximal_configs;
  out["set_labels"] = stats.set_labels;
  out["seconds"] = stats.seconds;
  return out;
}

Json to_json(const LiftedProblem& lifted) {
  Json out;
  out["transform"] = to_string(lifted.transform);
  out["problem"] = to_json(lifted.problem);
  out["text"] = serialize_problem(lifted.problem);
  Json dict = Json::array();
  for (const auto& [set, name] : lifted.renaming) {
    dict.push_back({{"name", name}, {"members", set}});
  }
  out["dictionary"] = dict;
  out["source"] = lifted.source;
  return out;
}

namespace {

LiftedProblem lifted_from_json_unchecked(const Json& json) {
  LiftedProblem out;
  out.problem = problem_from_json(field(json, "problem"));
  const Json& dict = field(json, "dictionary");
  if (!dict.is_array()) bad("dictionary must be an array");
  for (const auto& entry : dict) {
    const Json& members = field(entry, "members");
    if (!members.is_array()) bad("dictionary members must be an array");
    LabelSet set;
    for (const auto& m : members) {
      if (!m.is_string()) bad("dictionary members must be strings");
      set.push_back(m.get<std::string>());
    }
    const Json& name = field(entry, "name");
    if (!name.is_string()) bad("dictionary names must be strings");
    out.renaming.emplace_back(make_label_set(std::move(set)), name.get<std::string>());
  }
  std::sort(out.renaming.begin(), out.renaming.end(),
            [](const auto& l, const auto& r) { return set_less(l.first, r.first); });
  if (json.contains("transform")) {
    out.transform = json.at("transform") == "rere" ? Transform::rere : Transform::re;
  }
  if (json.contains("source") && json.at("source").is_string()) {
    out.source = json.at("source").get<std::string>();
  }
  return out;
}

}  // namespace

LiftedProblem lifted_from_json(const Json& json) {
  try {
    return lifted_from_json_unchecked(json);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const Diagram& diagram) {
  Json out;
  out["side"] = to_string(diagram.side());
  out["labels"] = diagram.labels();
  out["classes"] = diagram.classes();
  Json edges = Json::array();
  for (const auto& [from, to] : diagram.edges()) edges.push_back(Json::array({from, to}));
  out["edges"] = edges;
  out["ties"] = diagram.has_ties();
  return out;
}

Json to_json(const Verdict& verdict) {
  Json out;
  out["holds"] = verdict.holds;
  out["witness"] = verdict.witness;
  out["narrative"] = verdict.narrative;
  return out;
}

Json to_json(const Relaxation& r) {
  Json out;
  out["from"] = r.from.to_string();
  out["to"] = r.to.to_string();
  out["witness"] = r.witness;
  return out;
}

Json to_json(const FailureBound& b) {
  Json out;
  out["configurations"] = b.configurations;
  out["delta"] = b.delta;
  out["derivable"] = b.derivable;
  if (b.derivable) out["bound"] = rational(b.bound);
  out["threshold"] = rational(b.threshold);
  out["meets_threshold"] = b.meets_threshold;
  out["narrative"] = b.narrative;
  return out;
}

Json to_json(const FamilyParams& p) { return {{"delta", p.delta}, {"a", p.a}, {"x", p.x}}; }

Json to_json(const SequenceCertificate& c) {
  Json out;
  out["delta"] = c.delta;
  out["x0"] = c.x0;
  out["epsilon"] = c.epsilon;
  out["t"] = c.t;
  out["x0_guidance"] = {{"name", c.x0_guidance.name},
                        {"holds", c.x0_guidance.holds},
                        {"detail", c.x0_guidance.detail}};
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json step;
    step["index"] = s.index;
    step["params"] = to_json(s.params);
    step["stepped"] = s.stepped ? to_json(*s.stepped) : Json(nullptr);
    step["checks"] = checks(s.checks);
    step["ok"] = s.ok;
    steps.push_back(step);
  }
  out["steps"] = steps;
  out["final_zero_round"] = to_json(c.final_zero_round);
  out["valid"] = c.valid;
  out["statement"] = c.statement;
  return out;
}

Json to_json(const KodsStatement& s) {
  return {{"delta", s.delta}, {"k", s.k}, {"is_mis", s.is_mis}, {"trivial", s.trivial},
          {"text", s.text}};
}

Json to_json(const LabeledTree& t) {
  Json out;
  out["delta"] = t.delta;
  out["nodes"] = t.nodes;
  out["symmetric"] = t.symmetric;
  out["colored"] = t.colored;
  Json edges = Json::array();
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& edge = t.edges[e];
    Json j;
    j["u"] = edge.u;
    j["v"] = edge.v;
    j["port_u"] = edge.port_u;
    j["port_v"] = edge.port_v;
    if (t.colored) j["color"] = edge.color;
    if (t.labeled()) {
      j["label_u"] = t.labels[e][0];
      j["label_v"] = t.labels[e][1];
    }
    edges.push_back(j);
  }
  out["edges"] = edges;
  return out;
}

namespace {

LabeledTree tree_from_json_unchecked(const Json& json) {
  LabeledTree t;
  t.delta = field(json, "delta").get<int>();
  t.nodes = field(json, "nodes").get<int>();
  if (t.nodes < 1) bad("a tree needs at least one node");
  t.symmetric = json.value("symmetric", false);
  t.colored = json.value("colored", false);
  t.incident.assign(t.nodes, {});
  const Json& edges = field(json, "edges");
  if (!edges.is_array()) bad("edges must be an array");
  bool labeled = false;
  for (const auto& j : edges) {
    TreeEdge e;
    e.u = field(j, "u").get<int>();
    e.v = field(j, "v").get<int>();
    e.port_u = field(j, "port_u").get<int>();
    e.port_v = field(j, "port_v").get<int>();
    e.color = j.value("color", 0);
    if (e.u < 0 || e.u >= t.nodes || e.v < 0 || e.v >= t.nodes || e.u == e.v) {
      bad("edge endpoints out of range");
    }
    t.edges.push_back(e);
    const int id = static_cast<int>(t.edges.size()) - 1;
    t.incident[e.u].push_back(id);
    t.incident[e.v].push_back(id);
    labeled = labeled || j.contains("label_u");
  }
  if (labeled) {
    t.labels.assign(t.edges.size(), {});
    for (std::size_t i = 0; i < edges.size(); ++i) {
      t.labels[i][0] = edges[i].value("label_u", "");
      t.labels[i][1] = edges[i].value("label_v", "");
    }
  }
  for (int v = 0; v < t.nodes; ++v) {
    std::sort(t.incident[v].begin(), t.incident[v].end(),
              [&](int a, int b) { return t.port(a, v) < t.port(b, v); });
  }
  t.validate();
  return t;
}

}  // namespace

LabeledTree tree_from_json(const Json& json) {
  try {
    return tree_from_json_unchecked(json);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const DSolution& s) {
  Json in = Json::array();
  for (std::size_t v = 0; v < s.in_set.size(); ++v) {
    if (s.in_set[v]) in.push_back(v);
  }
  Json oriented = Json::array();
  for (std::size_t e = 0; e < s.tail.size(); ++e) {
    if (s.tail[e] >= 0) oriented.push_back({{"edge", e}, {"tail", s.tail[e]}});
  }
  return {{"in_set", in}, {"orientation", oriented}};
}

Json to_json(const LabelingReport& r) {
  Json out = to_json(r.verdict);
  out["exempt"] = r.exempt;
  return out;
}

Problem read_problem(std::string_view input) {
  auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && input[first] == '{') {
    Json json;
    try {
      json = Json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
      bad(e.what());
    }
    if (json.contains("problem")) return problem_from_json(json.at("problem"));
    return problem_from_json(json);
  }
  return parse_problem(input);
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace relim
