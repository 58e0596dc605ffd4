// relim: command-line surface over the engine.
//
// Exit codes: 0 success, 1 the computed verdict is negative, 2 usage,
// parse, precondition or resource errors.

#include <CLI11.hpp>

#include <deque>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "commands.hpp"
#include "acceptance_checks.hpp"

namespace {

using relim::Json;
namespace commands = relim::commands;

std::string slurp(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw commands::UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  long long max_labels = 10000;
  long long max_configs = 100000;
};

// Each subcommand fills `args` from its options in a callback run after
// parsing; `verb` names the shared command.
struct Invocation {
  std::string verb;
  Json args = Json::object();
  std::function<void(Json&)> fill;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relim: round elimination engine and verification toolchain"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "Seed for random trees and labelings");
  app.add_option("--threads", g.threads, "Worker threads for enumeration")->check(CLI::Range(1u, 256u));
  app.add_option("--max-labels", g.max_labels, "Blow-up cap on set-labels")->check(CLI::PositiveNumber);
  app.add_option("--max-configs", g.max_configs, "Blow-up cap on configurations")->check(CLI::PositiveNumber);

  Invocation inv;
  // Option targets need stable addresses for the lifetime of the parse.
  std::deque<std::string> strings;
  std::deque<long long> ints;
  std::deque<double> doubles;
  std::deque<bool> bools;
  std::deque<std::vector<long long>> int_lists;
  std::deque<std::vector<std::string>> string_lists;
  auto str = [&](std::string init = {}) { return &strings.emplace_back(std::move(init)); };
  auto num = [&](long long init = 0) { return &ints.emplace_back(init); };

  // Problem file argument ("-" reads stdin).
  auto problem_input = [&](CLI::App* sub, const char* name = "problem", const char* key = "problem") {
    std::string* path = str("-");
    sub->add_option(name, *path, "Problem file (text or JSON), '-' for stdin");
    return [path, key](Json& args) { args[key] = slurp(*path); };
  };
  auto params_input = [&](CLI::App* sub) {
    long long* d = num();
    long long* a = num();
    long long* x = num();
    sub->add_option("--delta", *d, "Degree")->required();
    sub->add_option("-a", *a, "Owned-edge count")->required();
    sub->add_option("-x", *x, "Allowed outgoing edges")->required();
    return [d, a, x](Json& args) {
      args["delta"] = *d;
      args["a"] = *a;
      args["x"] = *x;
    };
  };
  auto tree_input = [&](CLI::App* sub) {
    std::string* path = str();
    long long* n = num(30);
    long long* delta = num(4);
    bool* symmetric = &bools.emplace_back(false);
    sub->add_option("--tree", *path, "Tree JSON file; otherwise a random tree is built");
    sub->add_option("-n,--nodes", *n, "Random tree size");
    sub->add_option("--delta", *delta, "Degree cap of the random tree");
    sub->add_flag("--symmetric", *symmetric, "Color the random tree and use colors as ports");
    return [path, n, delta, symmetric, &g](Json& args) {
      if (!path->empty()) {
        args["tree"] = slurp(*path);
      } else {
        args["n"] = *n;
        args["delta"] = *delta;
        args["symmetric"] = *symmetric;
        args["color"] = true;
      }
      args["seed"] = g.seed;
    };
  };
  auto add = [&](const std::string& name, const std::string& verb, const std::string& help,
                 std::vector<std::function<void(Json&)>>* fills) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&inv, verb, fills] {
      inv.verb = verb;
      inv.fill = [fills](Json& args) {
        for (auto& f : *fills) f(args);
      };
    });
    return sub;
  };
  std::vector<std::unique_ptr<std::vector<std::function<void(Json&)>>>> fill_lists;
  auto fills = [&]() {
    fill_lists.push_back(std::make_unique<std::vector<std::function<void(Json&)>>>());
    return fill_lists.back().get();
  };

  {
    auto f = fills();
    auto sub = add("parse", "parse", "Parse a problem and print it canonically", f);
    f->push_back(problem_input(sub));
  }
  {
    auto f = fills();
    auto sub = add("serialize", "serialize", "Canonical text of a problem (text or JSON input)", f);
    f->push_back(problem_input(sub));
  }
  for (const char* verb : {"re", "rere"}) {
    auto f = fills();
    auto sub = add(verb, verb,
                   std::string(verb) == "re" ? "Maximal edge set-configurations, node side lifted"
                                             : "Maximal node set-configurations, edge side lifted",
                   f);
    f->push_back(problem_input(sub));
    std::string* rename = str();
    sub->add_option("--rename-file", *rename, "Set-label names: 'NAME = L1 L2' lines or JSON");
    f->push_back([rename](Json& args) {
      if (!rename->empty()) args["rename"] = commands::parse_rename(slurp(*rename));
    });
  }
  {
    auto f = fills();
    auto sub = add("rename", "rename", "Rename the set-labels of a re or rere JSON result", f);
    std::string* lifted = str("-");
    std::string* rename = str();
    sub->add_option("lifted", *lifted, "Lifted problem JSON ('-' for stdin)");
    sub->add_option("--rename-file", *rename, "Set-label names: 'NAME = L1 L2' lines or JSON")->required();
    f->push_back([lifted, rename](Json& args) {
      args["lifted"] = slurp(*lifted);
      args["rename"] = commands::parse_rename(slurp(*rename));
    });
  }
  for (const auto& [name, verb, help] :
       std::vector<std::tuple<std::string, std::string, std::string>>{
           {"diagram", "diagram", "Hasse diagram of the strength relation"},
           {"right-closed", "right-closed-sets", "Right-closed label sets of a diagram"}}) {
    auto f = fills();
    auto sub = add(name, verb, help, f);
    f->push_back(problem_input(sub));
    std::string* side = str("edge");
    sub->add_option("--side", *side, "node or edge")->check(CLI::IsMember({"node", "edge", "nodes", "edges"}));
    bool* dot = &bools.emplace_back(false);
    if (name == "diagram") sub->add_flag("--dot", *dot, "Graphviz output in text mode");
    f->push_back([side, dot](Json& args) {
      args["side"] = *side;
      if (*dot) args["dot"] = true;
    });
  }
  {
    auto f = fills();
    auto sub = add("relax", "relax-check", "Does one set-configuration relax to another", f);
    std::string* from = str();
    std::string* to = str();
    sub->add_option("from", *from, "Set-configuration, e.g. '[M X] X'")->required();
    sub->add_option("to", *to, "Set-configuration")->required();
    f->push_back([from, to](Json& args) {
      args["from"] = *from;
      args["to"] = *to;
    });
  }
  {
    auto f = fills();
    auto sub = add("speedup-verify", "speedup-verify",
                   "Check that a target covers every maximal node configuration", f);
    std::string* source = str();
    std::string* target = str();
    auto* family = &int_lists.emplace_back();
    auto* drop = &string_lists.emplace_back();
    sub->add_option("source", *source, "Problem file (already re'd)");
    sub->add_option("target", *target, "Lifted target JSON (problem + dictionary)");
    sub->add_option("--family", *family, "delta a x: use the family and its relaxation target")
        ->expected(3);
    sub->add_option("--drop", *drop, "Remove target node lines using these labels");
    f->push_back([source, target, family, drop](Json& args) {
      if (!family->empty()) {
        args["family"] = {{"delta", (*family)[0]}, {"a", (*family)[1]}, {"x", (*family)[2]}};
      } else {
        if (source->empty() || target->empty()) {
          throw commands::UsageError("speedup-verify needs source and target files, or --family");
        }
        args["problem"] = slurp(*source);
        args["target"] = slurp(*target);
      }
      if (!drop->empty()) args["drop"] = *drop;
    });
  }
  for (const auto& [verb, help] : std::vector<std::pair<std::string, std::string>>{
           {"zero-round", "Zero-round solvability on the symmetric family"},
           {"failure-bound", "Failure bound for randomized zero-round algorithms"},
           {"simplify", "Drop condensed configurations covered by the others"}}) {
    auto f = fills();
    auto sub = add(verb, verb, help, f);
    f->push_back(problem_input(sub));
  }
  for (const auto& [verb, help] : std::vector<std::pair<std::string, std::string>>{
           {"family", "The owned-edge family problem"},
           {"plus", "The family problem with the extra C label"},
           {"expected-re", "The stated re-result over the eight named sets"},
           {"rel", "The relaxation target with its set dictionary"}}) {
    auto f = fills();
    auto sub = add(verb, verb, help, f);
    f->push_back(params_input(sub));
  }
  {
    auto f = fills();
    auto sub = add("mis", "mis", "The MIS problem", f);
    long long* d = num();
    sub->add_option("--delta", *d, "Degree")->required();
    f->push_back([d](Json& args) { args["delta"] = *d; });
  }
  {
    auto f = fills();
    auto sub = add("sequence", "sequence", "Lower-bound sequence certificate", f);
    long long* d = num();
    long long* x0 = num();
    double* eps = &doubles.emplace_back(0);
    sub->add_option("--delta", *d, "Degree")->required();
    sub->add_option("--x0", *x0, "Initial x")->required();
    sub->add_option("--epsilon", *eps, "Length factor")->required();
    f->push_back([d, x0, eps](Json& args) {
      args["delta"] = *d;
      args["x0"] = *x0;
      args["epsilon"] = *eps;
    });
  }
  {
    auto f = fills();
    auto sub = add("iso", "iso", "Isomorphism up to renaming labels", f);
    f->push_back(problem_input(sub, "first", "problem"));
    std::string* other = str();
    sub->add_option("second", *other, "Second problem file")->required();
    f->push_back([other](Json& args) { args["other"] = slurp(*other); });
  }
  {
    auto f = fills();
    auto sub = add("statement", "statement", "k-outdegree dominating set statement", f);
    long long* d = num();
    long long* k = num();
    sub->add_option("--delta", *d, "Degree")->required();
    sub->add_option("-k", *k, "Outdegree bound")->required();
    f->push_back([d, k](Json& args) {
      args["delta"] = *d;
      args["k"] = *k;
    });
  }
  {
    auto f = fills();
    auto sub = add("tree", "tree", "Random port-numbered tree (Graphviz in text mode)", f);
    f->push_back(tree_input(sub));
  }

  // simulate <kods|plus-transform|check|weaken|generate>
  CLI::App* sim = app.add_subcommand("simulate", "Simulator operations on trees");
  sim->require_subcommand(1);
  {
    auto f = fills();
    CLI::App* sub = sim->add_subcommand("kods", "Greedy k-outdegree dominating set, optionally labeled");
    sub->callback([&inv, f] {
      inv.verb = "simulate-kods";
      inv.fill = [f](Json& args) {
        for (auto& fn : *f) fn(args);
      };
    });
    f->push_back(tree_input(sub));
    long long* k = num();
    long long* a = num(-1);
    sub->add_option("-k", *k, "Outdegree bound")->required();
    sub->add_option("-a", *a, "Also convert to a family labeling with this a");
    f->push_back([k, a](Json& args) {
      args["k"] = *k;
      if (*a >= 0) args["a"] = *a;
    });
  }
  auto sim_sub = [&](const std::string& name, const std::string& verb, const std::string& help) {
    auto f = fills();
    CLI::App* sub = sim->add_subcommand(name, help);
    sub->callback([&inv, f, verb] {
      inv.verb = verb;
      inv.fill = [f](Json& args) {
        for (auto& fn : *f) fn(args);
      };
    });
    return std::make_pair(sub, f);
  };
  {
    auto [sub, f] = sim_sub("plus-transform", "simulate-transform", "Edge-coloring transform of a plus labeling");
    std::string* tree = str();
    long long* a = num();
    long long* x = num();
    sub->add_option("--tree", *tree, "Labeled, colored tree JSON")->required();
    sub->add_option("-a", *a, "a of the plus problem")->required();
    sub->add_option("-x", *x, "x of the plus problem")->required();
    f->push_back([tree, a, x](Json& args) {
      args["tree"] = slurp(*tree);
      args["a"] = *a;
      args["x"] = *x;
    });
  }
  {
    auto [sub, f] = sim_sub("check", "simulate-check", "Validate a tree labeling against a problem");
    std::string* tree = str();
    sub->add_option("--tree", *tree, "Labeled tree JSON")->required();
    f->push_back(problem_input(sub));
    f->push_back([tree](Json& args) { args["tree"] = slurp(*tree); });
  }
  {
    auto [sub, f] = sim_sub("weaken", "simulate-weaken", "Demote M and A to X for weaker parameters");
    std::string* tree = str();
    auto* from = &int_lists.emplace_back();
    auto* to = &int_lists.emplace_back();
    sub->add_option("--tree", *tree, "Labeled tree JSON")->required();
    sub->add_option("--from", *from, "a' x'")->expected(2)->required();
    sub->add_option("--to", *to, "a x")->expected(2)->required();
    f->push_back([tree, from, to](Json& args) {
      args["tree"] = slurp(*tree);
      args["from"] = {{"a", (*from)[0]}, {"x", (*from)[1]}};
      args["to"] = {{"a", (*to)[0]}, {"x", (*to)[1]}};
    });
  }
  {
    auto [sub, f] = sim_sub("generate", "simulate-generate", "Search a valid labeling for a problem");
    f->push_back(tree_input(sub));
    f->push_back(problem_input(sub));
  }

  // verify-paper runs the acceptance criteria.
  int delta_max = 0;
  bool details = false;
  int trees = 100;
  CLI::App* vp = app.add_subcommand("verify-paper", "Run acceptance criteria 1-8 and print a table");
  vp->add_option("--delta-max", delta_max, "Largest degree used by any engine run")
      ->required()
      ->check(CLI::Range(2, 64));
  vp->add_option("--trees", trees, "Random trees for the transform criterion")->check(CLI::Range(1, 10000));
  vp->add_flag("--details", details, "Print every detail line");
  vp->callback([&inv] { inv.verb = "verify-paper"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (inv.verb == "verify-paper") {
      relim::verify::SuiteOptions o;
      o.delta_max = delta_max;
      o.trees = trees;
      o.seed = g.seed;
      o.threads = std::max(1u, g.threads);
      bool all = true;
      Json rows = Json::array();
      relim::verify::run_suite(o, [&](const relim::verify::CriterionResult& r) {
        all = all && r.pass;
        if (g.format == "json") {
          rows.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass},
                          {"skipped", r.skipped}, {"details", r.details}});
        } else {
          std::cout << relim::verify::format_result(r, details) << std::flush;
        }
      });
      if (g.format == "json") std::cout << relim::dump(Json{{"criteria", rows}, {"pass", all}});
      return all ? 0 : 1;
    }
    Json args = Json::object();
    args["max_labels"] = g.max_labels;
    args["max_configs"] = g.max_configs;
    args["threads"] = g.threads;
    inv.fill(args);
    commands::Context ctx;
    ctx.threads = g.threads;
    const auto out = commands::run(inv.verb, args, ctx);
    std::cout << (g.format == "json" ? relim::dump(out.json) : out.text);
    return out.exit_code;
  } catch (const relim::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const relim::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
  } catch (const relim::BlowUpError& e) {
    std::cerr << "blow-up cap exceeded: " << e.what() << "\n";
  } catch (const relim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
