#include "acceptance_checks.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "relim/analysis.hpp"
#include "relim/diagram.hpp"
#include "relim/family.hpp"
#include "relim/json_io.hpp"
#include "relim/round_elim.hpp"
#include "relim/simulator.hpp"
#include "relim/text_format.hpp"

namespace relim::verify {

namespace {

using Clock = std::chrono::steady_clock;

class Run {
 public:
  Run(int id, std::string title) : start_(Clock::now()) {
    result_.id = id;
    result_.title = std::move(title);
    result_.pass = true;
  }

  void ok(const std::string& line, bool verbose) {
    if (verbose) result_.details.push_back(line);
  }
  void fail(const std::string& line) {
    result_.pass = false;
    result_.details.push_back("FAIL " + line);
  }
  void expect(bool holds, const std::string& line, bool verbose) {
    if (holds) {
      ok(line, verbose);
    } else {
      fail(line);
    }
  }
  void note(const std::string& line) { result_.details.push_back(line); }
  void skip(const std::string& why) {
    result_.skipped = true;
    result_.details.push_back("skipped: " + why);
  }

  CriterionResult finish() {
    result_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return result_;
  }

 private:
  CriterionResult result_;
  Clock::time_point start_;
};

std::string tuple(const FamilyParams& p) {
  return "(" + std::to_string(p.delta) + "," + std::to_string(p.a) + "," + std::to_string(p.x) + ")";
}

std::string join(const std::vector<std::string>& items, const std::string& sep = " ") {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string set_name(const LabelSet& s) { return "{" + join(s, "") + "}"; }

std::vector<FamilyParams> speedup_tuples(int lo, int hi) {
  std::vector<FamilyParams> out;
  for (int d = lo; d <= hi; ++d) {
    for (int a = 2; a <= d; ++a) {
      for (int x = 0; x + 2 <= a; ++x) out.emplace_back(d, a, x);
    }
  }
  return out;
}

LiftedProblem renamed_re(const FamilyParams& p, unsigned threads = 1) {
  EnumerationOptions options;
  options.threads = threads;
  return rename_lifted(re(make_family_problem(p), options), expected_re_dictionary());
}

// The right-closed edge sets listed for the family.
std::vector<LabelSet> listed_right_closed() {
  std::vector<LabelSet> out = {{"X"},           {"M", "X"},      {"O", "X"},
                               {"M", "O", "X"}, {"A", "O", "X"}, {"A", "M", "O", "X"},
                               {"A", "O", "P", "X"}, {"A", "M", "O", "P", "X"}};
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

std::vector<LabeledTree> seeded_trees(const SuiteOptions& o, int delta, int count, int max_nodes,
                                      std::uint64_t salt) {
  std::mt19937_64 rng(o.seed * 1000003 + salt);
  std::vector<LabeledTree> out;
  for (int i = 0; i < count; ++i) {
    const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_nodes - 1));
    out.push_back(proper_edge_coloring(random_tree(n, delta, rng(), false)));
  }
  return out;
}

bool has_aa_edge(const LabeledTree& t) {
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (t.labels[e][0] == "A" && t.labels[e][1] == "A") return true;
  }
  return false;
}

}  // namespace

Problem random_problem(std::uint64_t seed, int labels, int delta) {
  std::mt19937_64 rng(seed);
  LabelSet alphabet;
  for (int i = 0; i < labels; ++i) alphabet.push_back(std::string(1, static_cast<char>('A' + i)));
  auto random_group = [&]() {
    LabelSet g;
    for (const auto& l : alphabet) {
      if (rng() % 3 == 0) g.push_back(l);
    }
    if (g.empty()) g.push_back(alphabet[rng() % alphabet.size()]);
    return Group(g);
  };
  auto random_config = [&](int arity) {
    std::vector<Item> items;
    int left = arity;
    while (left > 0) {
      const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(left));
      items.push_back({random_group(), m});
      left -= m;
    }
    return CondensedConfig(std::move(items));
  };
  std::vector<CondensedConfig> nodes, edges;
  const int node_count = 1 + static_cast<int>(rng() % 3);
  const int edge_count = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < node_count; ++i) nodes.push_back(random_config(delta));
  for (int i = 0; i < edge_count; ++i) edges.push_back(random_config(2));
  return Problem(delta, Constraint(delta, std::move(nodes)), Constraint(2, std::move(edges)),
                 "random seed " + std::to_string(seed));
}

CriterionResult check_re_oracle(const SuiteOptions& o) {
  Run run(1, "re equals the brute-force construction on the small corpus");
  std::vector<Problem> corpus;
  for (int d = 3; d <= std::min(4, o.delta_max); ++d) corpus.push_back(make_mis_problem(d));
  if (o.delta_max >= 4) {
    for (int a = 0; a <= 4; ++a) {
      for (int x = 0; x <= 4; ++x) corpus.push_back(make_family_problem({4, a, x}));
    }
  }
  for (std::uint64_t s = 0; s < 60; ++s) {
    const int labels = 1 + static_cast<int>(s % 5);
    const int delta = 2 + static_cast<int>(s / 5 % 3);
    if (delta > o.delta_max) continue;
    corpus.push_back(random_problem(o.seed * 7919 + s, labels, delta));
  }
  int equal = 0;
  for (const auto& p : corpus) {
    const std::string name = p.note().empty() ? serialize_problem(p) : p.note();
    if (p.alphabet().size() > 5) {
      run.fail(name + ": alphabet larger than 5");
      continue;
    }
    const auto engine = oracle::view(re(p));
    const auto reference = oracle::re(p);
    if (engine == reference) {
      ++equal;
      run.ok(name + ": equal", o.verbose);
    } else {
      run.fail(name + ": engine " + std::to_string(engine.edges.size()) + " edge / " +
               std::to_string(engine.nodes.size()) + " node tuples, oracle " +
               std::to_string(reference.edges.size()) + " / " +
               std::to_string(reference.nodes.size()));
    }
  }
  run.note(std::to_string(equal) + "/" + std::to_string(corpus.size()) +
           " problems equal after canonicalization");
  return run.finish();
}

CriterionResult check_re_family(const SuiteOptions& o) {
  Run run(2, "re of the family is the stated 8-label problem");
  const int hi = std::min(6, o.delta_max);
  if (hi < 4) {
    run.skip("delta-max below 4");
    return run.finish();
  }
  const auto listed = listed_right_closed();
  const Constraint stated_edges(2, {CondensedConfig::plain({"X", "Q"}),
                                    CondensedConfig::plain({"O", "B"}),
                                    CondensedConfig::plain({"A", "U"}),
                                    CondensedConfig::plain({"P", "M"})});
  int count = 0;
  for (const auto& p : speedup_tuples(4, hi)) {
    ++count;
    const auto lifted = re(make_family_problem(p));
    const bool iso = problems_isomorphic(lifted.problem, expected_re_problem(p)).has_value();
    const bool four = lifted.problem.edges().configs().size() == 4;
    const bool named = rename_lifted(lifted, expected_re_dictionary()).problem.edges() == stated_edges;
    const auto closed = right_closed_sets(build_diagram(make_family_problem(p), Side::edge));
    const bool eight = closed == listed;
    run.expect(iso && four && named && eight,
               tuple(p) + ": isomorphic=" + std::to_string(iso) + " edge configs=" +
                   std::to_string(lifted.problem.edges().configs().size()) +
                   " stated edges=" + std::to_string(named) +
                   " right-closed sets=" + std::to_string(closed.size()) +
                   (eight ? " (as listed)" : " (differ)"),
               o.verbose);
  }
  run.note(std::to_string(count) + " tuples with 4 <= delta <= " + std::to_string(hi));
  return run.finish();
}

CriterionResult check_speedup(const SuiteOptions& o) {
  Run run(3, "speedup target covers rere, and each target node line is needed");
  const int hi = std::min(5, o.delta_max);
  if (hi < 4) {
    run.skip("delta-max below 4");
    return run.finish();
  }
  EnumerationOptions eo;
  eo.threads = o.threads;
  int covered = 0, tuples = 0, deletions = 0, deletion_witnesses = 0;
  std::vector<std::string> survivors;
  for (const auto& p : speedup_tuples(4, hi)) {
    ++tuples;
    const auto source = renamed_re(p, o.threads).problem;
    const auto target = make_rel_problem(p);
    const auto v = verify_speedup_target(source, target, eo);
    if (v.holds) {
      ++covered;
      run.ok(tuple(p) + ": " + v.narrative, o.verbose);
    } else {
      run.fail(tuple(p) + ": " + v.narrative + " witness " + join(v.witness, ", "));
    }
    for (const Label line : {"M", "P", "A", "C"}) {
      ++deletions;
      const auto reduced = drop_node_line(target, line);
      const auto w = verify_speedup_target(source, reduced, eo);
      if (!w.holds && !w.witness.empty()) {
        ++deletion_witnesses;
        run.ok(tuple(p) + " without the " + line + " line: fails, witness " + w.witness.front(),
               o.verbose);
        continue;
      }
      // Report why the deletion is harmless: some remaining line dominates it.
      std::string dominated_by;
      for (const auto& removed : target.problem.nodes().configs()) {
        const auto labels = removed.label_set();
        if (std::find(labels.begin(), labels.end(), line) == labels.end()) continue;
        for (const auto& kept : reduced.problem.nodes().configs()) {
          auto expand_sets = [&](const CondensedConfig& c) {
            std::vector<Item> items;
            for (const auto& item : c.items()) {
              items.push_back({Group(*target.members(item.group.members.front())), item.multiplicity});
            }
            return CondensedConfig(std::move(items));
          };
          if (relaxes_to(expand_sets(removed), expand_sets(kept))) {
            dominated_by = kept.to_string();
          }
        }
      }
      survivors.push_back(tuple(p) + "-" + line);
      run.fail(tuple(p) + " without the " + line + " line: still holds" +
               (dominated_by.empty() ? "" : "; the deleted line relaxes into the kept line '" +
                                                dominated_by + "', so no witness can exist"));
    }
  }
  run.note(std::to_string(covered) + "/" + std::to_string(tuples) + " tuples covered; " +
           std::to_string(deletion_witnesses) + "/" + std::to_string(deletions) +
           " single-line deletions fail with a witness");
  if (!survivors.empty()) {
    run.note("deletions that cannot fail (dominated line): " + join(survivors, ", "));
  }
  return run.finish();
}

CriterionResult check_zero_round(const SuiteOptions& o) {
  Run run(4, "family is not zero-round solvable; single-label control is");
  const int hi = std::min(8, o.delta_max);
  const std::set<std::string> expected = {"A", "M", "P"};
  int count = 0;
  for (int d = 2; d <= hi; ++d) {
    for (int a = 1; a <= d - 1; ++a) {
      for (int x = 1; x <= d - 1; ++x) {
        ++count;
        const FamilyParams p(d, a, x);
        const auto v = zero_round_solvable_symmetric(make_family_problem(p));
        const std::set<std::string> got(v.witness.begin(), v.witness.end());
        run.expect(!v.holds && v.witness.size() == 3 && got == expected,
                   tuple(p) + ": holds=" + std::to_string(v.holds) + " witnesses " +
                       join(v.witness),
                   o.verbose);
      }
    }
  }
  const Problem control = parse_problem("delta: 3\nnodes:\nX^3\nedges:\nX X\n");
  const auto c = zero_round_solvable_symmetric(control);
  run.expect(c.holds, "single-label control: holds=" + std::to_string(c.holds), true);
  run.note(std::to_string(count) + " family tuples with 1 <= a, x <= delta-1, delta <= " +
           std::to_string(hi));
  return run.finish();
}

CriterionResult check_failure_bound(const SuiteOptions& o) {
  Run run(5, "randomized failure bound is 1/(3 delta)^2 and at least 1/delta^8");
  for (int d = 2; d <= 64; ++d) {
    const auto b = randomized_failure_bound(make_family_problem({d, 1, 1}));
    const Rational want(1, 9 * d * d);
    Rational threshold(1);
    for (int i = 0; i < 8; ++i) threshold /= d;
    const bool ok = b.derivable && b.configurations == 3 && b.bound == want &&
                    b.threshold == threshold && b.bound >= threshold && b.meets_threshold;
    run.expect(ok, "delta=" + std::to_string(d) + ": bound " + b.bound.str() + ", threshold " +
                       b.threshold.str(),
               o.verbose);
  }
  run.note("63 degrees from 2 to 64, exact rationals");
  return run.finish();
}

CriterionResult check_transforms(const SuiteOptions& o) {
  Run run(6, "one-round and zero-round label transforms on random trees");
  const int delta = 4;
  if (o.delta_max < delta) {
    run.skip("delta-max below 4");
    return run.finish();
  }
  const auto trees = seeded_trees(o, delta, o.trees, o.max_tree_nodes, 6);
  const std::vector<std::pair<int, int>> plus_params = {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {3, 1}, {4, 1}};
  int passed = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto& tree = trees[i];
    const std::string name = "tree " + std::to_string(i) + " (n=" + std::to_string(tree.nodes) + ")";
    bool tree_ok = true;
    auto expect = [&](bool holds, const std::string& what) {
      if (!holds) {
        tree_ok = false;
        run.fail(name + ": " + what);
      }
    };
    try {
      // (i) k-outdegree dominating sets to the family.
      for (int k = 0; k <= 2; ++k) {
        const auto sol = greedy_kods(tree, k);
        expect(check_kods(tree, sol, k).holds, "greedy k=" + std::to_string(k) + " invalid");
        for (int a = 0; a <= delta; ++a) {
          const auto labeled = kods_to_family_labeling(tree, sol, a, k);
          const auto r = check_labeling(labeled, make_family_problem({delta, a, k}));
          expect(r.verdict.holds, "k=" + std::to_string(k) + " a=" + std::to_string(a) + ": " +
                                      join(r.verdict.witness, ", "));
        }
      }
      // (ii) plus labelings through the edge-coloring transform.
      for (const auto& [a, x] : plus_params) {
        const auto plus = make_plus_problem({delta, a, x});
        const auto labeled = generate_valid_labeling(tree, plus, o.seed + i);
        if (!labeled) {
          expect(false, "no plus labeling found for " + tuple({delta, a, x}));
          continue;
        }
        const auto out = plus_to_family_transform(*labeled, a, x);
        const FamilyParams stepped(delta, (a - 2 * x - 1) / 2, x + 1);
        const auto r = check_labeling(out, make_family_problem(stepped));
        expect(r.verdict.holds, "plus " + tuple({delta, a, x}) + " -> " + tuple(stepped) + ": " +
                                    join(r.verdict.witness, ", "));
        expect(!has_aa_edge(out), "A A edge after transform of " + tuple({delta, a, x}));
      }
      // (iii) weakening along every monotone parameter pair.
      for (int a_from = 0; a_from <= delta; ++a_from) {
        for (int x_from = 0; x_from <= delta; ++x_from) {
          const auto labeled =
              generate_valid_labeling(tree, make_family_problem({delta, a_from, x_from}), o.seed + i);
          if (!labeled) {
            expect(false, "no labeling found for " + tuple({delta, a_from, x_from}));
            continue;
          }
          for (int a = 0; a <= a_from; ++a) {
            for (int x = x_from; x <= delta; ++x) {
              const auto out = weaken_labeling(*labeled, a_from, x_from, a, x);
              const auto r = check_labeling(out, make_family_problem({delta, a, x}));
              expect(r.verdict.holds, "weaken " + tuple({delta, a_from, x_from}) + " -> " +
                                          tuple({delta, a, x}) + ": " +
                                          join(r.verdict.witness, ", "));
            }
          }
        }
      }
    } catch (const std::exception& e) {
      expect(false, std::string("exception: ") + e.what());
    }
    if (tree_ok) {
      ++passed;
      run.ok(name + ": all transforms valid", o.verbose);
    }
  }
  run.note(std::to_string(passed) + "/" + std::to_string(trees.size()) +
           " trees pass parts (i), (ii) and (iii)");
  if (passed != static_cast<int>(trees.size())) run.fail("not every tree passed");
  return run.finish();
}

CriterionResult check_sequence(const SuiteOptions& o) {
  Run run(7, "lower-bound sequence certificates");
  const auto cert = build_sequence(1 << 20, 2, 0.25);
  run.expect(cert.t == 5, "delta=2^20, x0=2, eps=0.25: t=" + std::to_string(cert.t), true);
  for (const auto& step : cert.steps) {
    const auto& p = step.params;
    const bool arithmetic = step.index == cert.t ||
                            (2 * p.x + 1 <= p.a && p.x + 2 <= p.a && p.a <= p.delta && 8 * p.x < p.a);
    std::string failed;
    for (const auto& c : step.checks) {
      if (!c.holds) failed += " " + c.name;
    }
    run.expect(step.ok && arithmetic,
               "step " + std::to_string(step.index) + " (a=" + std::to_string(p.a) +
                   ", x=" + std::to_string(p.x) + ")" + (failed.empty() ? "" : ": failed" + failed),
               o.verbose);
  }
  run.expect(!cert.final_zero_round.holds && cert.valid,
             "final problem zero-round solvable=" + std::to_string(cert.final_zero_round.holds) +
                 ", certificate valid=" + std::to_string(cert.valid),
             true);

  // Small degree: every scheduled transition through the full pipeline.
  const int delta = 5;
  if (o.delta_max < delta) {
    run.note("delta=5 mechanized transitions skipped (delta-max below 5)");
    return run.finish();
  }
  const auto small = sequence_schedule(delta, 0, 0.5);
  EnumerationOptions eo;
  eo.threads = o.threads;
  const auto trees = seeded_trees(o, delta, 10, 60, 7);
  for (const auto& step : small.steps) {
    if (!step.stepped) continue;
    const auto& p = step.params;
    const auto& next = small.steps[static_cast<std::size_t>(step.index) + 1].params;
    const auto lifted = re(make_family_problem(p), eo);
    const bool iso = problems_isomorphic(lifted.problem, expected_re_problem(p)).has_value();
    const auto v = verify_speedup_target(
        rename_lifted(lifted, expected_re_dictionary()).problem, make_rel_problem(p), eo);
    const bool same =
        problems_isomorphic(make_rel_problem(p).problem, make_plus_problem(p)).has_value();
    int tree_ok = 0;
    for (std::size_t i = 0; i < trees.size(); ++i) {
      const auto labeled = generate_valid_labeling(trees[i], make_plus_problem(p), o.seed + i);
      if (!labeled) continue;
      const auto stepped = plus_to_family_transform(*labeled, p.a, p.x);
      const auto weakened =
          weaken_labeling(stepped, step.stepped->a, step.stepped->x, next.a, next.x);
      if (check_labeling(stepped, make_family_problem(*step.stepped)).verdict.holds &&
          check_labeling(weakened, make_family_problem(next)).verdict.holds &&
          !has_aa_edge(stepped)) {
        ++tree_ok;
      }
    }
    const bool trees_ok = tree_ok == static_cast<int>(trees.size());
    run.expect(step.ok && iso && v.holds && same && trees_ok,
               "delta=5 step " + tuple(p) + " -> " + tuple(*step.stepped) + " weakened to " +
                   tuple(next) + ": re isomorphic=" + std::to_string(iso) +
                   ", speedup target=" + std::to_string(v.holds) + ", target is the plus problem=" +
                   std::to_string(same) + ", trees " + std::to_string(tree_ok) + "/" +
                   std::to_string(trees.size()),
               true);
  }
  run.note("delta=5 final problem " + tuple(small.steps.back().params) +
           (small.final_zero_round.holds ? " is zero-round solvable, so no bound is claimed there"
                                         : " is not zero-round solvable"));
  return run.finish();
}

CriterionResult check_determinism(const SuiteOptions& o) {
  Run run(8, "repeated and parallel runs are byte-identical");
  using Job = std::function<std::string(unsigned threads)>;
  const int d = std::min(4, std::max(3, o.delta_max));
  const FamilyParams fp(d, d, 0);
  std::vector<std::pair<std::string, Job>> jobs = {
      {"serialize", [](unsigned) { return serialize_problem(make_mis_problem(3)); }},
      {"re family",
       [fp](unsigned t) {
         EnumerationOptions eo;
         eo.threads = t;
         return dump(to_json(re(make_family_problem(fp), eo)));
       }},
      {"rere(re(MIS))",
       [](unsigned t) {
         EnumerationOptions eo;
         eo.threads = t;
         return dump(to_json(rere(re(make_mis_problem(3), eo).problem, eo)));
       }},
      {"diagram",
       [fp](unsigned) {
         return dump(to_json(build_diagram(re(make_family_problem(fp)).problem, Side::node)));
       }},
      {"right-closed sets",
       [fp](unsigned) {
         std::string out;
         for (const auto& s : right_closed_sets(build_diagram(make_family_problem(fp), Side::edge)))
           out += set_name(s);
         return out;
       }},
      {"speedup verdict",
       [fp](unsigned t) {
         EnumerationOptions eo;
         eo.threads = t;
         return dump(to_json(verify_speedup_target(renamed_re(fp, t).problem,
                                                   make_rel_problem(fp), eo)));
       }},
      {"zero-round",
       [fp](unsigned) { return dump(to_json(zero_round_solvable_symmetric(make_family_problem(fp)))); }},
      {"failure bound",
       [fp](unsigned) { return dump(to_json(randomized_failure_bound(make_family_problem(fp)))); }},
      {"sequence", [](unsigned) { return dump(to_json(build_sequence(1 << 20, 2, 0.25))); }},
      {"simplify",
       [](unsigned) {
         return dump(to_json(simplify_subsumed(re(make_mis_problem(4)).problem.nodes())));
       }},
      {"simulator",
       [&o](unsigned t) {
         // The node order is shuffled per thread count, results must not move.
         auto tree = proper_edge_coloring(random_tree(120, 4, o.seed, false));
         std::vector<int> order(static_cast<std::size_t>(tree.nodes));
         for (int i = 0; i < tree.nodes; ++i) order[static_cast<std::size_t>(i)] = i;
         std::shuffle(order.begin(), order.end(), std::mt19937_64(o.seed + t));
         const auto plus = generate_valid_labeling(tree, make_plus_problem({4, 3, 0}), o.seed);
         std::string out = dump(to_json(greedy_kods(tree, 1)));
         if (plus) {
           const auto stepped = plus_to_family_transform(*plus, 3, 0, order);
           out += dump(to_json(stepped));
           out += dump(to_json(weaken_labeling(stepped, 1, 1, 0, 2, order)));
         }
         return out;
       }},
  };
  for (const auto& [name, job] : jobs) {
    std::vector<std::string> outputs;
    for (int i = 0; i < 3; ++i) outputs.push_back(job(1));
    std::vector<std::future<std::string>> parallel;
    for (unsigned t : {2u, 4u, 8u}) {
      parallel.push_back(std::async(std::launch::async, [&job, t] { return job(t); }));
    }
    for (auto& f : parallel) outputs.push_back(f.get());
    const bool same = std::all_of(outputs.begin(), outputs.end(),
                                  [&](const std::string& s) { return s == outputs.front(); });
    run.expect(same && !outputs.front().empty(),
               name + ": 3 sequential and 3 concurrent runs " + (same ? "identical" : "differ"),
               o.verbose);
  }
  run.note(std::to_string(jobs.size()) + " operations compared");
  return run.finish();
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  using Runner = CriterionResult (*)(const SuiteOptions&);
  const Runner runners[] = {check_re_oracle,     check_re_family,  check_speedup,
                            check_zero_round,    check_failure_bound, check_transforms,
                            check_sequence,      check_determinism};
  std::vector<CriterionResult> out;
  for (Runner r : runners) {
    CriterionResult result;
    try {
      result = r(options);
    } catch (const std::exception& e) {
      result.id = static_cast<int>(out.size()) + 1;
      result.title = "aborted";
      result.pass = false;
      result.details.push_back(std::string("exception: ") + e.what());
    }
    if (on_result) on_result(result);
    out.push_back(std::move(result));
  }
  return out;
}

std::string format_result(const CriterionResult& r, bool with_details) {
  char head[64];
  std::snprintf(head, sizeof head, "%s  %d  ", r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL"), r.id);
  char time[32];
  std::snprintf(time, sizeof time, " (%.1f s)", r.seconds);
  std::string out = head + r.title + time + "\n";
  if (with_details || !r.pass) {
    for (const auto& line : r.details) out += "      " + line + "\n";
  }
  return out;
}

}  // namespace relim::verify
