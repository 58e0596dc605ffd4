#include "relim/round_elim.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <set>
#include <thread>

#include "indexed.hpp"
#include "relim/diagram.hpp"
#include "relim/text_format.hpp"

namespace relim {

std::string to_string(Transform t) { return t == Transform::re ? "re" : "rere"; }

const LabelSet* LiftedProblem::members(const Label& name) const {
  for (const auto& [set, n] : renaming) {
    if (n == name) return &set;
  }
  return nullptr;
}

const Label* LiftedProblem::name_of(const LabelSet& set) const {
  for (const auto& [s, n] : renaming) {
    if (s == set) return &n;
  }
  return nullptr;
}

Label fresh_name(std::size_t index) {
  Label out;
  std::size_t i = index + 1;
  while (i > 0) {
    --i;
    out.insert(out.begin(), static_cast<char>('A' + i % 26));
    i /= 26;
  }
  return out;
}

namespace {

using detail::Mask;

class Search {
 public:
  Search(const detail::MaskConstraint& constraint, int labels, std::vector<Mask> candidates,
         const EnumerationOptions& options)
      : constraint_(constraint), labels_(labels), candidates_(std::move(candidates)),
        options_(options) {}

  std::vector<std::vector<Mask>> run(SearchStats& stats) {
    const auto begin = std::chrono::steady_clock::now();
    const std::size_t tasks = candidates_.size();
    std::vector<std::vector<std::vector<Mask>>> good(tasks);
    parallel(tasks, [&](std::size_t first, detail::UniversalChecker& checker) {
      detail::CountsSet state{detail::Counts(labels_, 0)};
      detail::CountsSet next;
      if (!checker.extend(state, candidates_[first], next)) return;
      std::vector<Mask> tuple{candidates_[first]};
      descend(checker, first, next, tuple, good[first]);
    });

    std::vector<std::vector<Mask>> all;
    for (auto& g : good) {
      for (auto& t : g) all.push_back(std::move(t));
    }
    stats.good_configs = all.size();

    std::vector<char> keep(all.size(), 0);
    parallel(all.size(), [&](std::size_t i, detail::UniversalChecker& checker) {
      keep[i] = is_maximal(checker, all[i]) ? 1 : 0;
    });
    std::vector<std::vector<Mask>> maximal;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (keep[i]) maximal.push_back(std::move(all[i]));
    }
    stats.candidates = candidates_.size();
    stats.search_nodes = nodes_.load();
    stats.maximal_configs = maximal.size();
    stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    if (options_.progress) options_.progress(stats);
    return maximal;
  }

 private:
  template <typename F>
  void parallel(std::size_t tasks, F&& body) {
    const unsigned threads = std::max(1u, std::min<unsigned>(options_.threads,
                                                             static_cast<unsigned>(tasks)));
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      detail::UniversalChecker checker(constraint_, labels_);
      try {
        for (std::size_t i = cursor++; i < tasks; i = cursor++) {
          if (failure) return;
          body(i, checker);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
  }

  void tick() {
    const std::size_t n = ++nodes_;
    if ((n & 1023) == 0) {
      if (options_.cancel != nullptr && options_.cancel->load()) throw CancelledError();
      if (options_.progress && (n & 65535) == 0) {
        std::lock_guard lock(progress_mutex_);
        SearchStats s;
        s.candidates = candidates_.size();
        s.search_nodes = n;
        s.good_configs = good_.load();
        options_.progress(s);
      }
    }
  }

  void descend(detail::UniversalChecker& checker, std::size_t start,
               const detail::CountsSet& state, std::vector<Mask>& tuple,
               std::vector<std::vector<Mask>>& out) {
    tick();
    if (static_cast<int>(tuple.size()) == constraint_.arity) {
      if (++good_ > options_.max_configs) {
        SearchStats s;
        s.candidates = candidates_.size();
        s.search_nodes = nodes_.load();
        s.good_configs = good_.load();
        throw BlowUpError("more than " + std::to_string(options_.max_configs) +
                              " set-configurations with universal membership",
                          s);
      }
      out.push_back(tuple);
      return;
    }
    detail::CountsSet next;
    for (std::size_t i = start; i < candidates_.size(); ++i) {
      if (!checker.extend(state, candidates_[i], next)) continue;
      tuple.push_back(candidates_[i]);
      descend(checker, i, next, tuple, out);
      tuple.pop_back();
    }
  }

  // Non-maximal iff enlarging one slot by one label keeps universal membership.
  bool is_maximal(detail::UniversalChecker& checker, const std::vector<Mask>& tuple) {
    std::vector<Mask> probe = tuple;
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      if (j > 0 && tuple[j] == tuple[j - 1]) continue;
      for (int l = 0; l < labels_; ++l) {
        if (tuple[j] & detail::bit(l)) continue;
        probe[j] = tuple[j] | detail::bit(l);
        if (checker.check(probe)) return false;
      }
      probe[j] = tuple[j];
    }
    return true;
  }

  const detail::MaskConstraint& constraint_;
  int labels_;
  std::vector<Mask> candidates_;
  const EnumerationOptions& options_;
  std::atomic<std::size_t> nodes_{0};
  std::atomic<std::size_t> good_{0};
  std::mutex progress_mutex_;
};

std::vector<Mask> all_subsets(const detail::Index& index) {
  if (index.size() > 20) throw PreconditionError("unrestricted search needs at most 20 labels");
  std::vector<Mask> out;
  for (Mask m = 1; m <= index.all(); ++m) out.push_back(m);
  return out;
}

std::vector<SetConfig> to_set_configs(const std::vector<std::vector<Mask>>& tuples,
                                      const detail::Index& index) {
  std::vector<SetConfig> out;
  out.reserve(tuples.size());
  for (const auto& t : tuples) {
    std::vector<Item> items;
    for (Mask m : t) items.push_back({Group(index.labels(m)), 1});
    out.emplace_back(std::move(items));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool universal_membership(const SetConfig& tuple, const Constraint& constraint) {
  if (tuple.arity() != constraint.arity()) return false;
  LabelSet labels = constraint.labels();
  LabelSet own = tuple.label_set();
  labels.insert(labels.end(), own.begin(), own.end());
  detail::Index index(std::move(labels));
  auto masks = detail::to_masks(constraint, index);
  detail::UniversalChecker checker(masks, index.size());
  std::vector<Mask> slots;
  for (const auto& item : tuple.items()) {
    for (int i = 0; i < item.multiplicity; ++i) slots.push_back(index.mask(item.group.members));
  }
  return checker.check(slots);
}

std::vector<SetConfig> maximal_set_configs(const Constraint& constraint, const LabelSet& alphabet,
                                           const std::optional<std::vector<LabelSet>>& candidates,
                                           const EnumerationOptions& options, SearchStats* stats) {
  LabelSet labels = alphabet;
  LabelSet used = constraint.labels();
  labels.insert(labels.end(), used.begin(), used.end());
  detail::Index index(std::move(labels));
  auto masks = detail::to_masks(constraint, index);

  std::vector<Mask> cands;
  if (candidates) {
    for (const auto& c : *candidates) {
      if (c.empty()) throw PreconditionError("candidate sets must be nonempty");
      cands.push_back(index.mask(c));
    }
    std::sort(cands.begin(), cands.end(), detail::mask_less);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  } else {
    cands = all_subsets(index);
    std::sort(cands.begin(), cands.end(), detail::mask_less);
  }
  if (cands.size() > options.max_labels) {
    SearchStats s;
    s.candidates = cands.size();
    throw BlowUpError(std::to_string(cands.size()) + " candidate sets exceed the cap of " +
                          std::to_string(options.max_labels),
                      s);
  }

  SearchStats local;
  auto tuples = Search(masks, index.size(), cands, options).run(local);
  auto result = to_set_configs(tuples, index);

  if (options.verify_brute_force && candidates && index.size() <= 6) {
    SearchStats ignored;
    auto reference = to_set_configs(
        Search(masks, index.size(), all_subsets(index), options).run(ignored), index);
    if (reference != result) {
      throw Error("candidate-restricted search disagrees with unrestricted search");
    }
  }
  if (stats != nullptr) *stats = local;
  return result;
}

Constraint lift_exists_constraint(const Constraint& constraint,
                                  const SetLabelDictionary& dictionary) {
  if (dictionary.empty()) throw PreconditionError("lifted alphabet must be nonempty");
  std::vector<CondensedConfig> configs;
  for (const auto& c : constraint.configs()) {
    std::vector<Item> items;
    bool empty_group = false;
    for (const auto& item : c.items()) {
      LabelSet names;
      for (const auto& [set, name] : dictionary) {
        bool meets = std::any_of(item.group.members.begin(), item.group.members.end(),
                                 [&](const Label& y) {
                                   return std::binary_search(set.begin(), set.end(), y);
                                 });
        if (meets) names.push_back(name);
      }
      if (names.empty()) {
        empty_group = true;
        break;
      }
      items.push_back({Group(std::move(names)), item.multiplicity});
    }
    if (!empty_group) configs.emplace_back(std::move(items));
  }
  return Constraint(constraint.arity(), std::move(configs));
}

namespace {

LiftedProblem lift(const Problem& problem, Side maximal_side, const EnumerationOptions& options) {
  const Transform transform = maximal_side == Side::edge ? Transform::re : Transform::rere;
  const Constraint& universal = maximal_side == Side::edge ? problem.edges() : problem.nodes();
  const Constraint& existential = maximal_side == Side::edge ? problem.nodes() : problem.edges();

  const Diagram diagram = build_diagram(problem, maximal_side);
  const auto candidates = right_closed_sets(diagram, options.max_labels);

  SearchStats stats;
  auto configs = maximal_set_configs(universal, problem.alphabet(), candidates, options, &stats);

  std::vector<LabelSet> sets;
  for (const auto& c : configs) {
    for (const auto& item : c.items()) sets.push_back(item.group.members);
  }
  std::sort(sets.begin(), sets.end(), set_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  stats.set_labels = sets.size();
  if (sets.size() > options.max_labels) {
    throw BlowUpError(std::to_string(sets.size()) + " set-labels exceed the cap of " +
                          std::to_string(options.max_labels),
                      stats);
  }
  if (configs.size() > options.max_configs) {
    throw BlowUpError(std::to_string(configs.size()) + " configurations exceed the cap of " +
                          std::to_string(options.max_configs),
                      stats);
  }
  for (const auto& s : sets) {
    if (!is_right_closed(s, diagram)) {
      throw Error("set-label is not right-closed; strength relation is inconsistent");
    }
  }

  SetLabelDictionary dictionary;
  for (std::size_t i = 0; i < sets.size(); ++i) dictionary.emplace_back(sets[i], fresh_name(i));

  std::vector<CondensedConfig> renamed;
  for (const auto& c : configs) {
    std::vector<Item> items;
    for (const auto& item : c.items()) {
      auto it = std::lower_bound(sets.begin(), sets.end(), item.group.members, set_less);
      items.push_back({Group(dictionary[it - sets.begin()].second), item.multiplicity});
    }
    renamed.emplace_back(std::move(items));
  }
  Constraint maximal(universal.arity(), std::move(renamed));
  Constraint lifted = dictionary.empty() ? Constraint(existential.arity(), {})
                                         : lift_exists_constraint(existential, dictionary);

  LiftedProblem out;
  out.problem = maximal_side == Side::edge
                    ? Problem(problem.delta(), std::move(lifted), std::move(maximal))
                    : Problem(problem.delta(), std::move(maximal), std::move(lifted));
  out.problem.set_note(to_string(transform) + " of a problem with " +
                       std::to_string(problem.alphabet().size()) + " labels");
  out.renaming = std::move(dictionary);
  out.transform = transform;
  out.source = serialize_problem(problem);
  out.stats = stats;
  return out;
}

}  // namespace

LiftedProblem re(const Problem& problem, const EnumerationOptions& options) {
  return lift(problem, Side::edge, options);
}

LiftedProblem rere(const Problem& problem, const EnumerationOptions& options) {
  return lift(problem, Side::node, options);
}

LiftedProblem rename_lifted(const LiftedProblem& lifted,
                            const std::vector<std::pair<LabelSet, Label>>& names) {
  RenamingMap map;
  for (const auto& [set, name] : lifted.renaming) map[name] = name;
  for (const auto& [set, name] : names) {
    if (!is_valid_label(name)) throw PreconditionError("invalid label name " + name);
    const Label* current = lifted.name_of(make_label_set(set));
    if (current == nullptr) continue;
    map[*current] = name;
  }
  std::set<Label> images;
  for (const auto& [from, to] : map) {
    if (!images.insert(to).second) {
      throw PreconditionError("renaming is not injective: two set-labels map to " + to);
    }
  }
  LiftedProblem out = lifted;
  out.problem = rename_problem(lifted.problem, map);
  for (auto& [set, name] : out.renaming) name = map.at(name);
  return out;
}

}  // namespace relim
