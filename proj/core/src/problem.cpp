#include "relim/problem.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "indexed.hpp"
#include "relim/errors.hpp"

namespace relim {

bool is_valid_label(std::string_view name) {
  if (name.empty() || name.front() < 'A' || name.front() > 'Z') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'';
  });
}

LabelSet make_label_set(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

bool set_less(const LabelSet& lhs, const LabelSet& rhs) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  return lhs < rhs;
}

bool is_subset(const LabelSet& sub, const LabelSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

Group::Group(LabelSet labels) : members(make_label_set(std::move(labels))) {
  if (members.empty()) throw PreconditionError("a group needs at least one label");
}

std::string Group::to_string() const {
  if (singleton()) return members.front();
  std::string out = "[";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i > 0) out += ' ';
    out += members[i];
  }
  out += ']';
  return out;
}

CondensedConfig::CondensedConfig(std::vector<Item> items) {
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.group < b.group; });
  for (auto& item : items) {
    if (item.multiplicity <= 0) throw PreconditionError("multiplicities must be positive");
    if (item.group.members.empty()) throw PreconditionError("empty group in configuration");
    if (!items_.empty() && items_.back().group == item.group) {
      items_.back().multiplicity += item.multiplicity;
    } else {
      items_.push_back(std::move(item));
    }
  }
  for (const auto& item : items_) {
    arity_ += item.multiplicity;
    if (!key_.empty()) key_ += ' ';
    key_ += item.group.to_string();
    if (item.multiplicity != 1) key_ += '^' + std::to_string(item.multiplicity);
  }
}

CondensedConfig CondensedConfig::plain(const std::vector<Label>& labels) {
  std::vector<Item> items;
  items.reserve(labels.size());
  for (const auto& l : labels) items.push_back({Group(l), 1});
  return CondensedConfig(std::move(items));
}

bool CondensedConfig::is_plain() const {
  return std::all_of(items_.begin(), items_.end(),
                     [](const Item& i) { return i.group.singleton(); });
}

std::vector<Label> CondensedConfig::labels() const {
  std::vector<Label> out;
  for (const auto& item : items_) {
    for (int i = 0; i < item.multiplicity; ++i) out.push_back(item.group.members.front());
  }
  return out;
}

LabelSet CondensedConfig::label_set() const {
  LabelSet out;
  for (const auto& item : items_) {
    out.insert(out.end(), item.group.members.begin(), item.group.members.end());
  }
  return make_label_set(std::move(out));
}

Constraint::Constraint(int arity, std::vector<CondensedConfig> configs) : arity_(arity) {
  if (arity <= 0) throw PreconditionError("constraint arity must be positive");
  for (const auto& c : configs) {
    if (c.arity() != arity) {
      throw PreconditionError("configuration '" + c.to_string() + "' has length " +
                              std::to_string(c.arity()) + ", expected " +
                              std::to_string(arity));
    }
  }
  std::sort(configs.begin(), configs.end());
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
  configs_ = std::move(configs);
}

LabelSet Constraint::labels() const {
  LabelSet out;
  for (const auto& c : configs_) {
    auto s = c.label_set();
    out.insert(out.end(), s.begin(), s.end());
  }
  return make_label_set(std::move(out));
}

Problem::Problem(int delta, Constraint nodes, Constraint edges, std::string note)
    : delta_(delta), nodes_(std::move(nodes)), edges_(std::move(edges)), note_(std::move(note)) {
  if (delta_ < 2) throw PreconditionError("delta must be at least 2");
  if (nodes_.arity() != delta_) {
    throw PreconditionError("node constraint arity " + std::to_string(nodes_.arity()) +
                            " differs from delta " + std::to_string(delta_));
  }
  if (edges_.arity() != 2) throw PreconditionError("edge constraint arity must be 2");
  LabelSet all = nodes_.labels();
  LabelSet e = edges_.labels();
  all.insert(all.end(), e.begin(), e.end());
  alphabet_ = make_label_set(std::move(all));
}

std::vector<CondensedConfig> expand_config(const CondensedConfig& config) {
  detail::Index index(config.label_set());
  detail::CountsSet plain;
  detail::expand_into(detail::to_mask_config(config, index), index.size(), plain);
  std::vector<CondensedConfig> out;
  out.reserve(plain.size());
  for (const auto& counts : plain) out.push_back(detail::counts_to_config(counts, index));
  std::sort(out.begin(), out.end());
  return out;
}

bool config_in_constraint(const CondensedConfig& plain, const Constraint& constraint) {
  if (!plain.is_plain()) throw PreconditionError("membership expects a plain configuration");
  if (plain.arity() != constraint.arity()) return false;
  LabelSet labels = constraint.labels();
  for (const auto& l : plain.label_set()) {
    if (!std::binary_search(labels.begin(), labels.end(), l)) return false;
  }
  detail::Index index(labels);
  auto counts = detail::config_to_counts(plain, index);
  return detail::fits_any(counts, detail::to_masks(constraint, index));
}

namespace {

void check_renaming(const LabelSet& alphabet, const RenamingMap& map) {
  std::set<Label> images;
  for (const auto& l : alphabet) {
    auto it = map.find(l);
    if (it == map.end()) throw PreconditionError("renaming does not map label " + l);
    if (!images.insert(it->second).second) {
      throw PreconditionError("renaming is not injective: two labels map to " + it->second);
    }
  }
}

}  // namespace

Constraint rename_constraint(const Constraint& constraint, const RenamingMap& map) {
  std::vector<CondensedConfig> configs;
  for (const auto& c : constraint.configs()) {
    std::vector<Item> items;
    for (const auto& item : c.items()) {
      LabelSet members;
      for (const auto& l : item.group.members) {
        auto it = map.find(l);
        if (it == map.end()) throw PreconditionError("renaming does not map label " + l);
        members.push_back(it->second);
      }
      items.push_back({Group(std::move(members)), item.multiplicity});
    }
    configs.emplace_back(std::move(items));
  }
  return Constraint(constraint.arity(), std::move(configs));
}

Problem rename_problem(const Problem& problem, const RenamingMap& map) {
  check_renaming(problem.alphabet(), map);
  return Problem(problem.delta(), rename_constraint(problem.nodes(), map),
                 rename_constraint(problem.edges(), map), problem.note());
}

namespace {

// (side, item multiplicity, group size, items in config), one per occurrence,
// followed by edge-side strength degrees.
using Fingerprint = std::vector<std::tuple<int, int, int, int>>;

std::vector<Fingerprint> fingerprints(const Problem& p) {
  const LabelSet& alphabet = p.alphabet();
  detail::Index index(alphabet);
  std::vector<Fingerprint> out(alphabet.size());
  auto collect = [&](const Constraint& k, int side) {
    for (const auto& c : k.configs()) {
      const int n_items = static_cast<int>(c.items().size());
      for (const auto& item : c.items()) {
        for (const auto& l : item.group.members) {
          out[index.at(l)].emplace_back(side, item.multiplicity,
                                        static_cast<int>(item.group.members.size()), n_items);
        }
      }
    }
  };
  collect(p.nodes(), 0);
  collect(p.edges(), 1);

  // Edge-side strength: count labels each label is at least as strong as.
  const int n = index.size();
  auto edges = detail::expand(detail::to_masks(p.edges(), index), n);
  for (int a = 0; a < n; ++a) {
    int weaker = 0;
    int stronger = 0;
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      auto as_strong = [&](int strong, int weak) {
        for (const auto& c : edges) {
          if (c[weak] == 0) continue;
          auto d = c;
          --d[weak];
          ++d[strong];
          if (!edges.contains(d)) return false;
        }
        return true;
      };
      if (as_strong(a, b)) ++weaker;
      if (as_strong(b, a)) ++stronger;
    }
    out[a].emplace_back(2, weaker, stronger, 0);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

}  // namespace

std::optional<RenamingMap> problems_isomorphic(const Problem& lhs, const Problem& rhs) {
  if (lhs.delta() != rhs.delta()) return std::nullopt;
  if (lhs.alphabet().size() != rhs.alphabet().size()) return std::nullopt;
  if (lhs.nodes().configs().size() != rhs.nodes().configs().size() ||
      lhs.edges().configs().size() != rhs.edges().configs().size()) {
    return std::nullopt;
  }
  const LabelSet& from = lhs.alphabet();
  const LabelSet& to = rhs.alphabet();
  const auto fl = fingerprints(lhs);
  const auto fr = fingerprints(rhs);
  {
    auto a = fl;
    auto b = fr;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  const std::size_t n = from.size();
  std::vector<std::vector<std::size_t>> options(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (fl[i] == fr[j]) options[i].push_back(j);
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return options[a].size() < options[b].size();
  });

  std::vector<char> used(n, 0);
  RenamingMap map;
  std::optional<RenamingMap> found;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) {
      if (rename_problem(lhs, map) == rhs) {
        found = map;
        return true;
      }
      return false;
    }
    const std::size_t i = order[depth];
    for (std::size_t j : options[i]) {
      if (used[j]) continue;
      used[j] = 1;
      map[from[i]] = to[j];
      if (self(self, depth + 1)) return true;
      used[j] = 0;
    }
    map.erase(from[i]);
    return false;
  };
  search(search, 0);
  return found;
}

}  // namespace relim
