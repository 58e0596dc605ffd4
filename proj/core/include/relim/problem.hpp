#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relim {

/// An atomic label. Canonical form: `[A-Z][A-Z0-9']*`.
using Label = std::string;

/// A sorted, duplicate-free set of labels.
using LabelSet = std::vector<Label>;

bool is_valid_label(std::string_view name);

/// Sorts and deduplicates.
LabelSet make_label_set(std::vector<Label> labels);

/// Canonical set order: by size, then lexicographically by member list.
bool set_less(const LabelSet& lhs, const LabelSet& rhs);

bool is_subset(const LabelSet& sub, const LabelSet& super);

/// A disjunction `[L1 L2 ...]`. Singletons print without brackets.
struct Group {
  LabelSet members;

  Group() = default;
  explicit Group(LabelSet labels);
  explicit Group(Label label) : members{std::move(label)} {}

  bool singleton() const { return members.size() == 1; }
  std::string to_string() const;

  friend bool operator==(const Group&, const Group&) = default;
  friend bool operator<(const Group& lhs, const Group& rhs) {
    return set_less(lhs.members, rhs.members);
  }
};

struct Item {
  Group group;
  int multiplicity = 1;

  friend bool operator==(const Item&, const Item&) = default;
};

/// A multiset of groups with multiplicities, stored canonically: equal
/// groups merged, items sorted by group order.
///
/// The same type represents set-configurations, where each group is read
/// as one set-valued slot rather than as a disjunction.
class CondensedConfig {
 public:
  CondensedConfig() = default;
  explicit CondensedConfig(std::vector<Item> items);

  /// One singleton group per entry; repeated labels accumulate.
  static CondensedConfig plain(const std::vector<Label>& labels);

  int arity() const { return arity_; }
  const std::vector<Item>& items() const { return items_; }
  bool is_plain() const;

  /// Labels of a plain configuration, with repetition, in canonical order.
  std::vector<Label> labels() const;
  LabelSet label_set() const;

  const std::string& to_string() const { return key_; }

  friend bool operator==(const CondensedConfig& lhs,
                         const CondensedConfig& rhs) {
    return lhs.key_ == rhs.key_;
  }
  friend std::strong_ordering operator<=>(const CondensedConfig& lhs,
                                          const CondensedConfig& rhs) {
    return lhs.key_ <=> rhs.key_;
  }

 private:
  std::vector<Item> items_;
  int arity_ = 0;
  std::string key_;
};

/// Set-configuration: each slot holds a set of labels.
using SetConfig = CondensedConfig;

class Constraint {
 public:
  Constraint() = default;
  /// Drops exact duplicates and sorts. Throws if an arity differs.
  Constraint(int arity, std::vector<CondensedConfig> configs);

  int arity() const { return arity_; }
  const std::vector<CondensedConfig>& configs() const { return configs_; }
  bool empty() const { return configs_.empty(); }
  LabelSet labels() const;

  friend bool operator==(const Constraint&, const Constraint&) = default;

 private:
  int arity_ = 0;
  std::vector<CondensedConfig> configs_;
};

class Problem {
 public:
  Problem() = default;
  Problem(int delta, Constraint nodes, Constraint edges, std::string note = {});

  int delta() const { return delta_; }
  const Constraint& nodes() const { return nodes_; }
  const Constraint& edges() const { return edges_; }
  /// Labels used by either constraint (labels are declared by use).
  const LabelSet& alphabet() const { return alphabet_; }
  const std::string& note() const { return note_; }
  void set_note(std::string note) { note_ = std::move(note); }

  /// Compares semantics-bearing fields; the note is ignored.
  friend bool operator==(const Problem& lhs, const Problem& rhs) {
    return lhs.delta_ == rhs.delta_ && lhs.nodes_ == rhs.nodes_ &&
           lhs.edges_ == rhs.edges_;
  }

 private:
  int delta_ = 0;
  Constraint nodes_;
  Constraint edges_;
  LabelSet alphabet_;
  std::string note_;
};

using RenamingMap = std::map<Label, Label>;

/// Every plain configuration contained in `config`, sorted and deduplicated.
std::vector<CondensedConfig> expand_config(const CondensedConfig& config);

/// Multiset membership of a plain configuration, decided by matching the
/// configuration's labels onto the groups of each condensed config.
bool config_in_constraint(const CondensedConfig& plain, const Constraint& constraint);

/// Throws PreconditionError when `map` is not total on the alphabet or not injective.
Problem rename_problem(const Problem& problem, const RenamingMap& map);
Constraint rename_constraint(const Constraint& constraint, const RenamingMap& map);

/// A bijection m with rename_problem(lhs, m) == rhs, if any exists.
std::optional<RenamingMap> problems_isomorphic(const Problem& lhs, const Problem& rhs);

}  // namespace relim
