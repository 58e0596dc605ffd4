#pragma once

// Bitmask representation shared by the engine. Labels are indexed by their
// position in a sorted alphabet; a set of labels is a 64-bit mask.

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "relim/problem.hpp"

namespace relim::detail {

using Mask = std::uint64_t;
inline constexpr int kMaxLabels = 64;

inline Mask bit(int index) { return Mask{1} << index; }

class Index {
 public:
  Index() = default;
  /// Throws PreconditionError beyond kMaxLabels labels.
  explicit Index(LabelSet labels);

  int size() const { return static_cast<int>(names_.size()); }
  const LabelSet& names() const { return names_; }
  const Label& name(int index) const { return names_[index]; }
  /// -1 when absent.
  int find(const Label& label) const;
  int at(const Label& label) const;

  Mask mask(const LabelSet& labels) const;
  LabelSet labels(Mask mask) const;
  Mask all() const { return names_.size() == 64 ? ~Mask{0} : bit(size()) - 1; }

 private:
  LabelSet names_;
  std::unordered_map<Label, int> positions_;
};

/// Canonical set order on masks over the same index: size, then member list.
bool mask_less(Mask lhs, Mask rhs);

struct MaskItem {
  Mask mask;
  int mult;
};
using MaskConfig = std::vector<MaskItem>;

struct MaskConstraint {
  int arity = 0;
  std::vector<MaskConfig> configs;
};

MaskConfig to_mask_config(const CondensedConfig& config, const Index& index);
MaskConstraint to_masks(const Constraint& constraint, const Index& index);

/// Label multiplicities indexed by label position.
using Counts = std::vector<int>;

struct CountsHash {
  std::size_t operator()(const Counts& counts) const noexcept;
};
using CountsSet = std::unordered_set<Counts, CountsHash>;

/// Whether the labels in `counts` (total at most the arity) can be placed
/// into distinct slots of `config`. At full arity this is membership.
bool fits(const Counts& counts, const MaskConfig& config);
bool fits_any(const Counts& counts, const MaskConstraint& constraint);

/// All plain configurations of the constraint's expansion.
void expand_into(const MaskConfig& config, int labels, CountsSet& out);
CountsSet expand(const MaskConstraint& constraint, int labels);

CondensedConfig counts_to_config(const Counts& counts, const Index& index);
Counts config_to_counts(const CondensedConfig& plain, const Index& index);

/// Universal membership of set tuples, with a memo of partial fits shared
/// across queries against one constraint.
class UniversalChecker {
 public:
  UniversalChecker(const MaskConstraint& constraint, int labels)
      : constraint_(&constraint), labels_(labels) {}

  /// Extends every partial selection in `state` by one label of `slot`.
  /// Returns false as soon as some extension cannot reach the constraint.
  bool extend(const CountsSet& state, Mask slot, CountsSet& next);

  /// Every selection from the slots lies in the constraint.
  bool check(const std::vector<Mask>& slots);

  bool partial_fits(const Counts& counts);

 private:
  const MaskConstraint* constraint_;
  int labels_;
  std::unordered_map<Counts, bool, CountsHash> memo_;
};

/// Max-flow feasibility of placing `supply[i]` units into bins with
/// capacity `capacity[j]`, where `allowed[i][j]` marks admissible pairs.
/// Fills `assignment[i][j]` with the flow when non-null.
bool transport(const std::vector<int>& supply, const std::vector<int>& capacity,
               const std::vector<std::vector<char>>& allowed,
               std::vector<std::vector<int>>* assignment = nullptr);

}  // namespace relim::detail
