#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relim/errors.hpp"
#include "relim/problem.hpp"

namespace relim {

/// Set-label dictionary: each set of source labels and its atomic name, in
/// canonical set order.
using SetLabelDictionary = std::vector<std::pair<LabelSet, Label>>;

enum class Transform { re, rere };

std::string to_string(Transform t);

struct LiftedProblem {
  Problem problem;
  SetLabelDictionary renaming;
  Transform transform = Transform::re;
  /// Canonical text of the source problem.
  std::string source;
  SearchStats stats;

  const LabelSet* members(const Label& name) const;
  const Label* name_of(const LabelSet& set) const;
};

struct EnumerationOptions {
  std::size_t max_labels = 10000;
  std::size_t max_configs = 100000;
  /// Worker threads for the candidate search; results do not depend on it.
  unsigned threads = 1;
  /// Re-run the search over all subsets and compare (alphabets of at most 6 labels).
  bool verify_brute_force = false;
  const std::atomic<bool>* cancel = nullptr;
  std::function<void(const SearchStats&)> progress;
};

/// Every selection of one label per slot is a configuration of `constraint`.
bool universal_membership(const SetConfig& tuple, const Constraint& constraint);

/// All set-configurations with universal membership that are maximal under
/// slotwise inclusion up to permutation. When `candidates` is given, slots
/// are drawn from those sets only (right-closed sets suffice).
std::vector<SetConfig> maximal_set_configs(
    const Constraint& constraint, const LabelSet& alphabet,
    const std::optional<std::vector<LabelSet>>& candidates = std::nullopt,
    const EnumerationOptions& options = {}, SearchStats* stats = nullptr);

/// Replaces each label y of each group by the names of all sets containing
/// y. Configurations that end up with an empty group are dropped.
Constraint lift_exists_constraint(const Constraint& constraint,
                                  const SetLabelDictionary& dictionary);

/// Maximal edge set-configurations; node side lifted existentially.
LiftedProblem re(const Problem& problem, const EnumerationOptions& options = {});

/// Maximal node set-configurations; edge side lifted existentially.
LiftedProblem rere(const Problem& problem, const EnumerationOptions& options = {});

/// A, B, ..., Z, AA, AB, ...
Label fresh_name(std::size_t index);

/// Renames set-labels by member set. Sets not listed keep their current
/// name. Throws PreconditionError if the result is not injective.
LiftedProblem rename_lifted(const LiftedProblem& lifted,
                            const std::vector<std::pair<LabelSet, Label>>& names);

}  // namespace relim
