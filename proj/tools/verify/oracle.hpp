#pragma once

// Brute-force reference implementations. They read problems through the
// plain data accessors only and never call engine algorithms.

#include <map>
#include <set>
#include <vector>

#include "relim/problem.hpp"
#include "relim/round_elim.hpp"

namespace oracle {

using relim::Label;
using relim::LabelSet;

/// A plain configuration as a sorted label vector.
using Plain = std::vector<Label>;
/// A set configuration as a vector of sets, sorted.
using SetTuple = std::vector<LabelSet>;

/// Cartesian-product expansion of every condensed configuration.
std::set<Plain> expand(const relim::Constraint& constraint);
std::set<Plain> expand(const relim::CondensedConfig& config);

bool contains(const std::set<Plain>& expansion, Plain plain);

/// All nonempty subsets of `labels`.
std::vector<LabelSet> subsets(const LabelSet& labels);

/// All set tuples of the constraint's arity over nonempty subsets whose every
/// selection is in the expansion, then filtered to the maximal ones.
std::set<SetTuple> maximal_tuples(const relim::Constraint& constraint,
                                  const LabelSet& alphabet);

/// `from` fits slotwise into `to` under some permutation (tries all).
bool relaxes(const SetTuple& from, const SetTuple& to);

/// Lifted problem as plain set tuples on both sides.
struct Lifted {
  std::set<LabelSet> labels;
  std::set<SetTuple> nodes;
  std::set<SetTuple> edges;

  friend bool operator==(const Lifted&, const Lifted&) = default;
};

/// Opposite side by existential definition: every multiset over the new
/// labels for which one choice of members lies in the expansion.
Lifted re(const relim::Problem& problem);
Lifted rere(const relim::Problem& problem);

/// Engine output translated to member sets, constraints fully expanded.
Lifted view(const relim::LiftedProblem& lifted);

/// Tries every bijection.
bool isomorphic(const relim::Problem& lhs, const relim::Problem& rhs);

/// `a` is at least as strong as `b`: replacing one `b` by `a` in any
/// configuration of the expansion stays inside it.
bool at_least_as_strong(const Label& a, const Label& b, const relim::Constraint& constraint);

/// Nonempty subsets closed under taking stronger labels, in canonical set order.
std::vector<LabelSet> right_closed(const relim::Constraint& constraint, const LabelSet& alphabet);

}  // namespace oracle
