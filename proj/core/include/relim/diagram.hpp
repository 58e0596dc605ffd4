#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "relim/problem.hpp"

namespace relim {

enum class Side { node, edge };

std::string to_string(Side side);
/// Accepts "node"/"nodes"/"edge"/"edges". Throws PreconditionError otherwise.
Side parse_side(const std::string& text);

/// Strength relation of one constraint side, Hasse-reduced.
///
/// Labels that are mutually at least as strong form an equivalence class.
/// Classes are kept as distinct labels; `edges` connect class
/// representatives (the smallest member) and point from the weaker to the
/// stronger class.
class Diagram {
 public:
  Diagram() = default;
  Diagram(Side side, LabelSet labels, std::vector<std::vector<char>> at_least);

  Side side() const { return side_; }
  const LabelSet& labels() const { return labels_; }
  const std::vector<LabelSet>& classes() const { return classes_; }
  const std::vector<std::pair<Label, Label>>& edges() const { return edges_; }

  /// `a` is at least as strong as `b`.
  bool at_least_as_strong(const Label& a, const Label& b) const;
  /// Labels at least as strong as `label`, excluding itself.
  LabelSet successors(const Label& label) const;
  bool has_ties() const;

 private:
  int position(const Label& label) const;

  Side side_ = Side::edge;
  LabelSet labels_;
  std::vector<std::vector<char>> at_least_;  // at_least_[i][j]: i at least as strong as j
  std::vector<LabelSet> classes_;
  std::vector<std::pair<Label, Label>> edges_;
};

/// For every configuration of the expansion containing `b`, replacing one
/// `b` by `a` stays inside the constraint.
bool at_least_as_strong(const Label& a, const Label& b, const Constraint& constraint);

Diagram build_diagram(const Problem& problem, Side side);
Diagram build_diagram(const Constraint& constraint, const LabelSet& alphabet, Side side);

/// Nonempty label sets closed under taking stronger labels, in canonical
/// set order. Throws BlowUpError past `cap` sets.
std::vector<LabelSet> right_closed_sets(const Diagram& diagram, std::size_t cap = 100000);

bool is_right_closed(const LabelSet& set, const Diagram& diagram);

/// Graphviz digraph of the Hasse diagram.
std::string to_dot(const Diagram& diagram);

}  // namespace relim
