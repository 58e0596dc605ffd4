#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relim/analysis.hpp"
#include "relim/problem.hpp"

namespace relim {

/// An edge between `u` (edge port 1) and `v` (edge port 2).
struct TreeEdge {
  int u = 0;
  int v = 0;
  int port_u = 0;
  int port_v = 0;
  /// 0 when uncolored, otherwise in 1..delta.
  int color = 0;
};

/// Port-numbered tree with optional edge coloring and half-edge labels.
///
/// In the symmetric family every edge has the same port at both endpoints
/// (its color), so ports are distinct values in 1..delta rather than a
/// permutation of 1..deg.
struct LabeledTree {
  int delta = 2;
  int nodes = 1;
  bool symmetric = false;
  bool colored = false;
  std::vector<TreeEdge> edges;
  /// Edge ids per node, sorted by the node's port.
  std::vector<std::vector<int>> incident;
  /// labels[e][0] is written by edges[e].u, labels[e][1] by edges[e].v.
  /// Empty until a labeling is attached.
  std::vector<std::array<Label, 2>> labels;

  int degree(int node) const { return static_cast<int>(incident[node].size()); }
  int other(int edge, int node) const;
  /// 0 for the edge-port-1 endpoint, 1 for the other.
  int side(int edge, int node) const;
  int port(int edge, int node) const;
  bool labeled() const { return !labels.empty(); }
  const Label& label(int edge, int node) const;
  void set_label(int edge, int node, const Label& label);
  void clear_labels();

  /// Throws PreconditionError when a structural invariant is violated.
  void validate() const;
};

/// Builds a tree from parent links (parent[0] ignored, parent[i] < i).
LabeledTree tree_from_parents(const std::vector<int>& parent, int delta);

/// Deterministic from `seed`. Throws PreconditionError unless n >= 1 and
/// delta >= 2. The symmetric mode colors the tree and uses colors as ports.
LabeledTree random_tree(int n, int delta, std::uint64_t seed, bool symmetric = false);

/// Root with delta children, inner nodes with delta-1 children, `depth` levels.
LabeledTree complete_tree(int delta, int depth);

LabeledTree path_tree(int n, int delta);
LabeledTree star_tree(int leaves, int delta);

/// Greedy proper coloring in BFS order from node 0; children take the
/// smallest free colors in port order.
LabeledTree proper_edge_coloring(const LabeledTree& tree);

/// Colors the tree and sets both ports of every edge to its color.
LabeledTree make_symmetric(const LabeledTree& tree);

struct DSolution {
  std::vector<char> in_set;
  /// For edges inside S, the endpoint the edge points away from; -1 elsewhere.
  std::vector<int> tail;
};

/// Nodes in ascending index join S when at most k smaller-index neighbors
/// are already in S; edges inside S point toward the smaller index.
DSolution greedy_kods(const LabeledTree& tree, int k);

Verdict check_kods(const LabeledTree& tree, const DSolution& solution, int k);

struct LabelingReport {
  Verdict verdict;
  /// Nodes of degree below delta, exempt from the node constraint.
  std::vector<int> exempt;
};

/// Throws PreconditionError when a half-edge is unlabeled.
LabelingReport check_labeling(const LabeledTree& tree, const Problem& problem);

/// One-round conversion of a k-outdegree dominating set into a labeling of
/// the family problem with x = k (any a). Throws if the solution is invalid.
LabeledTree kods_to_family_labeling(const LabeledTree& tree, const DSolution& solution, int a,
                                    int k);

/// Per-node processing order for the 0-round transforms; nullopt means
/// ascending node index. Results never depend on it.
using NodeOrder = std::optional<std::vector<int>>;

/// Rewrites a plus-family labeling into a family labeling with parameters
/// (floor((a-2x-1)/2), x+1) using the edge coloring.
LabeledTree plus_to_family_transform(const LabeledTree& tree, int a, int x,
                                     const NodeOrder& order = std::nullopt);

/// Demotes M and A to X so a labeling for (a_from, x_from) becomes one for
/// (a, x). Requires a <= a_from and x >= x_from.
LabeledTree weaken_labeling(const LabeledTree& tree, int a_from, int x_from, int a, int x,
                            const NodeOrder& order = std::nullopt);

/// Tree dynamic program for feasibility, then a seeded top-down choice.
std::optional<LabeledTree> generate_valid_labeling(const LabeledTree& tree,
                                                   const Problem& problem,
                                                   std::uint64_t seed);

/// Every node writes the configuration's labels on ports 1..delta in
/// canonical order. Meant for the symmetric family.
LabeledTree apply_uniform_configuration(const LabeledTree& tree, const CondensedConfig& plain);

/// Graphviz graph with ports, colors and half-edge labels.
std::string tree_to_dot(const LabeledTree& tree);

}  // namespace relim
