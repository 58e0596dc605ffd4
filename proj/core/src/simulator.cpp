#include "relim/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "indexed.hpp"
#include "relim/errors.hpp"
#include "relim/family.hpp"

namespace relim {

int LabeledTree::other(int edge, int node) const {
  const auto& e = edges[edge];
  return e.u == node ? e.v : e.u;
}

int LabeledTree::side(int edge, int node) const {
  const auto& e = edges[edge];
  if (e.u == node) return 0;
  if (e.v == node) return 1;
  throw PreconditionError("node " + std::to_string(node) + " is not an endpoint of edge " +
                          std::to_string(edge));
}

int LabeledTree::port(int edge, int node) const {
  return side(edge, node) == 0 ? edges[edge].port_u : edges[edge].port_v;
}

const Label& LabeledTree::label(int edge, int node) const {
  return labels.at(edge)[side(edge, node)];
}

void LabeledTree::set_label(int edge, int node, const Label& label) {
  if (labels.size() != edges.size()) labels.assign(edges.size(), {});
  labels[edge][side(edge, node)] = label;
}

void LabeledTree::clear_labels() { labels.clear(); }

void LabeledTree::validate() const {
  if (nodes < 1) throw PreconditionError("a tree needs at least one node");
  if (static_cast<int>(edges.size()) != nodes - 1) {
    throw PreconditionError("a tree on n nodes has n-1 edges");
  }
  if (static_cast<int>(incident.size()) != nodes) throw PreconditionError("incidence size");
  for (int v = 0; v < nodes; ++v) {
    if (degree(v) > delta) {
      throw PreconditionError("node " + std::to_string(v) + " has degree above delta");
    }
    std::vector<int> ports;
    std::set<int> colors;
    for (int e : incident[v]) {
      ports.push_back(port(e, v));
      if (colored) {
        int c = edges[e].color;
        if (c < 1 || c > delta) throw PreconditionError("edge color outside 1..delta");
        if (!colors.insert(c).second) {
          throw PreconditionError("coloring is not proper at node " + std::to_string(v));
        }
      }
    }
    std::vector<int> sorted = ports;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != ports) throw PreconditionError("incident edges are not sorted by port");
    if (symmetric) {
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
          (!sorted.empty() && (sorted.front() < 1 || sorted.back() > delta))) {
        throw PreconditionError("symmetric ports must be distinct in 1..delta");
      }
    } else {
      for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
        if (sorted[i] != i + 1) {
          throw PreconditionError("ports at node " + std::to_string(v) +
                                  " are not a permutation of 1..deg");
        }
      }
    }
  }
  for (const auto& e : edges) {
    if (symmetric && (e.port_u != e.port_v || e.port_u != e.color)) {
      throw PreconditionError("symmetric edges need equal ports matching the color");
    }
  }
  // Connectivity (with n-1 edges this also gives acyclicity).
  std::vector<char> seen(nodes, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : incident[v]) {
      int w = other(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  if (count != nodes) throw PreconditionError("the graph is not connected");
  if (labeled() && labels.size() != edges.size()) throw PreconditionError("label table size");
}

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[pick(rng, i)]);
}

void sort_incident(LabeledTree& t) {
  for (int v = 0; v < t.nodes; ++v) {
    std::sort(t.incident[v].begin(), t.incident[v].end(),
              [&](int a, int b) { return t.port(a, v) < t.port(b, v); });
  }
}

// Children ports continue after the parent edge's port 1.
LabeledTree from_parents(const std::vector<int>& parent, int delta, Rng* rng) {
  LabeledTree t;
  t.delta = delta;
  t.nodes = static_cast<int>(parent.size());
  t.incident.assign(t.nodes, {});
  for (int i = 1; i < t.nodes; ++i) {
    if (parent[i] < 0 || parent[i] >= i) {
      throw PreconditionError("parent of node " + std::to_string(i) + " must precede it");
    }
    TreeEdge e;
    e.u = parent[i];
    e.v = i;
    t.edges.push_back(e);
    t.incident[e.u].push_back(static_cast<int>(t.edges.size()) - 1);
    t.incident[e.v].push_back(static_cast<int>(t.edges.size()) - 1);
  }
  for (int v = 0; v < t.nodes; ++v) {
    if (t.degree(v) > delta) {
      throw PreconditionError("node " + std::to_string(v) + " exceeds degree " +
                              std::to_string(delta));
    }
    std::vector<int> ports(t.degree(v));
    std::iota(ports.begin(), ports.end(), 1);
    if (rng != nullptr) shuffle(ports, *rng);
    for (std::size_t j = 0; j < ports.size(); ++j) {
      int e = t.incident[v][j];
      if (t.edges[e].u == v) {
        t.edges[e].port_u = ports[j];
      } else {
        t.edges[e].port_v = ports[j];
      }
    }
  }
  sort_incident(t);
  return t;
}

// Tie-break order for per-node choices: ascending color, then port.
std::vector<int> ordered_edges(const LabeledTree& t, int v) {
  std::vector<int> out = t.incident[v];
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    int ca = t.colored ? t.edges[a].color : 0;
    int cb = t.colored ? t.edges[b].color : 0;
    if (ca != cb) return ca < cb;
    return t.port(a, v) < t.port(b, v);
  });
  return out;
}

std::vector<int> processing_order(const LabeledTree& t, const NodeOrder& order) {
  if (!order) {
    std::vector<int> all(t.nodes);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> sorted = *order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < t.nodes; ++i) {
    if (static_cast<int>(sorted.size()) != t.nodes || sorted[i] != i) {
      throw PreconditionError("node order must be a permutation of all nodes");
    }
  }
  return *order;
}

void require_labeled(const LabeledTree& t) {
  if (!t.labeled() && !t.edges.empty()) {
    throw PreconditionError("the tree carries no labeling");
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    for (int s = 0; s < 2; ++s) {
      if (t.labels[e][s].empty()) {
        throw PreconditionError("half-edge " + std::to_string(e) + "/" + std::to_string(s + 1) +
                                " is unlabeled");
      }
    }
  }
}

int count_label(const LabeledTree& t, int v, const Label& l) {
  int n = 0;
  for (int e : t.incident[v]) n += t.label(e, v) == l ? 1 : 0;
  return n;
}

}  // namespace

LabeledTree tree_from_parents(const std::vector<int>& parent, int delta) {
  if (parent.empty()) throw PreconditionError("n >= 1 fails");
  if (delta < 2) throw PreconditionError("delta >= 2 fails");
  auto t = from_parents(parent, delta, nullptr);
  t.validate();
  return t;
}

LabeledTree random_tree(int n, int delta, std::uint64_t seed, bool symmetric) {
  if (n < 1) throw PreconditionError("n >= 1 fails (n = " + std::to_string(n) + ")");
  if (delta < 2) throw PreconditionError("delta >= 2 fails (delta = " + std::to_string(delta) + ")");
  Rng rng(seed);
  std::vector<int> parent(n, -1);
  std::vector<int> degree(n, 0);
  std::vector<int> open{0};  // nodes with degree below delta
  for (int i = 1; i < n; ++i) {
    std::size_t slot = pick(rng, open.size());
    int p = open[slot];
    parent[i] = p;
    if (++degree[p] == delta) {
      open[slot] = open.back();
      open.pop_back();
    }
    degree[i] = 1;
    if (degree[i] < delta) open.push_back(i);
  }
  auto t = from_parents(parent, delta, &rng);
  if (symmetric) t = make_symmetric(t);
  t.validate();
  return t;
}

LabeledTree complete_tree(int delta, int depth) {
  if (delta < 2) throw PreconditionError("delta >= 2 fails");
  if (depth < 0) throw PreconditionError("depth >= 0 fails");
  std::vector<int> parent{-1};
  std::vector<int> level{0};
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (level[i] == depth) continue;
    int children = i == 0 ? delta : delta - 1;
    for (int c = 0; c < children; ++c) {
      parent.push_back(static_cast<int>(i));
      level.push_back(level[i] + 1);
    }
  }
  return tree_from_parents(parent, delta);
}

LabeledTree path_tree(int n, int delta) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i - 1;
  return tree_from_parents(parent, delta);
}

LabeledTree star_tree(int leaves, int delta) {
  std::vector<int> parent(leaves + 1, 0);
  parent[0] = -1;
  return tree_from_parents(parent, delta);
}

LabeledTree proper_edge_coloring(const LabeledTree& tree) {
  LabeledTree t = tree;
  for (auto& e : t.edges) e.color = 0;
  std::vector<char> seen(t.nodes, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    std::set<int> used;
    for (int e : t.incident[v]) {
      if (t.edges[e].color != 0) used.insert(t.edges[e].color);
    }
    int next = 1;
    for (int e : t.incident[v]) {
      if (t.edges[e].color != 0) continue;
      while (used.contains(next)) ++next;
      t.edges[e].color = next;
      used.insert(next);
      int w = t.other(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
    }
    for (int e : t.incident[v]) {
      int w = t.other(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
    }
  }
  t.colored = true;
  t.validate();
  return t;
}

LabeledTree make_symmetric(const LabeledTree& tree) {
  LabeledTree t = tree.colored ? tree : proper_edge_coloring(tree);
  for (auto& e : t.edges) {
    e.port_u = e.color;
    e.port_v = e.color;
  }
  t.symmetric = true;
  sort_incident(t);
  t.validate();
  return t;
}

DSolution greedy_kods(const LabeledTree& t, int k) {
  if (k < 0 || k > t.delta) throw PreconditionError("0 <= k <= delta fails");
  DSolution s;
  s.in_set.assign(t.nodes, 0);
  s.tail.assign(t.edges.size(), -1);
  for (int v = 0; v < t.nodes; ++v) {
    int lower = 0;
    for (int e : t.incident[v]) {
      int w = t.other(e, v);
      if (w < v && s.in_set[w]) ++lower;
    }
    if (lower <= k) s.in_set[v] = 1;
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& edge = t.edges[e];
    if (s.in_set[edge.u] && s.in_set[edge.v]) s.tail[e] = std::max(edge.u, edge.v);
  }
  return s;
}

Verdict check_kods(const LabeledTree& t, const DSolution& s, int k) {
  Verdict v;
  if (static_cast<int>(s.in_set.size()) != t.nodes || s.tail.size() != t.edges.size()) {
    v.witness.push_back("size mismatch");
    v.narrative = "solution does not match the tree";
    return v;
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& edge = t.edges[e];
    bool inside = s.in_set[edge.u] && s.in_set[edge.v];
    bool oriented = s.tail[e] == edge.u || s.tail[e] == edge.v;
    if (inside != oriented || (!inside && s.tail[e] != -1)) {
      v.witness.push_back("edge " + std::to_string(e));
      v.narrative = "edge " + std::to_string(e) + " has a wrong orientation entry";
      return v;
    }
  }
  for (int n = 0; n < t.nodes; ++n) {
    if (s.in_set[n]) {
      int out = 0;
      for (int e : t.incident[n]) out += s.tail[e] == n ? 1 : 0;
      if (out > k) {
        v.witness.push_back("node " + std::to_string(n));
        v.narrative = "node " + std::to_string(n) + " has outdegree " + std::to_string(out) +
                      " > " + std::to_string(k);
        return v;
      }
    } else {
      bool dominated = false;
      for (int e : t.incident[n]) dominated = dominated || s.in_set[t.other(e, n)];
      if (!dominated) {
        v.witness.push_back("node " + std::to_string(n));
        v.narrative = "node " + std::to_string(n) + " is not dominated";
        return v;
      }
    }
  }
  v.holds = true;
  v.narrative = "dominating, outdegree at most " + std::to_string(k);
  return v;
}

LabelingReport check_labeling(const LabeledTree& t, const Problem& p) {
  require_labeled(t);
  detail::Index index(p.alphabet());
  const auto nodes = detail::to_masks(p.nodes(), index);
  const auto edges = detail::to_masks(p.edges(), index);
  auto counts_of = [&](const std::vector<Label>& labels, detail::Counts& counts) {
    counts.assign(index.size(), 0);
    for (const auto& l : labels) {
      int i = index.find(l);
      if (i < 0) return false;
      ++counts[i];
    }
    return true;
  };

  LabelingReport report;
  Verdict& v = report.verdict;
  detail::Counts counts;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& pair = t.labels[e];
    if (!counts_of({pair[0], pair[1]}, counts) || !detail::fits_any(counts, edges)) {
      auto c = CondensedConfig::plain({pair[0], pair[1]});
      v.witness.push_back("edge " + std::to_string(e) + ": " + c.to_string());
      v.narrative = "edge " + std::to_string(e) + " (" + std::to_string(t.edges[e].u) + "-" +
                    std::to_string(t.edges[e].v) + ") carries " + c.to_string() +
                    ", not an edge configuration";
      return report;
    }
  }
  for (int n = 0; n < t.nodes; ++n) {
    if (t.degree(n) < p.delta()) {
      report.exempt.push_back(n);
      continue;
    }
    std::vector<Label> labels;
    for (int e : t.incident[n]) labels.push_back(t.label(e, n));
    if (!counts_of(labels, counts) || !detail::fits_any(counts, nodes)) {
      auto c = CondensedConfig::plain(labels);
      v.witness.push_back("node " + std::to_string(n) + ": " + c.to_string());
      v.narrative = "node " + std::to_string(n) + " outputs " + c.to_string() +
                    ", not a node configuration";
      return report;
    }
  }
  v.holds = true;
  v.narrative = "all " + std::to_string(t.edges.size()) + " edges and " +
                std::to_string(t.nodes - static_cast<int>(report.exempt.size())) +
                " full-degree nodes valid; " + std::to_string(report.exempt.size()) +
                " nodes below degree " + std::to_string(p.delta()) + " exempt";
  return report;
}

LabeledTree kods_to_family_labeling(const LabeledTree& tree, const DSolution& s, int a, int k) {
  FamilyParams params(tree.delta, a, k);
  Verdict ok = check_kods(tree, s, k);
  if (!ok.holds) throw PreconditionError("invalid dominating set: " + ok.narrative);
  LabeledTree t = tree;
  t.labels.assign(t.edges.size(), {});
  for (int v = 0; v < t.nodes; ++v) {
    const auto order = ordered_edges(t, v);
    if (s.in_set[v]) {
      int xs = 0;
      for (int e : order) {
        bool out = s.tail[e] == v;
        t.set_label(e, v, out ? "X" : "M");
        xs += out ? 1 : 0;
      }
      const int want = std::min(k, t.degree(v));
      for (int e : order) {
        if (xs >= want) break;
        if (t.label(e, v) == "M") {
          t.set_label(e, v, "X");
          ++xs;
        }
      }
    } else {
      bool pointed = false;
      for (int e : order) {
        bool to_s = s.in_set[t.other(e, v)] != 0;
        t.set_label(e, v, !pointed && to_s ? "P" : "O");
        pointed = pointed || to_s;
      }
    }
  }
  return t;
}

LabeledTree plus_to_family_transform(const LabeledTree& tree, int a, int x,
                                     const NodeOrder& order) {
  if (!tree.colored) throw PreconditionError("the transform needs a proper edge coloring");
  if (!(2 * x + 1 <= a && a <= tree.delta)) {
    throw PreconditionError("2x+1 <= a <= delta fails for a=" + std::to_string(a) +
                            ", x=" + std::to_string(x));
  }
  require_labeled(tree);
  const Problem plus = make_plus_problem(FamilyParams(tree.delta, a, x));
  const auto input = check_labeling(tree, plus);
  if (!input.verdict.holds) {
    throw PreconditionError("input is not a valid plus labeling: " + input.verdict.narrative);
  }
  const int low = (a - 1) / 2;
  const int keep = (a - 2 * x - 1) / 2;
  LabeledTree out = tree;
  for (int v : processing_order(tree, order)) {
    const auto edges = ordered_edges(tree, v);
    const bool c_node = count_label(tree, v, "C") > 0;
    const bool a_node = !c_node && count_label(tree, v, "A") > 0;
    if (!c_node && !a_node) continue;
    std::vector<int> as;
    for (int e : edges) {
      const Label& l = tree.label(e, v);
      const bool low_color = tree.edges[e].color <= low;
      Label next;
      if (c_node) {
        next = (l == "C" && low_color) ? "A" : "X";
      } else {
        next = (l == "A" && !low_color) ? "A" : (l == "A" ? "X" : l);
      }
      out.set_label(e, v, next);
      if (next == "A") as.push_back(e);
    }
    for (std::size_t i = 0; i + keep < as.size(); ++i) out.set_label(as[i], v, "X");
  }
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    if (out.labels[e][0] == "A" && out.labels[e][1] == "A") {
      throw Error("transform produced an A A edge at edge " + std::to_string(e));
    }
  }
  return out;
}

LabeledTree weaken_labeling(const LabeledTree& tree, int a_from, int x_from, int a, int x,
                            const NodeOrder& order) {
  if (a > a_from) throw PreconditionError("a <= a' fails");
  if (x < x_from) throw PreconditionError("x >= x' fails");
  require_labeled(tree);
  FamilyParams target(tree.delta, a, x);
  const auto input = check_labeling(tree, make_family_problem(FamilyParams(tree.delta, a_from, x_from)));
  if (!input.verdict.holds) {
    throw PreconditionError("input is not a valid family labeling: " + input.verdict.narrative);
  }
  LabeledTree out = tree;
  for (int v : processing_order(tree, order)) {
    const auto edges = ordered_edges(tree, v);
    if (count_label(tree, v, "M") > 0) {
      int need = x - count_label(tree, v, "X");
      for (int e : edges) {
        if (need <= 0) break;
        if (tree.label(e, v) == "M") {
          out.set_label(e, v, "X");
          --need;
        }
      }
    } else if (count_label(tree, v, "A") > 0) {
      int surplus = count_label(tree, v, "A") - a;
      for (int e : edges) {
        if (surplus <= 0) break;
        if (tree.label(e, v) == "A") {
          out.set_label(e, v, "X");
          --surplus;
        }
      }
    }
  }
  return out;
}

namespace {

class Generator {
 public:
  Generator(const LabeledTree& t, const Problem& p, std::uint64_t seed)
      : t_(t), p_(p), rng_(seed), index_(p.alphabet()), n_(index_.size()) {
    compat_.assign(n_, std::vector<char>(n_, 0));
    const auto edges = detail::to_masks(p.edges(), index_);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        detail::Counts c(n_, 0);
        ++c[a];
        ++c[b];
        compat_[a][b] = detail::fits_any(c, edges);
      }
    }
    for (const auto& counts : detail::expand(detail::to_masks(p.nodes(), index_), n_)) {
      configs_.push_back(counts);
    }
    std::sort(configs_.begin(), configs_.end());
  }

  std::optional<LabeledTree> run() {
    if (n_ == 0) return t_.nodes == 1 ? std::optional<LabeledTree>(with_empty()) : std::nullopt;
    order_tree();
    ok_.assign(t_.nodes, std::vector<char>(n_, 0));
    child_ok_.assign(t_.nodes, std::vector<char>(n_, 0));
    for (auto it = bfs_.rbegin(); it != bfs_.rend(); ++it) evaluate(*it);
    if (!root_ok_) return std::nullopt;
    LabeledTree out = t_;
    out.labels.assign(out.edges.size(), {});
    choose(0, -1, out);
    return out;
  }

 private:
  LabeledTree with_empty() const {
    LabeledTree out = t_;
    out.labels.assign(out.edges.size(), {});
    return out;
  }

  void order_tree() {
    parent_edge_.assign(t_.nodes, -1);
    std::vector<char> seen(t_.nodes, 0);
    bfs_.clear();
    bfs_.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < bfs_.size(); ++i) {
      int v = bfs_[i];
      for (int e : t_.incident[v]) {
        int w = t_.other(e, v);
        if (!seen[w]) {
          seen[w] = 1;
          parent_edge_[w] = e;
          bfs_.push_back(w);
        }
      }
    }
  }

  std::vector<int> children(int v) const {
    std::vector<int> out;
    for (int e : t_.incident[v]) {
      if (e != parent_edge_[v]) out.push_back(e);
    }
    return out;
  }

  // Children edges of v can take the labels in `counts` (as a multiset).
  bool matchable(const std::vector<int>& kids, int v, const detail::Counts& counts) const {
    std::vector<int> supply(kids.size(), 1);
    std::vector<std::vector<char>> allowed(kids.size(), std::vector<char>(n_, 0));
    for (std::size_t i = 0; i < kids.size(); ++i) {
      int c = t_.other(kids[i], v);
      for (int y = 0; y < n_; ++y) allowed[i][y] = counts[y] > 0 && child_ok_[c][y];
    }
    return detail::transport(supply, counts, allowed);
  }

  void evaluate(int v) {
    const auto kids = children(v);
    const bool has_parent = parent_edge_[v] >= 0;
    const bool full = t_.degree(v) == p_.delta();
    if (full) {
      for (const auto& c : configs_) {
        if (has_parent) {
          for (int l = 0; l < n_; ++l) {
            if (c[l] == 0 || ok_[v][l]) continue;
            auto rest = c;
            --rest[l];
            if (matchable(kids, v, rest)) ok_[v][l] = 1;
          }
        } else if (matchable(kids, v, c)) {
          root_ok_ = true;
        }
      }
    } else {
      bool all = std::all_of(kids.begin(), kids.end(), [&](int e) {
        int c = t_.other(e, v);
        return std::any_of(child_ok_[c].begin(), child_ok_[c].end(), [](char b) { return b; });
      });
      if (has_parent) {
        if (all) std::fill(ok_[v].begin(), ok_[v].end(), 1);
      } else {
        root_ok_ = all;
      }
    }
    if (has_parent) {
      for (int y = 0; y < n_; ++y) {
        for (int l = 0; l < n_; ++l) {
          if (compat_[y][l] && ok_[v][l]) {
            child_ok_[v][y] = 1;
            break;
          }
        }
      }
    }
  }

  // Random assignment of the multiset to children, by backtracking.
  bool assign(const std::vector<int>& kids, int v, std::size_t i, detail::Counts& counts,
              std::vector<int>& chosen) {
    if (i == kids.size()) return true;
    int c = t_.other(kids[i], v);
    std::vector<int> ys;
    for (int y = 0; y < n_; ++y) {
      if (counts[y] > 0 && child_ok_[c][y]) ys.push_back(y);
    }
    shuffle(ys, rng_);
    for (int y : ys) {
      --counts[y];
      chosen[i] = y;
      if (assign(kids, v, i + 1, counts, chosen)) return true;
      ++counts[y];
    }
    return false;
  }

  void choose(int v, int parent_label, LabeledTree& out) {
    auto kids = children(v);
    shuffle(kids, rng_);
    std::vector<int> chosen(kids.size(), -1);
    bool placed = false;
    if (t_.degree(v) == p_.delta()) {
      std::vector<std::size_t> candidates(configs_.size());
      std::iota(candidates.begin(), candidates.end(), 0);
      shuffle(candidates, rng_);
      for (std::size_t ci : candidates) {
        auto counts = configs_[ci];
        if (parent_label >= 0) {
          if (counts[parent_label] == 0) continue;
          --counts[parent_label];
        }
        if (assign(kids, v, 0, counts, chosen)) {
          placed = true;
          break;
        }
      }
    } else {
      placed = true;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        int c = t_.other(kids[i], v);
        std::vector<int> ys;
        for (int y = 0; y < n_; ++y) {
          if (child_ok_[c][y]) ys.push_back(y);
        }
        chosen[i] = ys[pick(rng_, ys.size())];
      }
    }
    if (!placed) throw Error("labeling search lost feasibility at node " + std::to_string(v));
    for (std::size_t i = 0; i < kids.size(); ++i) {
      int c = t_.other(kids[i], v);
      out.set_label(kids[i], v, index_.name(chosen[i]));
      std::vector<int> ls;
      for (int l = 0; l < n_; ++l) {
        if (compat_[chosen[i]][l] && ok_[c][l]) ls.push_back(l);
      }
      int l = ls[pick(rng_, ls.size())];
      out.set_label(kids[i], c, index_.name(l));
      choose(c, l, out);
    }
  }

  const LabeledTree& t_;
  const Problem& p_;
  Rng rng_;
  detail::Index index_;
  int n_;
  std::vector<std::vector<char>> compat_;
  std::vector<detail::Counts> configs_;
  std::vector<int> bfs_;
  std::vector<int> parent_edge_;
  std::vector<std::vector<char>> ok_;
  std::vector<std::vector<char>> child_ok_;
  bool root_ok_ = false;
};

}  // namespace

std::optional<LabeledTree> generate_valid_labeling(const LabeledTree& tree, const Problem& p,
                                                   std::uint64_t seed) {
  if (tree.delta != p.delta()) {
    throw PreconditionError("tree delta " + std::to_string(tree.delta) +
                            " differs from problem delta " + std::to_string(p.delta()));
  }
  return Generator(tree, p, seed).run();
}

LabeledTree apply_uniform_configuration(const LabeledTree& tree, const CondensedConfig& plain) {
  if (!plain.is_plain() || plain.arity() != tree.delta) {
    throw PreconditionError("need a plain configuration of arity delta");
  }
  const auto labels = plain.labels();
  LabeledTree out = tree;
  out.labels.assign(out.edges.size(), {});
  for (int v = 0; v < out.nodes; ++v) {
    for (int e : out.incident[v]) {
      int port = out.port(e, v);
      if (port < 1 || port > out.delta) throw PreconditionError("port outside 1..delta");
      out.set_label(e, v, labels[port - 1]);
    }
  }
  return out;
}

std::string tree_to_dot(const LabeledTree& t) {
  std::ostringstream out;
  out << "graph tree {\n";
  for (int v = 0; v < t.nodes; ++v) out << "  n" << v << " [label=\"" << v << "\"];\n";
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& edge = t.edges[e];
    out << "  n" << edge.u << " -- n" << edge.v << " [";
    if (t.colored) out << "label=\"c" << edge.color << "\", ";
    out << "taillabel=\"" << edge.port_u;
    if (t.labeled()) out << " " << t.labels[e][0];
    out << "\", headlabel=\"" << edge.port_v;
    if (t.labeled()) out << " " << t.labels[e][1];
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace relim
