#include "relim/diagram.hpp"

#include <algorithm>
#include <functional>

#include "indexed.hpp"
#include "relim/errors.hpp"

namespace relim {

std::string to_string(Side side) { return side == Side::node ? "node" : "edge"; }

Side parse_side(const std::string& text) {
  if (text == "node" || text == "nodes") return Side::node;
  if (text == "edge" || text == "edges") return Side::edge;
  throw PreconditionError("side must be 'node' or 'edge', got '" + text + "'");
}

Diagram::Diagram(Side side, LabelSet labels, std::vector<std::vector<char>> at_least)
    : side_(side), labels_(std::move(labels)), at_least_(std::move(at_least)) {
  const int n = static_cast<int>(labels_.size());
  std::vector<int> rep(n, -1);
  for (int i = 0; i < n; ++i) {
    if (rep[i] >= 0) continue;
    LabelSet cls;
    for (int j = i; j < n; ++j) {
      if (rep[j] < 0 && at_least_[i][j] && at_least_[j][i]) {
        rep[j] = i;
        cls.push_back(labels_[j]);
      }
    }
    classes_.push_back(std::move(cls));
  }
  // Strictly stronger between representatives, then drop transitive shortcuts.
  auto stronger = [&](int a, int b) { return at_least_[a][b] && !at_least_[b][a]; };
  for (int lo = 0; lo < n; ++lo) {
    if (rep[lo] != lo) continue;
    for (int hi = 0; hi < n; ++hi) {
      if (rep[hi] != hi || !stronger(hi, lo)) continue;
      bool covered = true;
      for (int mid = 0; mid < n && covered; ++mid) {
        if (rep[mid] == mid && stronger(hi, mid) && stronger(mid, lo)) covered = false;
      }
      if (covered) edges_.emplace_back(labels_[lo], labels_[hi]);
    }
  }
}

int Diagram::position(const Label& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) {
    throw PreconditionError("label " + label + " is not in the diagram");
  }
  return static_cast<int>(it - labels_.begin());
}

bool Diagram::at_least_as_strong(const Label& a, const Label& b) const {
  return at_least_[position(a)][position(b)] != 0;
}

LabelSet Diagram::successors(const Label& label) const {
  const int i = position(label);
  LabelSet out;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (static_cast<int>(j) != i && at_least_[j][i]) out.push_back(labels_[j]);
  }
  return out;
}

bool Diagram::has_ties() const {
  return std::any_of(classes_.begin(), classes_.end(),
                     [](const LabelSet& c) { return c.size() > 1; });
}

namespace {

std::vector<std::vector<char>> strength_matrix(const detail::CountsSet& expansion, int n) {
  std::vector<std::vector<char>> at_least(n, std::vector<char>(n, 1));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      for (const auto& c : expansion) {
        if (c[b] == 0) continue;
        auto d = c;
        --d[b];
        ++d[a];
        if (!expansion.contains(d)) {
          at_least[a][b] = 0;
          break;
        }
      }
    }
  }
  return at_least;
}

}  // namespace

bool at_least_as_strong(const Label& a, const Label& b, const Constraint& constraint) {
  if (a == b) return true;
  LabelSet labels = constraint.labels();
  labels.push_back(a);
  labels.push_back(b);
  detail::Index index(std::move(labels));
  auto expansion = detail::expand(detail::to_masks(constraint, index), index.size());
  const int ia = index.at(a);
  const int ib = index.at(b);
  for (const auto& c : expansion) {
    if (c[ib] == 0) continue;
    auto d = c;
    --d[ib];
    ++d[ia];
    if (!expansion.contains(d)) return false;
  }
  return true;
}

Diagram build_diagram(const Constraint& constraint, const LabelSet& alphabet, Side side) {
  LabelSet labels = alphabet;
  LabelSet used = constraint.labels();
  labels.insert(labels.end(), used.begin(), used.end());
  detail::Index index(std::move(labels));
  auto expansion = detail::expand(detail::to_masks(constraint, index), index.size());
  return Diagram(side, index.names(), strength_matrix(expansion, index.size()));
}

Diagram build_diagram(const Problem& problem, Side side) {
  return build_diagram(side == Side::node ? problem.nodes() : problem.edges(),
                       problem.alphabet(), side);
}

std::vector<LabelSet> right_closed_sets(const Diagram& diagram, std::size_t cap) {
  const LabelSet& labels = diagram.labels();
  detail::Index index(labels);
  const int n = index.size();
  std::vector<detail::Mask> up(n, 0);    // labels at least as strong as i
  std::vector<detail::Mask> down(n, 0);  // labels i is at least as strong as
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (diagram.at_least_as_strong(labels[j], labels[i])) up[i] |= detail::bit(j);
      if (diagram.at_least_as_strong(labels[i], labels[j])) down[i] |= detail::bit(j);
    }
  }

  std::vector<detail::Mask> found;
  // Each label is decided once: including it forces everything above it in,
  // excluding it forces everything below it out.
  std::function<void(detail::Mask, detail::Mask)> walk = [&](detail::Mask in, detail::Mask out) {
    const detail::Mask decided = in | out;
    if (decided == index.all()) {
      if (in != 0) {
        if (found.size() >= cap) {
          SearchStats stats;
          stats.set_labels = found.size();
          throw BlowUpError("more than " + std::to_string(cap) + " right-closed sets", stats);
        }
        found.push_back(in);
      }
      return;
    }
    const int next = std::countr_zero(~decided);
    walk(in | up[next], out);
    walk(in, out | down[next]);
  };
  walk(0, 0);

  std::sort(found.begin(), found.end(), detail::mask_less);
  std::vector<LabelSet> out;
  out.reserve(found.size());
  for (auto m : found) out.push_back(index.labels(m));
  return out;
}

bool is_right_closed(const LabelSet& set, const Diagram& diagram) {
  if (set.empty()) throw PreconditionError("right-closedness is defined for nonempty sets");
  for (const auto& l : set) {
    for (const auto& s : diagram.successors(l)) {
      if (!std::binary_search(set.begin(), set.end(), s)) return false;
    }
  }
  return true;
}

std::string to_dot(const Diagram& diagram) {
  std::string out = "digraph " + to_string(diagram.side()) + "_diagram {\n";
  for (const auto& cls : diagram.classes()) {
    out += "  \"" + cls.front() + "\"";
    if (cls.size() > 1) {
      std::string label;
      for (const auto& l : cls) label += (label.empty() ? "" : " ") + l;
      out += " [label=\"" + label + "\", peripheries=2]";
    }
    out += ";\n";
  }
  for (const auto& [from, to] : diagram.edges()) {
    out += "  \"" + from + "\" -> \"" + to + "\";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace relim
