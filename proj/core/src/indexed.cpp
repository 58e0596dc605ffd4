#include "indexed.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "relim/errors.hpp"

namespace relim::detail {

Index::Index(LabelSet labels) : names_(make_label_set(std::move(labels))) {
  if (names_.size() > static_cast<std::size_t>(kMaxLabels)) {
    throw PreconditionError("alphabet has " + std::to_string(names_.size()) +
                            " labels; set operations support at most 64");
  }
  for (int i = 0; i < size(); ++i) positions_.emplace(names_[i], i);
}

int Index::find(const Label& label) const {
  auto it = positions_.find(label);
  return it == positions_.end() ? -1 : it->second;
}

int Index::at(const Label& label) const {
  int i = find(label);
  if (i < 0) throw PreconditionError("label " + label + " is not in the alphabet");
  return i;
}

Mask Index::mask(const LabelSet& labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(at(l));
  return m;
}

LabelSet Index::labels(Mask mask) const {
  LabelSet out;
  while (mask != 0) {
    int i = std::countr_zero(mask);
    out.push_back(names_[i]);
    mask &= mask - 1;
  }
  return out;
}

bool mask_less(Mask lhs, Mask rhs) {
  int pl = std::popcount(lhs);
  int pr = std::popcount(rhs);
  if (pl != pr) return pl < pr;
  // Member lists are ascending bit positions; the first differing position
  // decides, and the list holding the lower bit there is smaller.
  Mask diff = lhs ^ rhs;
  if (diff == 0) return false;
  return (lhs & (diff & -diff)) != 0;
}

MaskConfig to_mask_config(const CondensedConfig& config, const Index& index) {
  MaskConfig out;
  out.reserve(config.items().size());
  for (const auto& item : config.items()) {
    out.push_back({index.mask(item.group.members), item.multiplicity});
  }
  return out;
}

MaskConstraint to_masks(const Constraint& constraint, const Index& index) {
  MaskConstraint out;
  out.arity = constraint.arity();
  for (const auto& c : constraint.configs()) out.configs.push_back(to_mask_config(c, index));
  return out;
}

std::size_t CountsHash::operator()(const Counts& counts) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int c : counts) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

bool transport(const std::vector<int>& supply, const std::vector<int>& capacity,
               const std::vector<std::vector<char>>& allowed,
               std::vector<std::vector<int>>* assignment) {
  const int s = static_cast<int>(supply.size());
  const int b = static_cast<int>(capacity.size());
  const int n = s + b + 2;
  const int source = s + b;
  const int sink = s + b + 1;
  constexpr int kInf = std::numeric_limits<int>::max() / 2;

  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  int need = 0;
  for (int i = 0; i < s; ++i) {
    cap[source][i] = supply[i];
    need += supply[i];
    for (int j = 0; j < b; ++j) {
      if (allowed[i][j]) cap[i][s + j] = kInf;
    }
  }
  for (int j = 0; j < b; ++j) cap[s + j][sink] = capacity[j];

  int flow = 0;
  std::vector<int> parent(n);
  while (flow < need) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[source] = source;
    std::queue<int> q;
    q.push(source);
    while (!q.empty() && parent[sink] < 0) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v) {
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          q.push(v);
        }
      }
    }
    if (parent[sink] < 0) break;
    int push = kInf;
    for (int v = sink; v != source; v = parent[v]) push = std::min(push, cap[parent[v]][v]);
    for (int v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= push;
      cap[v][parent[v]] += push;
    }
    flow += push;
  }
  if (flow < need) return false;
  if (assignment != nullptr) {
    assignment->assign(s, std::vector<int>(b, 0));
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < b; ++j) {
        if (allowed[i][j]) (*assignment)[i][j] = cap[s + j][i];
      }
    }
  }
  return true;
}

bool fits(const Counts& counts, const MaskConfig& config) {
  int total = 0;
  Mask present = 0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] > 0) {
      total += counts[l];
      present |= bit(static_cast<int>(l));
    }
  }
  Mask covered = 0;
  bool all_singleton = true;
  for (const auto& item : config) {
    covered |= item.mask;
    if (std::popcount(item.mask) != 1) all_singleton = false;
  }
  if ((present & ~covered) != 0) return false;
  if (total == 0) return true;

  if (all_singleton) {
    for (const auto& item : config) {
      int l = std::countr_zero(item.mask);
      if (counts[l] > item.mult) return false;
    }
    return true;
  }

  std::vector<int> supply;
  std::vector<int> labels;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] > 0) {
      supply.push_back(counts[l]);
      labels.push_back(static_cast<int>(l));
    }
  }
  std::vector<int> capacity;
  capacity.reserve(config.size());
  for (const auto& item : config) capacity.push_back(item.mult);
  std::vector<std::vector<char>> allowed(supply.size(), std::vector<char>(config.size(), 0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < config.size(); ++j) {
      allowed[i][j] = (config[j].mask & bit(labels[i])) != 0;
    }
  }
  return transport(supply, capacity, allowed);
}

bool fits_any(const Counts& counts, const MaskConstraint& constraint) {
  for (const auto& c : constraint.configs) {
    if (fits(counts, c)) return true;
  }
  return false;
}

namespace {

void choose_multiset(const std::vector<int>& members, std::size_t from, int remaining,
                     Counts& counts, const MaskConfig& config, std::size_t item,
                     CountsSet& out);

void expand_item(const MaskConfig& config, std::size_t item, Counts& counts, CountsSet& out) {
  if (item == config.size()) {
    out.insert(counts);
    return;
  }
  std::vector<int> members;
  for (Mask m = config[item].mask; m != 0; m &= m - 1) members.push_back(std::countr_zero(m));
  choose_multiset(members, 0, config[item].mult, counts, config, item, out);
}

void choose_multiset(const std::vector<int>& members, std::size_t from, int remaining,
                     Counts& counts, const MaskConfig& config, std::size_t item,
                     CountsSet& out) {
  if (remaining == 0) {
    expand_item(config, item + 1, counts, out);
    return;
  }
  if (from == members.size()) return;
  const int label = members[from];
  if (from + 1 == members.size()) {
    counts[label] += remaining;
    expand_item(config, item + 1, counts, out);
    counts[label] -= remaining;
    return;
  }
  for (int take = remaining; take >= 0; --take) {
    counts[label] += take;
    choose_multiset(members, from + 1, remaining - take, counts, config, item, out);
    counts[label] -= take;
  }
}

}  // namespace

void expand_into(const MaskConfig& config, int labels, CountsSet& out) {
  Counts counts(labels, 0);
  expand_item(config, 0, counts, out);
}

CountsSet expand(const MaskConstraint& constraint, int labels) {
  CountsSet out;
  for (const auto& c : constraint.configs) expand_into(c, labels, out);
  return out;
}

CondensedConfig counts_to_config(const Counts& counts, const Index& index) {
  std::vector<Item> items;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] > 0) items.push_back({Group(index.name(static_cast<int>(l))), counts[l]});
  }
  return CondensedConfig(std::move(items));
}

Counts config_to_counts(const CondensedConfig& plain, const Index& index) {
  Counts counts(index.size(), 0);
  for (const auto& item : plain.items()) {
    counts[index.at(item.group.members.front())] += item.multiplicity;
  }
  return counts;
}

bool UniversalChecker::partial_fits(const Counts& counts) {
  auto it = memo_.find(counts);
  if (it != memo_.end()) return it->second;
  bool ok = fits_any(counts, *constraint_);
  memo_.emplace(counts, ok);
  return ok;
}

bool UniversalChecker::extend(const CountsSet& state, Mask slot, CountsSet& next) {
  next.clear();
  for (const auto& p : state) {
    for (Mask m = slot; m != 0; m &= m - 1) {
      Counts q = p;
      ++q[std::countr_zero(m)];
      auto [pos, inserted] = next.insert(std::move(q));
      if (inserted && !partial_fits(*pos)) return false;
    }
  }
  return true;
}

bool UniversalChecker::check(const std::vector<Mask>& slots) {
  if (static_cast<int>(slots.size()) != constraint_->arity) return false;
  CountsSet state{Counts(labels_, 0)};
  CountsSet next;
  for (Mask slot : slots) {
    if (slot == 0) return false;
    if (!extend(state, slot, next)) return false;
    state.swap(next);
  }
  return true;
}

}  // namespace relim::detail
