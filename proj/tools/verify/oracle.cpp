#include "oracle.hpp"

#include <algorithm>
#include <functional>

namespace oracle {

namespace {

std::vector<LabelSet> slots(const relim::CondensedConfig& config) {
  std::vector<LabelSet> out;
  for (const auto& item : config.items()) {
    for (int i = 0; i < item.multiplicity; ++i) out.push_back(item.group.members);
  }
  return out;
}

// Calls `visit` with every selection of one member per slot.
void product(const std::vector<LabelSet>& slots, const std::function<void(const Plain&)>& visit) {
  Plain current(slots.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slots.size()) {
      visit(current);
      return;
    }
    for (const auto& l : slots[i]) {
      current[i] = l;
      rec(i + 1);
    }
  };
  rec(0);
}

Plain sorted(Plain p) {
  std::sort(p.begin(), p.end());
  return p;
}

bool universal(const SetTuple& tuple, const std::set<Plain>& expansion) {
  bool ok = true;
  product(tuple, [&](const Plain& p) {
    if (ok && !expansion.count(sorted(p))) ok = false;
  });
  return ok;
}

bool existential(const SetTuple& tuple, const std::set<Plain>& expansion) {
  bool found = false;
  product(tuple, [&](const Plain& p) {
    if (!found && expansion.count(sorted(p))) found = true;
  });
  return found;
}

// Multisets of size `k` over `pool`, as nondecreasing index sequences.
template <class T>
void multisets(const std::vector<T>& pool, int k,
               const std::function<void(const std::vector<T>&)>& visit) {
  std::vector<T> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(current.size()) == k) {
      visit(current);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      rec(i);
      current.pop_back();
    }
  };
  rec(0);
}

SetTuple canonical(SetTuple t) {
  std::sort(t.begin(), t.end());
  return t;
}

bool subset(const LabelSet& a, const LabelSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Lifted lift(const relim::Constraint& maximal_side, const relim::Constraint& other_side,
            const LabelSet& alphabet, bool maximal_is_edge) {
  Lifted out;
  auto maximal = maximal_tuples(maximal_side, alphabet);
  for (const auto& t : maximal) out.labels.insert(t.begin(), t.end());
  const auto other = expand(other_side);
  std::vector<LabelSet> pool(out.labels.begin(), out.labels.end());
  std::set<SetTuple> lifted;
  multisets<LabelSet>(pool, other_side.arity(), [&](const std::vector<LabelSet>& t) {
    if (existential(t, other)) lifted.insert(canonical(t));
  });
  if (maximal_is_edge) {
    out.edges = std::move(maximal);
    out.nodes = std::move(lifted);
  } else {
    out.nodes = std::move(maximal);
    out.edges = std::move(lifted);
  }
  return out;
}

}  // namespace

std::set<Plain> expand(const relim::CondensedConfig& config) {
  std::set<Plain> out;
  product(slots(config), [&](const Plain& p) { out.insert(sorted(p)); });
  return out;
}

std::set<Plain> expand(const relim::Constraint& constraint) {
  std::set<Plain> out;
  for (const auto& c : constraint.configs()) {
    auto e = expand(c);
    out.insert(e.begin(), e.end());
  }
  return out;
}

bool contains(const std::set<Plain>& expansion, Plain plain) {
  return expansion.count(sorted(std::move(plain))) > 0;
}

std::vector<LabelSet> subsets(const LabelSet& labels) {
  std::vector<LabelSet> out;
  const std::size_t n = labels.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    LabelSet s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(labels[i]);
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool relaxes(const SetTuple& from, const SetTuple& to) {
  if (from.size() != to.size()) return false;
  std::vector<std::size_t> perm(to.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < from.size() && ok; ++i) ok = subset(from[i], to[perm[i]]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::set<SetTuple> maximal_tuples(const relim::Constraint& constraint, const LabelSet& alphabet) {
  const auto expansion = expand(constraint);
  std::vector<SetTuple> good;
  multisets<LabelSet>(subsets(alphabet), constraint.arity(), [&](const std::vector<LabelSet>& t) {
    if (universal(t, expansion)) good.push_back(canonical(t));
  });
  std::set<SetTuple> out;
  for (const auto& t : good) {
    bool dominated = false;
    for (const auto& u : good) {
      if (u != t && relaxes(t, u)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.insert(t);
  }
  return out;
}

Lifted re(const relim::Problem& problem) {
  return lift(problem.edges(), problem.nodes(), problem.alphabet(), true);
}

Lifted rere(const relim::Problem& problem) {
  return lift(problem.nodes(), problem.edges(), problem.alphabet(), false);
}

Lifted view(const relim::LiftedProblem& lifted) {
  auto translate = [&](const relim::Constraint& c) {
    std::set<SetTuple> out;
    for (const auto& plain : expand(c)) {
      SetTuple t;
      for (const auto& name : plain) {
        const LabelSet* m = lifted.members(name);
        t.push_back(m ? *m : LabelSet{"?" + name});
      }
      out.insert(canonical(t));
    }
    return out;
  };
  Lifted out;
  for (const auto& [set, name] : lifted.renaming) out.labels.insert(set);
  out.nodes = translate(lifted.problem.nodes());
  out.edges = translate(lifted.problem.edges());
  return out;
}

bool isomorphic(const relim::Problem& lhs, const relim::Problem& rhs) {
  if (lhs.delta() != rhs.delta()) return false;
  const LabelSet& from = lhs.alphabet();
  LabelSet to = rhs.alphabet();
  if (from.size() != to.size()) return false;
  const auto ln = expand(lhs.nodes()), le = expand(lhs.edges());
  const auto rn = expand(rhs.nodes()), re = expand(rhs.edges());
  if (ln.size() != rn.size() || le.size() != re.size()) return false;
  auto apply = [&](const std::set<Plain>& side, const std::map<Label, Label>& m) {
    std::set<Plain> out;
    for (const auto& p : side) {
      Plain q;
      for (const auto& l : p) q.push_back(m.at(l));
      out.insert(sorted(q));
    }
    return out;
  };
  std::sort(to.begin(), to.end());
  do {
    std::map<Label, Label> m;
    for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
    if (apply(ln, m) == rn && apply(le, m) == re) return true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

bool at_least_as_strong(const Label& a, const Label& b, const relim::Constraint& constraint) {
  const auto expansion = expand(constraint);
  for (const auto& p : expansion) {
    auto it = std::find(p.begin(), p.end(), b);
    if (it == p.end()) continue;
    Plain q = p;
    q[static_cast<std::size_t>(it - p.begin())] = a;
    if (!contains(expansion, q)) return false;
  }
  return true;
}

std::vector<LabelSet> right_closed(const relim::Constraint& constraint, const LabelSet& alphabet) {
  std::vector<LabelSet> out;
  for (const auto& s : subsets(alphabet)) {
    bool closed = true;
    for (const auto& b : s) {
      for (const auto& a : alphabet) {
        if (!std::binary_search(s.begin(), s.end(), a) && at_least_as_strong(a, b, constraint)) {
          closed = false;
        }
      }
    }
    if (closed) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), relim::set_less);
  return out;
}

}  // namespace oracle
