#include "relim/analysis.hpp"

#include <algorithm>

#include "indexed.hpp"
#include "relim/diagram.hpp"

namespace relim {

std::optional<Relaxation> relaxes_to(const SetConfig& from, const SetConfig& to) {
  if (from.arity() != to.arity()) {
    throw PreconditionError("relaxation needs equal arity: " + std::to_string(from.arity()) +
                            " vs " + std::to_string(to.arity()));
  }
  const auto& fi = from.items();
  const auto& ti = to.items();
  std::vector<int> supply;
  std::vector<int> capacity;
  for (const auto& i : fi) supply.push_back(i.multiplicity);
  for (const auto& i : ti) capacity.push_back(i.multiplicity);
  std::vector<std::vector<char>> allowed(fi.size(), std::vector<char>(ti.size(), 0));
  for (std::size_t a = 0; a < fi.size(); ++a) {
    for (std::size_t b = 0; b < ti.size(); ++b) {
      allowed[a][b] = is_subset(fi[a].group.members, ti[b].group.members) ? 1 : 0;
    }
  }
  std::vector<std::vector<int>> flow;
  if (!detail::transport(supply, capacity, allowed, &flow)) return std::nullopt;

  std::vector<int> first_slot(ti.size(), 0);
  for (std::size_t b = 1; b < ti.size(); ++b) {
    first_slot[b] = first_slot[b - 1] + ti[b - 1].multiplicity;
  }
  std::vector<int> used(ti.size(), 0);
  Relaxation out{from, to, {}};
  for (std::size_t a = 0; a < fi.size(); ++a) {
    for (std::size_t b = 0; b < ti.size(); ++b) {
      for (int k = 0; k < flow[a][b]; ++k) out.witness.push_back(first_slot[b] + used[b]++);
    }
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

SetConfig to_set_config(const CondensedConfig& plain, const LiftedProblem& target) {
  std::vector<Item> items;
  for (const auto& item : plain.items()) {
    const Label& name = item.group.members.front();
    const LabelSet* set = target.members(name);
    if (set == nullptr) throw PreconditionError("target label " + name + " has no set in the dictionary");
    items.push_back({Group(*set), item.multiplicity});
  }
  return SetConfig(std::move(items));
}

}  // namespace

Verdict verify_speedup_target(const Problem& problem, const LiftedProblem& target,
                              const EnumerationOptions& options) {
  for (const auto& [set, name] : target.renaming) {
    for (const auto& l : set) {
      if (!std::binary_search(problem.alphabet().begin(), problem.alphabet().end(), l)) {
        throw PreconditionError("target set-label " + name + " contains " + l +
                                ", which is not a label of the source problem");
      }
    }
  }
  if (target.problem.delta() != problem.delta()) {
    throw PreconditionError("target delta differs from the source problem");
  }

  const Diagram diagram = build_diagram(problem, Side::node);
  const auto candidates = right_closed_sets(diagram, options.max_labels);
  const auto maximal =
      maximal_set_configs(problem.nodes(), problem.alphabet(), candidates, options);

  std::vector<SetConfig> targets;
  for (const auto& c : target.problem.nodes().configs()) {
    for (const auto& plain : expand_config(c)) targets.push_back(to_set_config(plain, target));
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  Verdict v;
  v.holds = true;
  for (const auto& m : maximal) {
    bool ok = std::any_of(targets.begin(), targets.end(),
                          [&](const SetConfig& t) { return relaxes_to(m, t).has_value(); });
    if (!ok) {
      v.holds = false;
      v.witness.push_back(m.to_string());
      v.narrative = "node configuration " + m.to_string() +
                    " relaxes to no node configuration of the target";
      return v;
    }
  }

  const LabelSet used = target.problem.nodes().labels();
  for (std::size_t i = 0; i < used.size(); ++i) {
    for (std::size_t j = i; j < used.size(); ++j) {
      const LabelSet* zi = target.members(used[i]);
      const LabelSet* zj = target.members(used[j]);
      if (zi == nullptr || zj == nullptr) {
        throw PreconditionError("target label without a set in the dictionary");
      }
      bool witnessed = false;
      for (const auto& a : *zi) {
        for (const auto& b : *zj) {
          if (config_in_constraint(CondensedConfig::plain({a, b}), problem.edges())) {
            witnessed = true;
            break;
          }
        }
        if (witnessed) break;
      }
      if (!witnessed) continue;
      auto pair = CondensedConfig::plain({used[i], used[j]});
      if (!config_in_constraint(pair, target.problem.edges())) {
        v.holds = false;
        v.witness.push_back(pair.to_string());
        v.narrative = "edge configuration " + pair.to_string() +
                      " is reachable by superset replacement but not allowed by the target";
        return v;
      }
    }
  }

  v.narrative = "all " + std::to_string(maximal.size()) +
                " maximal node configurations relax to one of " +
                std::to_string(targets.size()) +
                " target node configurations; lifted edge constraint lies inside the target";
  return v;
}

Verdict zero_round_solvable_symmetric(const Problem& problem) {
  const LabelSet& alphabet = problem.alphabet();
  std::vector<char> self_ok(alphabet.size(), 0);
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    self_ok[i] = config_in_constraint(CondensedConfig::plain({alphabet[i], alphabet[i]}),
                                      problem.edges());
  }
  auto self_compatible = [&](const Label& l) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), l);
    return self_ok[it - alphabet.begin()] != 0;
  };

  Verdict v;
  if (problem.nodes().empty()) {
    v.witness.push_back("(no node configurations)");
    v.narrative = "the node constraint is empty";
    return v;
  }
  std::vector<std::string> per_config;
  for (const auto& c : problem.nodes().configs()) {
    std::vector<Item> choice;
    std::optional<Label> bad;
    for (const auto& item : c.items()) {
      auto it = std::find_if(item.group.members.begin(), item.group.members.end(),
                             self_compatible);
      if (it == item.group.members.end()) {
        bad = item.group.members.front();
        break;
      }
      choice.push_back({Group(*it), item.multiplicity});
    }
    if (!bad) {
      CondensedConfig solution(std::move(choice));
      v.holds = true;
      v.witness = {solution.to_string()};
      v.narrative = "every node outputs " + solution.to_string() +
                    "; each label is compatible with itself";
      return v;
    }
    v.witness.push_back(*bad);
    per_config.push_back(c.to_string() + ": " + *bad + " " + *bad + " not allowed");
  }
  v.narrative = "every node configuration contains a self-incompatible label (" +
                join(per_config, "; ") + ")";
  return v;
}

FailureBound randomized_failure_bound(const Problem& problem) {
  FailureBound out;
  out.configurations = static_cast<int>(problem.nodes().configs().size());
  out.delta = problem.delta();
  const Verdict zero = zero_round_solvable_symmetric(problem);
  out.derivable = !zero.holds && out.configurations > 0;
  Rational delta = problem.delta();
  Rational d8 = delta * delta * delta * delta;
  d8 *= d8;
  out.threshold = Rational(1) / d8;
  if (!out.derivable) {
    out.narrative = "bound not derivable: " + zero.narrative;
    return out;
  }
  Rational cd = Rational(out.configurations) * delta;
  out.bound = Rational(1) / (cd * cd);
  out.meets_threshold = out.bound >= out.threshold;
  out.narrative = "some configuration is used with probability >= 1/" +
                  std::to_string(out.configurations) +
                  ", its self-incompatible label sits on a fixed port with probability >= 1/" +
                  (Rational(out.configurations) * delta).str() +
                  "; failure probability >= " + out.bound.str() +
                  (out.meets_threshold ? " >= " : " < ") + "1/delta^8 = " + out.threshold.str() +
                  " (constant c generalized from the 3-configuration family)";
  return out;
}

Constraint simplify_subsumed(const Constraint& constraint) {
  detail::Index index(constraint.labels());
  const int n = index.size();
  std::vector<detail::MaskConfig> masks;
  for (const auto& c : constraint.configs()) masks.push_back(detail::to_mask_config(c, index));

  std::vector<char> alive(masks.size(), 1);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    detail::CountsSet own;
    detail::expand_into(masks[i], n, own);
    bool covered = std::all_of(own.begin(), own.end(), [&](const detail::Counts& c) {
      for (std::size_t j = 0; j < masks.size(); ++j) {
        if (j != i && alive[j] && detail::fits(c, masks[j])) return true;
      }
      return false;
    });
    if (covered) alive[i] = 0;
  }
  std::vector<CondensedConfig> kept;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (alive[i]) kept.push_back(constraint.configs()[i]);
  }
  Constraint out(constraint.arity(), std::move(kept));

  detail::MaskConstraint before{constraint.arity(), masks};
  auto after = detail::to_masks(out, index);
  if (detail::expand(before, n) != detail::expand(after, n)) {
    throw Error("subsumption cleanup changed the constraint's semantics");
  }
  return out;
}

}  // namespace relim
