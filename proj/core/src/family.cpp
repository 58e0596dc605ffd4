#include "relim/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relim/errors.hpp"
#include "relim/text_format.hpp"

namespace relim {

namespace {

struct Part {
  LabelSet group;
  int mult;
};

CondensedConfig config(const std::vector<Part>& parts) {
  std::vector<Item> items;
  for (const auto& p : parts) {
    if (p.mult < 0) throw PreconditionError("negative exponent in constructed configuration");
    if (p.mult > 0) items.push_back({Group(p.group), p.mult});
  }
  return CondensedConfig(std::move(items));
}

void require(bool holds, const std::string& inequality, const FamilyParams& params) {
  if (!holds) {
    throw PreconditionError(inequality + " fails for " + params.to_string());
  }
}

const LabelSet kAllRe = {"A", "B", "M", "O", "P", "Q", "U", "X"};

}  // namespace

FamilyParams::FamilyParams(int delta_, int a_, int x_) : delta(delta_), a(a_), x(x_) {
  if (delta < 2) throw PreconditionError("delta >= 2 fails (delta = " + std::to_string(delta) + ")");
  require(0 <= a && a <= delta, "0 <= a <= delta", *this);
  require(0 <= x && x <= delta, "0 <= x <= delta", *this);
}

std::string FamilyParams::to_string() const {
  return "(delta=" + std::to_string(delta) + ", a=" + std::to_string(a) +
         ", x=" + std::to_string(x) + ")";
}

Problem make_family_problem(const FamilyParams& p) {
  const int d = p.delta;
  Constraint nodes(d, {config({{{"M"}, d - p.x}, {{"X"}, p.x}}),
                       config({{{"A"}, p.a}, {{"X"}, d - p.a}}),
                       config({{{"P"}, 1}, {{"O"}, d - 1}})});
  Constraint edges(2, {config({{{"M"}, 1}, {{"P", "A", "O", "X"}, 1}}),
                       config({{{"O"}, 1}, {{"M", "A", "O", "X"}, 1}}),
                       config({{{"P"}, 1}, {{"M", "X"}, 1}}),
                       config({{{"A"}, 1}, {{"M", "O", "X"}, 1}}),
                       config({{{"X"}, 1}, {{"M", "P", "A", "O", "X"}, 1}})});
  std::string note = "family " + p.to_string();
  if (p.a == 0) note += "; a = 0 turns the owned-edge line into X^delta";
  return Problem(d, std::move(nodes), std::move(edges), note);
}

Problem make_plus_problem(const FamilyParams& p) {
  require(p.x + 1 <= p.delta, "x+1 <= delta", p);
  require(p.a - p.x - 1 >= 0, "a-x-1 >= 0", p);
  const int d = p.delta;
  Constraint nodes(d, {config({{{"M"}, d - p.x - 1}, {{"X"}, p.x + 1}}),
                       config({{{"P"}, 1}, {{"O"}, d - 1}}),
                       config({{{"A"}, p.a - p.x - 1}, {{"X"}, d - p.a + p.x + 1}}),
                       config({{{"C"}, d - p.x}, {{"X"}, p.x}})});
  Constraint edges(2, {config({{{"M"}, 1}, {{"P", "A", "C", "O", "X"}, 1}}),
                       config({{{"O"}, 1}, {{"M", "A", "C", "O", "X"}, 1}}),
                       config({{{"P"}, 1}, {{"M", "X"}, 1}}),
                       config({{{"A"}, 1}, {{"M", "C", "O", "X"}, 1}}),
                       config({{{"X"}, 1}, {{"M", "P", "A", "C", "O", "X"}, 1}}),
                       config({{{"C"}, 1}, {{"M", "A", "O", "X"}, 1}})});
  return Problem(d, std::move(nodes), std::move(edges), "plus family " + p.to_string());
}

Problem make_mis_problem(int delta) {
  if (delta < 2) throw PreconditionError("delta >= 2 fails (delta = " + std::to_string(delta) + ")");
  Constraint nodes(delta, {config({{{"M"}, delta}}), config({{{"P"}, 1}, {{"O"}, delta - 1}})});
  Constraint edges(2, {config({{{"M"}, 1}, {{"P", "O"}, 1}}), config({{{"O"}, 2}})});
  return Problem(delta, std::move(nodes), std::move(edges),
                 "MIS delta=" + std::to_string(delta));
}

SetLabelDictionary expected_re_dictionary() {
  SetLabelDictionary dict = {
      {{"X"}, "X"},
      {{"M", "X"}, "M"},
      {{"O", "X"}, "O"},
      {{"M", "O", "X"}, "U"},
      {{"A", "O", "X"}, "A"},
      {{"A", "M", "O", "X"}, "B"},
      {{"A", "O", "P", "X"}, "P"},
      {{"A", "M", "O", "P", "X"}, "Q"},
  };
  std::sort(dict.begin(), dict.end(),
            [](const auto& l, const auto& r) { return set_less(l.first, r.first); });
  return dict;
}

Problem expected_re_problem(const FamilyParams& p) {
  require(p.x + 2 <= p.a, "x+2 <= a", p);
  const int d = p.delta;
  Constraint nodes(d, {config({{{"M", "U", "B", "Q"}, d - p.x}, {kAllRe, p.x}}),
                       config({{{"P", "Q"}, 1}, {{"O", "U", "A", "B", "P", "Q"}, d - 1}}),
                       config({{{"A", "B", "P", "Q"}, p.a}, {kAllRe, d - p.a}})});
  Constraint edges(2, {CondensedConfig::plain({"X", "Q"}), CondensedConfig::plain({"O", "B"}),
                       CondensedConfig::plain({"A", "U"}), CondensedConfig::plain({"P", "M"})});
  return Problem(d, std::move(nodes), std::move(edges), "expected re of family " + p.to_string());
}

LiftedProblem make_rel_problem(const FamilyParams& p) {
  require(p.x + 2 <= p.a, "x+2 <= a", p);
  LiftedProblem out;
  out.problem = make_plus_problem(p);
  out.problem.set_note("relaxation target " + p.to_string());
  out.renaming = {
      {make_label_set({"P", "Q"}), "P"},
      {make_label_set({"A", "B", "P", "Q"}), "A"},
      {make_label_set({"B", "M", "Q", "U"}), "M"},
      {make_label_set({"B", "P", "Q", "U"}), "C"},
      {make_label_set({"A", "B", "O", "P", "Q", "U"}), "O"},
      {kAllRe, "X"},
  };
  std::sort(out.renaming.begin(), out.renaming.end(),
            [](const auto& l, const auto& r) { return set_less(l.first, r.first); });
  out.transform = Transform::rere;
  out.source = serialize_problem(expected_re_problem(p));
  return out;
}

LiftedProblem drop_node_line(const LiftedProblem& target, const Label& label) {
  std::vector<CondensedConfig> kept;
  bool dropped = false;
  for (const auto& c : target.problem.nodes().configs()) {
    auto labels = c.label_set();
    if (std::binary_search(labels.begin(), labels.end(), label)) {
      dropped = true;
    } else {
      kept.push_back(c);
    }
  }
  if (!dropped) throw PreconditionError("no node configuration uses label " + label);
  LiftedProblem out = target;
  out.problem = Problem(target.problem.delta(),
                        Constraint(target.problem.delta(), std::move(kept)),
                        target.problem.edges(), target.problem.note() + " without " + label);
  return out;
}

FamilyParams step_params(const FamilyParams& p) {
  require(2 * p.x + 1 <= p.a, "2x+1 <= a", p);
  require(p.x + 2 <= p.a, "x+2 <= a", p);
  require(p.a <= p.delta, "a <= delta", p);
  return FamilyParams(p.delta, (p.a - 2 * p.x - 1) / 2, p.x + 1);
}

int sequence_length(int delta, double epsilon) {
  if (delta < 2) throw PreconditionError("delta >= 2 fails");
  if (!(epsilon >= 0)) throw PreconditionError("epsilon >= 0 fails");
  return static_cast<int>(std::floor(epsilon * std::log2(static_cast<double>(delta)) + 1e-9));
}

namespace {

int scheduled_a(int delta, int i) { return 3 * i >= 31 ? 0 : delta >> (3 * i); }

Check check(const std::string& name, bool holds, const std::string& detail) {
  return Check{name, holds, detail};
}

std::string num(long long v) { return std::to_string(v); }

// Transition checks only; the final zero-round verdict is left empty.
SequenceCertificate schedule_transitions(int delta, int x0, double epsilon) {
  if (x0 < 0) throw PreconditionError("x0 >= 0 fails");
  SequenceCertificate cert;
  cert.delta = delta;
  cert.x0 = x0;
  cert.epsilon = epsilon;
  cert.t = sequence_length(delta, epsilon);
  const double guide = std::pow(static_cast<double>(delta), epsilon);
  cert.x0_guidance = check("x0 <= delta^epsilon", x0 <= guide + 1e-9,
                           num(x0) + " vs " + std::to_string(guide));
  for (int i = 0; i <= cert.t; ++i) {
    const int a = scheduled_a(delta, i);
    const int x = x0 + i;
    if (x > delta) {
      throw PreconditionError("step " + num(i) + ": x <= delta fails (x = " + num(x) + ")");
    }
    SequenceStep step;
    step.index = i;
    step.params = FamilyParams(delta, a, x);
    if (i < cert.t) {
      const FamilyParams& p = step.params;
      step.checks.push_back(check("2x+1 <= a", 2 * x + 1 <= a, num(2 * x + 1) + " <= " + num(a)));
      step.checks.push_back(check("x+2 <= a", x + 2 <= a, num(x + 2) + " <= " + num(a)));
      step.checks.push_back(check("a <= delta", a <= delta, num(a) + " <= " + num(delta)));
      step.checks.push_back(check("8x < a", 8LL * x < a, num(8LL * x) + " < " + num(a)));
      bool pre = 2 * x + 1 <= a && x + 2 <= a;
      if (pre) {
        step.stepped = step_params(p);
        const int a_next = scheduled_a(delta, i + 1);
        step.checks.push_back(check("a' >= a_next", step.stepped->a >= a_next,
                                    num(step.stepped->a) + " >= " + num(a_next)));
        step.checks.push_back(check("x' <= x_next", step.stepped->x <= x + 1,
                                    num(step.stepped->x) + " <= " + num(x + 1)));
      }
      for (const auto& c : step.checks) step.ok = step.ok && c.holds;
      step.ok = step.ok && pre;
    }
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

void finish(SequenceCertificate& cert) {
  const SequenceStep& last = cert.steps.back();
  cert.final_zero_round = zero_round_solvable_symmetric(make_family_problem(last.params));
  bool transitions = true;
  for (const auto& s : cert.steps) transitions = transitions && s.ok;
  cert.valid = cert.t > 0 && transitions && !cert.final_zero_round.holds;
  const FamilyParams& first = cert.steps.front().params;
  if (cert.valid) {
    cert.statement = "Pi_" + num(cert.delta) + "(" + num(first.a) + "," + num(first.x) +
                     ") needs at least " + num(cert.t) +
                     " rounds in the port numbering model given a delta-edge coloring, on "
                     "high-girth delta-regular trees; " +
                     num(cert.x0) + "-outdegree dominating sets need at least " +
                     num(cert.t - 1) + " (one round converts them into the first problem).";
  } else {
    cert.statement = "no lower bound certified";
  }
}

}  // namespace

SequenceCertificate sequence_schedule(int delta, int x0, double epsilon) {
  auto cert = schedule_transitions(delta, x0, epsilon);
  finish(cert);
  return cert;
}

SequenceCertificate build_sequence(int delta, int x0, double epsilon) {
  auto cert = schedule_transitions(delta, x0, epsilon);
  if (cert.t == 0) {
    throw PreconditionError("t = floor(epsilon*log2(delta)) = 0 gives no lower bound");
  }
  for (const auto& s : cert.steps) {
    for (const auto& c : s.checks) {
      if (!c.holds) {
        throw PreconditionError("step " + num(s.index) + " " + s.params.to_string() + ": " +
                                c.name + " fails (" + c.detail + ")");
      }
    }
  }
  finish(cert);
  return cert;
}

std::optional<int> smallest_valid_delta(int x0, double epsilon, int limit) {
  for (int delta = 2; delta <= limit; ++delta) {
    const int t = sequence_length(delta, epsilon);
    if (t == 0 || x0 + t > delta) continue;
    // Cheap arithmetic screen before building the schedule.
    bool ok = true;
    for (int i = 0; i < t && ok; ++i) {
      const int a = scheduled_a(delta, i);
      const int x = x0 + i;
      ok = 8LL * x < a && 2 * x + 1 <= a && x + 2 <= a &&
           (a - 2 * x - 1) / 2 >= scheduled_a(delta, i + 1);
    }
    if (!ok) continue;
    if (sequence_schedule(delta, x0, epsilon).valid) return delta;
  }
  return std::nullopt;
}

std::string SequenceCertificate::report() const {
  std::ostringstream out;
  out << "sequence delta=" << delta << " x0=" << x0 << " epsilon=" << epsilon << " t=" << t
      << "\n";
  out << "guidance " << x0_guidance.name << ": " << (x0_guidance.holds ? "ok" : "violated")
      << " (" << x0_guidance.detail << ")\n";
  for (const auto& s : steps) {
    out << "step " << s.index << " " << s.params.to_string();
    if (s.stepped) out << " -> " << s.stepped->to_string();
    out << (s.index < t ? (s.ok ? " ok" : " FAILED") : " final") << "\n";
    for (const auto& c : s.checks) {
      out << "  " << (c.holds ? "ok   " : "FAIL ") << c.name << "  " << c.detail << "\n";
    }
  }
  out << "final zero-round solvable: " << (final_zero_round.holds ? "yes" : "no") << "\n";
  out << "  " << final_zero_round.narrative << "\n";
  out << (valid ? "certificate valid: " : "certificate invalid: ") << statement << "\n";
  return out.str();
}

KodsStatement kods_problem_statement(int delta, int k) {
  if (delta < 2) throw PreconditionError("delta >= 2 fails");
  if (k < 0 || k > delta) throw PreconditionError("0 <= k <= delta fails (k = " + num(k) + ")");
  KodsStatement s;
  s.delta = delta;
  s.k = k;
  s.is_mis = k == 0;
  s.trivial = k == delta;
  s.text = "find S dominating and orient every edge inside S so that each node of S has "
           "outdegree at most " + num(k);
  if (s.is_mis) s.text += "; with k = 0 S is independent, so this is MIS";
  if (s.trivial) s.text += "; with k = delta, S = all nodes with any orientation works";
  s.text += "; a solution gives Pi_" + num(delta) + "(a," + num(k) + ") in one round for every a";
  return s;
}

}  // namespace relim
