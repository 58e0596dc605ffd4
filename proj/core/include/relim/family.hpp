#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relim/analysis.hpp"
#include "relim/problem.hpp"
#include "relim/round_elim.hpp"

namespace relim {

/// Parameters of the owned-edge family: degree, owned-edge count `a`, and
/// allowed outgoing edges `x` of dominating nodes.
struct FamilyParams {
  int delta = 0;
  int a = 0;
  int x = 0;

  /// Throws PreconditionError unless delta >= 2, 0 <= a <= delta, 0 <= x <= delta.
  FamilyParams(int delta, int a, int x);
  FamilyParams() = default;

  std::string to_string() const;
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// Labels M P O A X. Nodes: M^(delta-x) X^x, A^a X^(delta-a), P O^(delta-1).
/// Items with exponent 0 are dropped.
Problem make_family_problem(const FamilyParams& params);

/// The family problem with the extra C label (see make_rel_problem).
/// Requires x+1 <= delta and a-x-1 >= 0.
Problem make_plus_problem(const FamilyParams& params);

/// Nodes M^delta, P O^(delta-1); edges M [P O], O O.
Problem make_mis_problem(int delta);

/// The dictionary naming the eight right-closed edge sets of the family:
/// X={X}, M={M X}, O={O X}, U={M O X}, A={A O X}, B={A M O X},
/// P={A O P X}, Q={A M O P X}.
SetLabelDictionary expected_re_dictionary();

/// The re-result of the family problem written out directly over the
/// eight names of expected_re_dictionary. Requires x+2 <= a <= delta.
Problem expected_re_problem(const FamilyParams& params);

/// The relaxation target over the names of expected_re_dictionary. Its
/// problem has the shape of make_plus_problem; its dictionary gives each
/// label as a set of re-labels. Requires x+2 <= a <= delta.
LiftedProblem make_rel_problem(const FamilyParams& params);

/// Removes the node configurations of `target` that use `label`.
LiftedProblem drop_node_line(const LiftedProblem& target, const Label& label);

/// (delta, floor((a-2x-1)/2), x+1). Requires 2x+1 <= a and x+2 <= a <= delta.
FamilyParams step_params(const FamilyParams& params);

struct Check {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct SequenceStep {
  int index = 0;
  FamilyParams params;
  /// Set for every step but the last.
  std::optional<FamilyParams> stepped;
  std::vector<Check> checks;
  bool ok = true;
};

struct SequenceCertificate {
  int delta = 0;
  int x0 = 0;
  double epsilon = 0;
  int t = 0;
  /// Problems 0..t; steps 0..t-1 carry transition checks.
  std::vector<SequenceStep> steps;
  Check x0_guidance;
  Verdict final_zero_round;
  bool valid = false;
  std::string statement;

  std::string report() const;
};

/// t = floor(epsilon * log2(delta)); a_i = floor(delta / 2^(3i)); x_i = x0 + i.
int sequence_length(int delta, double epsilon);

/// The raw schedule with transition checks, without aborting on failures.
SequenceCertificate sequence_schedule(int delta, int x0, double epsilon);

/// Throws PreconditionError naming the failing step index and inequality,
/// or when t = 0. The final problem's zero-round verdict decides `valid`.
SequenceCertificate build_sequence(int delta, int x0, double epsilon);

/// Smallest delta in [2, limit] for which build_sequence yields a valid
/// certificate.
std::optional<int> smallest_valid_delta(int x0, double epsilon, int limit);

struct KodsStatement {
  int delta = 0;
  int k = 0;
  bool is_mis = false;
  bool trivial = false;
  std::string text;
};

/// Throws PreconditionError unless 0 <= k <= delta.
KodsStatement kods_problem_statement(int delta, int k);

}  // namespace relim
