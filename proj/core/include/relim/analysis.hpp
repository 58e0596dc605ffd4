#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relim/problem.hpp"
#include "relim/round_elim.hpp"

namespace relim {

using Rational = boost::multiprecision::cpp_rational;

/// `from` relaxes to `to`: slot i of `from` (slots listed with repetition
/// in canonical item order) is a subset of slot witness[i] of `to`.
struct Relaxation {
  SetConfig from;
  SetConfig to;
  std::vector<int> witness;
};

/// Throws PreconditionError on arity mismatch.
std::optional<Relaxation> relaxes_to(const SetConfig& from, const SetConfig& to);

struct Verdict {
  bool holds = false;
  /// Counterexample items (configurations, labels); nonempty when !holds.
  std::vector<std::string> witness;
  std::string narrative;
};

/// Checks that every maximal node set-configuration of `problem` (as rere
/// would produce) relaxes to a node configuration of `target`, and that
/// the existential lift of `problem`'s edge constraint onto the target's
/// set-labels lies inside the target's edge constraint.
///
/// `target.renaming` gives each target label as a set of `problem` labels.
Verdict verify_speedup_target(const Problem& problem, const LiftedProblem& target,
                              const EnumerationOptions& options = {});

/// Deterministic 0-round solvability on the symmetric-port, color-aligned
/// family: some node configuration uses only self-compatible labels.
/// When false, the witness lists one self-incompatible label per condensed
/// node configuration, in configuration order.
Verdict zero_round_solvable_symmetric(const Problem& problem);

struct FailureBound {
  /// Number of condensed node configurations.
  int configurations = 0;
  int delta = 0;
  bool derivable = false;
  /// (1/(c*delta))^2
  Rational bound;
  /// 1/delta^8
  Rational threshold;
  bool meets_threshold = false;
  std::string narrative;
};

/// Lower bound on the failure probability of any randomized 0-round
/// algorithm on the symmetric family. `derivable` is false when some
/// configuration can be placed without a self-incompatible label.
FailureBound randomized_failure_bound(const Problem& problem);

/// Removes condensed configurations covered by the union of the remaining
/// ones, scanning in canonical order. Semantics are preserved.
Constraint simplify_subsumed(const Constraint& constraint);

}  // namespace relim
