#pragma once

#include <nlohmann/json.hpp>

#include "relim/analysis.hpp"
#include "relim/diagram.hpp"
#include "relim/family.hpp"
#include "relim/problem.hpp"
#include "relim/round_elim.hpp"
#include "relim/simulator.hpp"

namespace relim {

using Json = nlohmann::ordered_json;

// Problem mirror: {"delta": 3, "nodes": [[[["M"], 3]], ...], "edges": [...]}
// Each configuration is a list of [group, multiplicity] items.
Json to_json(const CondensedConfig& config);
Json to_json(const Constraint& constraint);
Json to_json(const Problem& problem);
/// Throws ParseError (line 0) on malformed input.
Problem problem_from_json(const Json& json);
CondensedConfig config_from_json(const Json& json);

/// Problem, canonical text, set-label dictionary and provenance. Timing
/// statistics are left out so the output is reproducible.
Json to_json(const LiftedProblem& lifted);
LiftedProblem lifted_from_json(const Json& json);
Json to_json(const SearchStats& stats);

Json to_json(const Diagram& diagram);
Json to_json(const Verdict& verdict);
Json to_json(const Relaxation& relaxation);
Json to_json(const FailureBound& bound);
Json to_json(const FamilyParams& params);
Json to_json(const SequenceCertificate& certificate);
Json to_json(const KodsStatement& statement);

Json to_json(const LabeledTree& tree);
LabeledTree tree_from_json(const Json& json);
Json to_json(const DSolution& solution);
Json to_json(const LabelingReport& report);

/// Reads either the text format or, when the first non-space character is
/// `{`, the JSON mirror (a bare problem or an object with a "problem" key).
Problem read_problem(std::string_view input);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& json);

}  // namespace relim
