#include <doctest.h>

#include "helpers.hpp"
#include "relim/analysis.hpp"
#include "relim/family.hpp"
#include "relim/json_io.hpp"

using namespace relim;

namespace {

std::vector<std::string> lines(const Constraint& k) {
  std::vector<std::string> out;
  for (const auto& c : k.configs()) out.push_back(c.to_string());
  return out;
}

// Drops C from every group; configurations left with an empty group vanish.
Problem without_label(const Problem& p, const Label& gone) {
  auto strip = [&](const Constraint& k) {
    std::vector<CondensedConfig> kept;
    for (const auto& c : k.configs()) {
      std::vector<Item> items;
      bool empty = false;
      for (const auto& item : c.items()) {
        LabelSet members;
        for (const auto& l : item.group.members)
          if (l != gone) members.push_back(l);
        if (members.empty()) empty = true;
        else items.push_back({Group(members), item.multiplicity});
      }
      if (!empty) kept.emplace_back(items);
    }
    return Constraint(k.arity(), kept);
  };
  return Problem(p.delta(), strip(p.nodes()), strip(p.edges()));
}

}  // namespace

TEST_SUITE("family") {
  TEST_CASE("parameter range") {
    CHECK_THROWS_AS(FamilyParams(1, 0, 0), PreconditionError);
    CHECK_THROWS_AS(FamilyParams(4, 5, 0), PreconditionError);
    CHECK_THROWS_AS(FamilyParams(4, 0, -1), PreconditionError);
    CHECK_NOTHROW(FamilyParams(4, 0, 4));
  }

  TEST_CASE("family (4,2,1)") {
    Problem p = make_family_problem({4, 2, 1});
    CHECK(lines(p.nodes()) == std::vector<std::string>{"A^2 X^2", "M^3 X", "O^3 P"});
    CHECK(lines(p.edges()) == std::vector<std::string>{"A [M O X]", "M [A O P X]", "O [A M O X]",
                                                       "P [M X]", "X [A M O P X]"});
    CHECK(serialize_problem(p) == testing::golden("family_4_2_1.problem"));
  }

  TEST_CASE("zero exponents drop items") {
    Problem p = make_family_problem({3, 3, 0});
    CHECK(lines(p.nodes()) == std::vector<std::string>{"A^3", "M^3", "O^2 P"});
    Problem a0 = make_family_problem({3, 0, 1});
    CHECK(lines(a0.nodes()) == std::vector<std::string>{"M^2 X", "O^2 P", "X^3"});
  }

  TEST_CASE("plus family (4,3,0)") {
    Problem p = make_plus_problem({4, 3, 0});
    CHECK(lines(p.nodes()) == std::vector<std::string>{"A^2 X^2", "C^4", "M^3 X", "O^3 P"});
    CHECK(p.edges().configs().size() == 6);
    CHECK_FALSE(config_in_constraint(CondensedConfig::plain({"C", "C"}), p.edges()));
    CHECK_THROWS_AS(make_plus_problem({4, 0, 0}), PreconditionError);
    CHECK_THROWS_AS(make_plus_problem({4, 4, 4}), PreconditionError);
  }

  TEST_CASE("plus without C is the stepped family") {
    for (int d = 2; d <= 6; ++d)
      for (int x = 0; x + 1 <= d; ++x)
        for (int a = x + 1; a <= d; ++a) {
          Problem stripped = without_label(make_plus_problem({d, a, x}), "C");
          CHECK(problems_isomorphic(stripped, make_family_problem({d, a - x - 1, x + 1})));
        }
  }

  TEST_CASE("MIS constructor") {
    CHECK(lines(make_mis_problem(3).nodes()) == std::vector<std::string>{"M^3", "O^2 P"});
    Problem mis2 = make_mis_problem(2);
    mis2.set_note({});
    CHECK(serialize_problem(mis2) ==
          "delta: 2\nnodes:\nM^2\nO P\nedges:\nM [O P]\nO^2\n");
  }

  TEST_CASE("expected re problem") {
    Problem p = expected_re_problem({5, 4, 1});
    CHECK(p.edges().configs().size() == 4);
    CHECK(lines(p.edges()) == std::vector<std::string>{"A U", "B O", "M P", "Q X"});
    CHECK(p.alphabet().size() == 8);
    CHECK_THROWS_AS(expected_re_problem({5, 2, 1}), PreconditionError);
  }

  TEST_CASE("expected dictionary") {
    auto dict = expected_re_dictionary();
    REQUIRE(dict.size() == 8);
    std::map<Label, LabelSet> by_name;
    for (const auto& [set, name] : dict) by_name[name] = set;
    CHECK(by_name["X"] == LabelSet{"X"});
    CHECK(by_name["U"] == LabelSet{"M", "O", "X"});
    CHECK(by_name["B"] == LabelSet{"A", "M", "O", "X"});
    CHECK(by_name["Q"] == LabelSet{"A", "M", "O", "P", "X"});
  }

  TEST_CASE("step parameters") {
    CHECK(step_params({20, 9, 1}) == FamilyParams(20, 3, 2));
    CHECK(step_params({64, 64, 0}) == FamilyParams(64, 31, 1));
    try {
      step_params({20, 4, 2});
      FAIL("accepted a = 2x");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("2x+1 <= a") != std::string::npos);
    }
  }

  TEST_CASE("sequence (4096, 2, 0.1)") {
    SequenceCertificate cert = build_sequence(4096, 2, 0.1);
    CHECK(cert.t == 1);
    CHECK(cert.steps.size() == 2);
    CHECK(cert.valid);
    CHECK(cert.steps[1].params == FamilyParams(4096, 512, 3));
  }

  TEST_CASE("sequence (2^20, 2, 0.25)") {
    const int delta = 1 << 20;
    SequenceCertificate cert = build_sequence(delta, 2, 0.25);
    CHECK(cert.t == 5);
    REQUIRE(cert.steps.size() == 6);
    for (int i = 0; i <= 5; ++i) {
      const auto& p = cert.steps[i].params;
      CHECK(p.a == (delta >> (3 * i)));
      CHECK(p.x == 2 + i);
      // Transition hypotheses; the final problem only faces the zero-round check.
      if (i < 5) {
        CHECK(8 * p.x < p.a);
        CHECK(2 * p.x + 1 <= p.a);
        CHECK(p.x + 2 <= p.a);
        CHECK(cert.steps[i].ok);
      }
    }
    CHECK_FALSE(cert.final_zero_round.holds);
    CHECK(cert.valid);
    CHECK(dump(to_json(cert)) == testing::golden("sequence_2e20.json"));
  }

  TEST_CASE("sequence refusals") {
    CHECK(sequence_length(4096, 0) == 0);
    CHECK_THROWS_AS(build_sequence(4096, 2, 0), PreconditionError);
    // a_1 = 1 breaks x+2 <= a at the last transition.
    CHECK_THROWS_AS(build_sequence(8, 0, 1.0), PreconditionError);
    SequenceCertificate raw = sequence_schedule(8, 0, 1.0);
    bool failed = false;
    for (const auto& s : raw.steps) failed |= !s.ok;
    CHECK(failed);
  }

  TEST_CASE("smallest valid degree is reported") {
    auto d = smallest_valid_delta(0, 0.5, 1 << 12);
    REQUIRE(d);
    CHECK(build_sequence(*d, 0, 0.5).valid);
    for (int smaller = 2; smaller < *d; ++smaller) {
      bool ok = false;
      try {
        ok = build_sequence(smaller, 0, 0.5).valid;
      } catch (const PreconditionError&) {
      }
      CHECK_FALSE(ok);
    }
  }

  TEST_CASE("k-outdegree statements") {
    CHECK(kods_problem_statement(4, 0).is_mis);
    CHECK_FALSE(kods_problem_statement(4, 0).trivial);
    CHECK(kods_problem_statement(4, 4).trivial);
    CHECK_FALSE(kods_problem_statement(4, 1).is_mis);
    CHECK_THROWS_AS(kods_problem_statement(4, 5), PreconditionError);
  }
}
