#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracle.hpp"
#include "acceptance_checks.hpp"
#include "relim/analysis.hpp"
#include "relim/family.hpp"

using namespace relim;
using testing::C;
using testing::P;

namespace {

SetConfig sets(std::vector<LabelSet> slots) {
  std::vector<Item> items;
  for (auto& s : slots) items.push_back({Group(std::move(s)), 1});
  return SetConfig(items);
}

oracle::SetTuple slots_of(const SetConfig& c) {
  oracle::SetTuple t;
  for (const auto& item : c.items())
    for (int i = 0; i < item.multiplicity; ++i) t.push_back(item.group.members);
  return t;
}

SetConfig random_sets(std::mt19937& rng, int arity) {
  const LabelSet sigma{"A", "B", "C", "D"};
  std::vector<LabelSet> slots;
  for (int i = 0; i < arity; ++i) {
    LabelSet s;
    while (s.empty())
      for (const auto& l : sigma)
        if (rng() % 2) s.push_back(l);
    slots.push_back(s);
  }
  return sets(slots);
}

Problem named_re(const FamilyParams& params) {
  return rename_lifted(re(make_family_problem(params)), expected_re_dictionary()).problem;
}

const LabelSet kAll{"A", "B", "M", "O", "P", "Q", "U", "X"};

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("relaxation examples") {
    auto r = relaxes_to(sets({{"M"}, {"X"}}), sets({{"M", "X"}, {"X"}}));
    REQUIRE(r);
    SetConfig c = sets({{"A", "B"}, {"C"}, {"A"}});
    auto self = relaxes_to(c, c);
    REQUIRE(self);
    CHECK(self->witness == std::vector<int>{0, 1, 2});
    CHECK_FALSE(relaxes_to(sets({{"A", "B"}, {"A", "B"}}), sets({{"A", "B"}, {"A"}})));
    CHECK_THROWS_AS(relaxes_to(sets({{"A"}}), sets({{"A"}, {"A"}})), PreconditionError);
  }

  TEST_CASE("relaxation witnesses are slotwise inclusions") {
    std::mt19937 rng(3);
    for (int round = 0; round < 300; ++round) {
      SetConfig a = random_sets(rng, 3), b = random_sets(rng, 3);
      auto r = relaxes_to(a, b);
      CHECK(r.has_value() == oracle::relaxes(slots_of(a), slots_of(b)));
      if (r) {
        auto from = slots_of(a), to = slots_of(b);
        std::vector<int> seen(3, 0);
        for (int i = 0; i < 3; ++i) {
          CHECK(is_subset(from[i], to[r->witness[i]]));
          ++seen[r->witness[i]];
        }
        CHECK(seen == std::vector<int>{1, 1, 1});
      }
    }
  }

  TEST_CASE("relaxation is a preorder") {
    std::mt19937 rng(5);
    for (int round = 0; round < 200; ++round) {
      SetConfig a = random_sets(rng, 3), b = random_sets(rng, 3), c = random_sets(rng, 3);
      CHECK(relaxes_to(a, a));
      if (relaxes_to(a, b) && relaxes_to(b, c)) CHECK(relaxes_to(a, c));
    }
  }

  TEST_CASE("rere of re(family 4,3,0) has a configuration relaxing to the M line") {
    Problem p = named_re({4, 3, 0});
    LiftedProblem second = rere(p);
    SetConfig m_line = sets({{"B", "M", "Q", "U"}, {"B", "M", "Q", "U"}, {"B", "M", "Q", "U"}, kAll});
    bool any = false;
    for (const auto& c : second.problem.nodes().configs()) {
      std::vector<LabelSet> slots;
      for (const auto& item : c.items())
        for (int i = 0; i < item.multiplicity; ++i)
          slots.push_back(*second.members(item.group.members.front()));
      any |= relaxes_to(sets(slots), m_line).has_value();
    }
    CHECK(any);
  }

  TEST_CASE("speedup target holds") {
    for (auto params : {FamilyParams{4, 3, 0}, FamilyParams{4, 2, 0}, FamilyParams{5, 4, 1}}) {
      Verdict v = verify_speedup_target(named_re(params), make_rel_problem(params));
      CHECK(v.holds);
      CHECK(v.witness.empty());
    }
  }

  TEST_CASE("speedup target without the C line fails with a witness") {
    LiftedProblem target = drop_node_line(make_rel_problem({4, 3, 0}), "C");
    Verdict v = verify_speedup_target(named_re({4, 3, 0}), target);
    CHECK_FALSE(v.holds);
    CHECK(v.witness == std::vector<std::string>{"[B P Q U]^4"});
  }

  TEST_CASE("speedup of the one-label problem onto itself") {
    Problem one = P("delta: 3\nnodes:\nX^3\nedges:\nX X");
    LiftedProblem target;
    target.problem = one;
    target.renaming = {{{"X"}, "X"}};
    CHECK(verify_speedup_target(one, target).holds);
  }

  TEST_CASE("zero-round verdicts") {
    Verdict fam = zero_round_solvable_symmetric(make_family_problem({4, 2, 1}));
    CHECK_FALSE(fam.holds);
    CHECK(fam.witness == std::vector<std::string>{"A", "M", "P"});
    CHECK(zero_round_solvable_symmetric(P("delta: 3\nnodes:\nX^3\nedges:\nX X")).holds);
    Verdict mis = zero_round_solvable_symmetric(make_mis_problem(3));
    CHECK_FALSE(mis.holds);
    CHECK(mis.witness == std::vector<std::string>{"M", "P"});
  }

  TEST_CASE("zero-round verdict agrees with brute force") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      Problem p = verify::random_problem(seed, 2 + static_cast<int>(seed % 4), 3);
      const auto edges = oracle::expand(p.edges());
      bool expected = false;
      for (const auto& plain : oracle::expand(p.nodes())) {
        bool all = true;
        for (const auto& l : plain) all &= oracle::contains(edges, {l, l});
        expected |= all;
      }
      Verdict v = zero_round_solvable_symmetric(p);
      CHECK(v.holds == expected);
      if (!v.holds) CHECK(v.witness.size() == p.nodes().configs().size());
    }
  }

  TEST_CASE("failure bound examples") {
    FailureBound b = randomized_failure_bound(make_family_problem({4, 2, 1}));
    CHECK(b.derivable);
    CHECK(b.configurations == 3);
    CHECK(b.bound == Rational(1, 144));
    CHECK(b.threshold == Rational(1, 65536));
    CHECK(b.meets_threshold);
    FailureBound one = randomized_failure_bound(P("delta: 2\nnodes:\nM^2\nedges:\nM O"));
    CHECK(one.bound == Rational(1, 4));
    CHECK_FALSE(randomized_failure_bound(P("delta: 2\nnodes:\nX^2\nedges:\nX X")).derivable);
  }

  TEST_CASE("threshold holds from degree 2") {
    for (int d = 2; d <= 64; ++d) {
      FailureBound b = randomized_failure_bound(make_family_problem({d, 1, 1}));
      Rational exact(1, 9 * d * d);
      CHECK(b.bound == exact);
      CHECK(b.meets_threshold);
    }
  }

  TEST_CASE("failure bound is non-increasing in degree and configuration count") {
    Rational previous = 1;
    for (int d = 2; d <= 20; ++d) {
      Rational b = randomized_failure_bound(make_family_problem({d, 1, 1})).bound;
      CHECK(b <= previous);
      previous = b;
    }
    Rational two = randomized_failure_bound(make_mis_problem(4)).bound;
    Rational three = randomized_failure_bound(make_family_problem({4, 1, 1})).bound;
    CHECK(three <= two);
  }

  TEST_CASE("simplify examples") {
    Constraint k(2, {C("M [P O]"), C("M P")});
    Constraint s = simplify_subsumed(k);
    REQUIRE(s.configs().size() == 1);
    CHECK(s.configs()[0].to_string() == "M [O P]");
    Problem mis = make_mis_problem(3);
    CHECK(simplify_subsumed(mis.edges()) == mis.edges());
  }

  TEST_CASE("simplify preserves semantics") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      Problem p = verify::random_problem(seed, 2 + static_cast<int>(seed % 4), 3);
      for (const Constraint* k : {&p.nodes(), &p.edges()}) {
        Constraint s = simplify_subsumed(*k);
        CHECK(oracle::expand(s) == oracle::expand(*k));
        CHECK(s.configs().size() <= k->configs().size());
      }
    }
  }
}
