#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "oracle.hpp"
#include "acceptance_checks.hpp"
#include "relim/errors.hpp"
#include "relim/family.hpp"
#include "relim/json_io.hpp"

using namespace relim;
using testing::C;
using testing::P;

namespace {

const char* kMis3 = "delta: 3\nnodes:\nM^3\nP O^2\nedges:\nM [P O]\nO O";

std::vector<std::string> strings(const std::vector<CondensedConfig>& configs) {
  std::vector<std::string> out;
  for (const auto& c : configs) out.push_back(c.to_string());
  return out;
}

// Presentation-level isomorphism by trying every bijection.
bool brute_isomorphic(const Problem& lhs, const Problem& rhs) {
  LabelSet from = lhs.alphabet(), to = rhs.alphabet();
  if (from.size() != to.size() || lhs.delta() != rhs.delta()) return false;
  std::sort(to.begin(), to.end());
  do {
    RenamingMap m;
    for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
    if (rename_problem(lhs, m) == rhs) return true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

RenamingMap shuffled_map(const LabelSet& alphabet, std::mt19937& rng) {
  LabelSet to = alphabet;
  std::shuffle(to.begin(), to.end(), rng);
  RenamingMap m;
  for (std::size_t i = 0; i < alphabet.size(); ++i) m[alphabet[i]] = to[i];
  return m;
}

}  // namespace

TEST_SUITE("problem-core") {
  TEST_CASE("parse MIS at degree 3") {
    Problem p = P(kMis3);
    CHECK(p.delta() == 3);
    CHECK(p.alphabet() == LabelSet{"M", "O", "P"});
    CHECK(p.nodes().configs().size() == 2);
    CHECK(p.edges().configs().size() == 2);
    CHECK(p.nodes().arity() == 3);
    CHECK(p.edges().arity() == 2);
    CHECK(p == make_mis_problem(3));
  }

  TEST_CASE("single-label problem") {
    Problem p = P("delta: 2\nnodes:\nX^2\nedges:\nX X");
    CHECK(p.alphabet() == LabelSet{"X"});
    CHECK(serialize_problem(p) == testing::golden("trivial.problem"));
  }

  TEST_CASE("MIS canonical text matches golden") {
    CHECK(serialize_problem(P(kMis3)) == testing::golden("mis3.problem"));
    CHECK(serialize_problem(P(kMis3)) == "delta: 3\nnodes:\nM^3\nO^2 P\nedges:\nM [O P]\nO^2\n");
  }

  TEST_CASE("serialization is a fixed point") {
    std::string once = serialize_problem(P(kMis3));
    CHECK(serialize_problem(P(once)) == once);
  }

  TEST_CASE("family problems round-trip through text and JSON") {
    for (int d = 2; d <= 6; ++d)
      for (int a = 0; a <= d; ++a)
        for (int x = 0; x <= d; ++x) {
          Problem p = make_family_problem({d, a, x});
          CHECK(parse_problem(serialize_problem(p)) == p);
          CHECK(problem_from_json(to_json(p)) == p);
        }
  }

  TEST_CASE("family (3,2,1) has three node lines") {
    Problem p = make_family_problem({3, 2, 1});
    CHECK(p.nodes().configs().size() == 3);
    CHECK(serialize_problem(p).find("M^2 X\n") != std::string::npos);
  }

  TEST_CASE("note lines survive parsing but not equality") {
    Problem p = P("# hello\n# world\n" + std::string(kMis3));
    CHECK(p.note() == "hello\nworld");
    CHECK(p == P(kMis3));
    CHECK(serialize_problem(p).rfind("# hello\n# world\n", 0) == 0);
  }

  TEST_CASE("parse errors carry positions") {
    auto expect_error = [](const std::string& text, std::size_t line) {
      try {
        parse_problem(text);
        FAIL("accepted: " << text);
      } catch (const ParseError& e) {
        CHECK(e.line() == line);
      }
    };
    expect_error("delta: 3\nnodes:\nM^2\nedges:\nM M", 3);        // arity
    expect_error("delta: 3\nnodes:\nM^3\nedges:\nM M M", 5);      // edge arity
    expect_error("delta: 3\nnodes:\nm^3\nedges:\nM M", 3);        // lowercase label
    expect_error("delta: 3\nnodes:\n[M O^3\nedges:\nM M", 3);     // unclosed group
    expect_error("delta: x\nnodes:\nM^3\nedges:\nM M", 1);
    expect_error("nodes:\nM^3\nedges:\nM M", 1);
    CHECK_THROWS_AS(parse_problem("delta: 1\nnodes:\nM\nedges:\nM M"), ParseError);
    CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"delta": 3})")), ParseError);
  }

  TEST_CASE("groups canonicalize") {
    CHECK(C("[P O] M").to_string() == "M [O P]");
    CHECK(C("O O").to_string() == "O^2");
    CHECK(C("[O O]").to_string() == "O");
    CHECK(C("[B A]^2 A").to_string() == "A [A B]^2");
    CHECK_THROWS_AS(C("X^0 M^2"), ParseError);
  }

  TEST_CASE("expand_config examples") {
    CHECK(strings(expand_config(C("M [P O]"))) == std::vector<std::string>{"M O", "M P"});
    CHECK(strings(expand_config(C("X^3"))) == std::vector<std::string>{"X^3"});
    CHECK(strings(expand_config(C("[A B]^2"))) ==
          std::vector<std::string>{"A B", "A^2", "B^2"});
  }

  TEST_CASE("config_in_constraint examples") {
    Problem mis = P(kMis3);
    CHECK(config_in_constraint(C("M P"), mis.edges()));
    CHECK_FALSE(config_in_constraint(C("P P"), mis.edges()));
    Constraint k(3, {C("[A B]^2 X")});
    CHECK_FALSE(config_in_constraint(C("A X X"), k));
    CHECK(config_in_constraint(C("A B X"), k));
  }

  TEST_CASE("expansion size bound and self-membership") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      Problem p = verify::random_problem(seed, 5, 3);
      for (const auto& c : p.nodes().configs()) {
        std::size_t product = 1;
        for (const auto& item : c.items())
          for (int i = 0; i < item.multiplicity; ++i) product *= item.group.members.size();
        auto plains = expand_config(c);
        CHECK(plains.size() <= product);
        for (const auto& plain : plains) CHECK(config_in_constraint(plain, p.nodes()));
      }
    }
  }

  TEST_CASE("membership agrees with brute-force expansion") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      int labels = 2 + static_cast<int>(seed % 5);
      Problem p = verify::random_problem(seed, labels, 3);
      const auto nodes = oracle::expand(p.nodes());
      const auto edges = oracle::expand(p.edges());
      const LabelSet& sigma = p.alphabet();
      for (const auto& a : sigma)
        for (const auto& b : sigma) {
          CHECK(config_in_constraint(CondensedConfig::plain({a, b}), p.edges()) ==
                oracle::contains(edges, {a, b}));
          for (const auto& c : sigma)
            CHECK(config_in_constraint(CondensedConfig::plain({a, b, c}), p.nodes()) ==
                  oracle::contains(nodes, {a, b, c}));
        }
    }
  }

  TEST_CASE("rename examples") {
    Problem mis = P(kMis3);
    Problem renamed = rename_problem(mis, {{"M", "A"}, {"P", "B"}, {"O", "C"}});
    CHECK(renamed.alphabet() == LabelSet{"A", "B", "C"});
    CHECK(serialize_problem(renamed) == "delta: 3\nnodes:\nA^3\nB C^2\nedges:\nA [B C]\nC^2\n");
    CHECK(rename_problem(mis, {{"M", "M"}, {"O", "O"}, {"P", "P"}}) == mis);
    CHECK(rename_problem(renamed, {{"A", "M"}, {"B", "P"}, {"C", "O"}}) == mis);
    CHECK_THROWS_AS(rename_problem(mis, {{"M", "A"}, {"P", "A"}, {"O", "C"}}), PreconditionError);
    CHECK_THROWS_AS(rename_problem(mis, {{"M", "A"}, {"P", "B"}}), PreconditionError);
  }

  TEST_CASE("isomorphism examples") {
    Problem mis = P(kMis3);
    std::mt19937 rng(7);
    RenamingMap m = shuffled_map(mis.alphabet(), rng);
    auto found = problems_isomorphic(mis, rename_problem(mis, m));
    REQUIRE(found);
    CHECK(rename_problem(mis, *found) == rename_problem(mis, m));
    CHECK_FALSE(problems_isomorphic(mis, P("delta: 3\nnodes:\nX^3\nedges:\nX X")));
  }

  TEST_CASE("isomorphism agrees with brute force") {
    std::mt19937 rng(11);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      int labels = 2 + static_cast<int>(seed % 5);
      Problem p = verify::random_problem(seed, labels, 3);
      Problem image = rename_problem(p, shuffled_map(p.alphabet(), rng));
      Problem other = verify::random_problem(seed + 1000, labels, 3);
      for (const Problem* q : {&image, &other}) {
        auto found = problems_isomorphic(p, *q);
        CHECK(found.has_value() == brute_isomorphic(p, *q));
        if (found) CHECK(rename_problem(p, *found) == *q);
      }
    }
  }
}
