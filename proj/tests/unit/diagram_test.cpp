#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "oracle.hpp"
#include "acceptance_checks.hpp"
#include "relim/diagram.hpp"
#include "relim/family.hpp"

using namespace relim;
using testing::P;

namespace {

std::string edges_text(const Diagram& d) {
  std::string out;
  for (const auto& [from, to] : d.edges()) out += from + "->" + to + " ";
  return out;
}

// Reachability over the Hasse edges plus equivalence classes.
bool reaches(const Diagram& d, const Label& from, const Label& to) {
  auto rep = [&](const Label& l) {
    for (const auto& cls : d.classes())
      if (std::find(cls.begin(), cls.end(), l) != cls.end()) return cls.front();
    return l;
  };
  std::set<Label> seen{rep(from)};
  std::vector<Label> stack{rep(from)};
  while (!stack.empty()) {
    Label cur = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : d.edges())
      if (a == cur && seen.insert(b).second) stack.push_back(b);
  }
  return seen.count(rep(to)) > 0;
}

}  // namespace

TEST_SUITE("diagram") {
  TEST_CASE("MIS edge strengths") {
    Problem mis = make_mis_problem(3);
    CHECK(at_least_as_strong("O", "P", mis.edges()));
    CHECK_FALSE(at_least_as_strong("P", "O", mis.edges()));
    CHECK(at_least_as_strong("M", "M", mis.edges()));
    CHECK_FALSE(at_least_as_strong("M", "O", mis.edges()));
    CHECK_FALSE(at_least_as_strong("O", "M", mis.edges()));
    CHECK_FALSE(at_least_as_strong("M", "P", mis.edges()));
    CHECK_FALSE(at_least_as_strong("P", "M", mis.edges()));
    CHECK(edges_text(build_diagram(mis, Side::edge)) == "P->O ");
  }

  TEST_CASE("family edge diagram") {
    Diagram d = build_diagram(make_family_problem({4, 2, 1}), Side::edge);
    CHECK(edges_text(d) == "A->O M->X O->X P->A ");
    CHECK_FALSE(d.has_ties());
    std::string text = "side: edge\nlabels: A M O P X\nedges:\n";
    for (const auto& [a, b] : d.edges()) text += a + " -> " + b + "\n";
    CHECK(text == testing::golden("family_edge_diagram.txt"));
    // X sits above every other label.
    for (const auto& l : d.labels())
      if (l != "X") CHECK(d.at_least_as_strong("X", l));
  }

  TEST_CASE("single label diagram") {
    Diagram d = build_diagram(P("delta: 2\nnodes:\nX^2\nedges:\nX X"), Side::node);
    CHECK(d.labels() == LabelSet{"X"});
    CHECK(d.edges().empty());
    CHECK(right_closed_sets(d) == std::vector<LabelSet>{{"X"}});
  }

  TEST_CASE("family right-closed sets are the eight listed") {
    for (int d = 4; d <= 6; ++d)
      for (int a = 2; a <= d; ++a)
        for (int x = 0; x + 2 <= a; ++x) {
          auto sets = right_closed_sets(build_diagram(make_family_problem({d, a, x}), Side::edge));
          std::vector<LabelSet> expected;
          for (const auto& [set, name] : expected_re_dictionary()) expected.push_back(set);
          std::sort(expected.begin(), expected.end(), set_less);
          CHECK(sets == expected);
        }
  }

  TEST_CASE("is_right_closed examples") {
    Diagram d = build_diagram(make_family_problem({4, 2, 1}), Side::edge);
    CHECK(is_right_closed({"A", "O", "P", "X"}, d));
    CHECK_FALSE(is_right_closed({"M"}, d));
    CHECK(is_right_closed(d.labels(), d));
  }

  TEST_CASE("chain of three labels has three right-closed sets") {
    // A weaker than B weaker than C on the edge side.
    Problem p = P("delta: 2\nnodes:\nA B\nC^2\nedges:\nA C\nB [B C]\nC [A B C]");
    Diagram d = build_diagram(p, Side::edge);
    CHECK(edges_text(d) == "A->B B->C ");
    CHECK(right_closed_sets(d) == std::vector<LabelSet>{{"C"}, {"B", "C"}, {"A", "B", "C"}});
  }

  TEST_CASE("ties form equivalence classes") {
    Problem p = P("delta: 2\nnodes:\nA B\nedges:\n[A B]^2");
    Diagram d = build_diagram(p, Side::edge);
    CHECK(d.has_ties());
    CHECK(d.classes() == std::vector<LabelSet>{{"A", "B"}});
    CHECK(d.edges().empty());
    CHECK(right_closed_sets(d) == std::vector<LabelSet>{{"A", "B"}});
  }

  TEST_CASE("strength, right-closed sets and Hasse edges against brute force") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      int labels = 2 + static_cast<int>(seed % 7);
      Problem p = verify::random_problem(seed, labels, 3);
      for (Side side : {Side::node, Side::edge}) {
        const Constraint& k = side == Side::node ? p.nodes() : p.edges();
        const LabelSet& sigma = p.alphabet();
        Diagram d = build_diagram(p, side);
        for (const auto& a : sigma)
          for (const auto& b : sigma) {
            bool expected = oracle::at_least_as_strong(a, b, k);
            CHECK(at_least_as_strong(a, b, k) == expected);
            CHECK(d.at_least_as_strong(a, b) == expected);
            // The Hasse edges regenerate the relation.
            CHECK(reaches(d, b, a) == expected);
            // Reflexive and transitive.
            if (a == b) CHECK(expected);
            for (const auto& c : sigma)
              if (expected && oracle::at_least_as_strong(b, c, k))
                CHECK(oracle::at_least_as_strong(a, c, k));
          }
        // No edge is implied by a longer path.
        for (std::size_t i = 0; i < d.edges().size(); ++i) {
          const auto& [from, to] = d.edges()[i];
          bool detour = false;
          for (const auto& [a, mid] : d.edges())
            if (a == from && mid != to && d.at_least_as_strong(to, mid) &&
                !d.at_least_as_strong(mid, to))
              detour = true;
          CHECK_FALSE(detour);
        }
        auto sets = right_closed_sets(d);
        CHECK(sets == oracle::right_closed(k, sigma));
        std::set<LabelSet> family(sets.begin(), sets.end());
        for (const auto& s : sets) {
          CHECK(is_right_closed(s, d));
          for (const auto& t : sets) {
            LabelSet u, n;
            std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(n));
            CHECK(family.count(u));
            if (!n.empty()) CHECK(family.count(n));
          }
        }
      }
    }
  }

  TEST_CASE("equivalent presentations give equal diagrams") {
    Problem a = P("delta: 2\nnodes:\nM^2\nedges:\nM [O P]\nO O");
    Problem b = P("delta: 2\nnodes:\nM^2\nedges:\nM O\nM P\nO O\nM O");
    CHECK(build_diagram(a, Side::edge).edges() == build_diagram(b, Side::edge).edges());
  }

  TEST_CASE("dot export") {
    std::string dot = to_dot(build_diagram(make_mis_problem(3), Side::edge));
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("\"P\" -> \"O\"") != std::string::npos);
  }

  TEST_CASE("side parsing") {
    CHECK(parse_side("nodes") == Side::node);
    CHECK(parse_side("edge") == Side::edge);
    CHECK_THROWS_AS(parse_side("both"), PreconditionError);
  }
}
