#include <algorithm>

#include "doctest.h"
#include "nlsg/corpus.hpp"
#include "nlsg/topology.hpp"
#include "support.hpp"

using namespace nlsg;
using nlsg::test::error_of;

namespace {

bool same_set(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

TEST_CASE("terminal edges") {
  CHECK(terminal_edges(corpus::pendant_line(1.0)) == std::vector<std::string>{"p"});
  CHECK(terminal_edges(corpus::tadpole(2.0)).empty());
  CHECK(same_set(terminal_edges(corpus::n_fork(4, 0.5)), {"p1", "p2", "p3", "p4"}));
  CHECK(terminal_edges(corpus::star(3)).empty());
}

TEST_CASE("assumption H, edge removal form") {
  CHECK(satisfies_H(corpus::bridge({1.0, 1.5, 2.0})).satisfied);
  CHECK(satisfies_H(corpus::star(3)).satisfied);
  const auto sp = satisfies_H(corpus::signpost(2.0, 1.0));
  CHECK_FALSE(sp.satisfied);
  REQUIRE(sp.witness);
  CHECK(*sp.witness == "stem");
  const auto pl = satisfies_H(corpus::pendant_line(1.0));
  CHECK_FALSE(pl.satisfied);
  CHECK(*pl.witness == "p");
}

TEST_CASE("assumption H, cycle covering form") {
  CHECK(satisfies_H_cycle(corpus::bridge({1.0, 2.0})));
  CHECK_FALSE(satisfies_H_cycle(corpus::pendant_line(1.0)));
  CHECK_FALSE(satisfies_H_cycle(corpus::halfline()));
}

TEST_CASE("assumption H, trail form") {
  CHECK(satisfies_H_trail(corpus::bridge({1.0, 1.5, 2.0})));
  CHECK_FALSE(satisfies_H_trail(corpus::signpost(2.0, 1.0)));
  CHECK_FALSE(satisfies_H_trail(corpus::case_other_graph(), 20));
  CHECK(error_of([] { satisfies_H_trail(corpus::case_h_graph(), 3); }) == Errc::TooLargeForBruteForce);
}

TEST_CASE("classify_case examples") {
  CHECK(classify_case(corpus::pendant_line(1.0)).case_label == CaseLabel::Terminal);
  CHECK(classify_case(corpus::terminal_graph()).case_label == CaseLabel::Terminal);
  CHECK(classify_case(corpus::tadpole(2.0)).case_label == CaseLabel::SingleHalfline);
  CHECK(classify_case(corpus::single_halfline_graph()).case_label == CaseLabel::SingleHalfline);
  CHECK(classify_case(corpus::signpost(2.0, 1.0)).case_label == CaseLabel::Other);
  CHECK(classify_case(corpus::case_other_graph()).case_label == CaseLabel::Other);
  CHECK(classify_case(corpus::star(4)).case_label == CaseLabel::AssumptionH);
  const auto compact = GraphBuilder().edge("e", "a", "b", 1.0).build();
  CHECK(error_of([&] { classify_case(compact); }) == Errc::CompactGraph);
}

TEST_CASE("bubble towers") {
  CHECK(is_bubble_tower(corpus::line()));
  CHECK(is_line(corpus::line()));
  // one bubble: the line with 1.5 ~ -1.5 identified
  const auto one = GraphBuilder().halfline("h1", "a").halfline("h2", "a").edge("loop", "a", "a", 3.0).build();
  CHECK(is_bubble_tower(one));
  const auto two = GraphBuilder()
                       .halfline("h1", "a")
                       .halfline("h2", "a")
                       .edge("e1", "a", "b", 3.0)
                       .edge("e2", "a", "b", 3.0)
                       .edge("top", "b", "b", 1.0)
                       .build();
  CHECK(is_bubble_tower(two));
  const auto uneven = GraphBuilder()
                          .halfline("h1", "a")
                          .halfline("h2", "a")
                          .edge("e1", "a", "b", 3.0)
                          .edge("e2", "a", "b", 4.0)
                          .edge("top", "b", "b", 1.0)
                          .build();
  CHECK_FALSE(is_bubble_tower(uneven));
  // halflines at different ends: the soliton cannot be folded onto it
  const auto bridge = GraphBuilder().halfline("h1", "a").edge("e1", "a", "b", 3.0).edge("e2", "a", "b", 3.0).halfline("h2", "b").build();
  CHECK_FALSE(is_bubble_tower(bridge));
  CHECK(is_bubble_tower(corpus::bubble_tower({1.0, 0.5}, 2.0)));
  CHECK_FALSE(is_bubble_tower(corpus::star(3)));
  CHECK_FALSE(is_bubble_tower(corpus::tadpole(2.0)));
  CHECK(classify_case(corpus::bubble_tower({}, 3.0)).is_bubble_tower);
}

TEST_CASE("property: the three forms of (H) agree on the corpus") {
  for (const auto& e : corpus::shipped()) {
    if (e.graph.num_edges() > 12) continue;
    CAPTURE(e.name);
    const bool h = satisfies_H(e.graph).satisfied;
    CHECK(h == e.expected_h);
    CHECK(satisfies_H_cycle(e.graph) == h);
    CHECK(satisfies_H_trail(e.graph) == h);
  }
}

TEST_CASE("property: report invariants") {
  for (const auto& e : corpus::shipped()) {
    CAPTURE(e.name);
    const auto r = classify_case(e.graph);
    const bool terminal = !r.terminal_edges.empty();
    CHECK((r.case_label == CaseLabel::Terminal) == terminal);
    CHECK((r.case_label == CaseLabel::AssumptionH) == (r.satisfies_H && !terminal));
    CHECK((r.case_label == CaseLabel::SingleHalfline) == (r.num_halflines == 1 && !terminal));
    if (terminal) CHECK_FALSE(r.satisfies_H);
    if (r.num_halflines < 2) CHECK_FALSE(r.satisfies_H);
    if (!r.satisfies_H) CHECK(r.h_violation_witness.has_value());
    CHECK(std::string(to_string(r.case_label)) == e.expected_case);
  }
}
