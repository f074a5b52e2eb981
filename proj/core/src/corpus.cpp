#include "nlsg/corpus.hpp"

#include <cmath>
#include <numbers>

#include "nlsg/error.hpp"

namespace nlsg::corpus {

MetricGraph line() { return GraphBuilder().halfline("h1", "v").halfline("h2", "v").build(); }

MetricGraph halfline() { return GraphBuilder().halfline("h1", "v").build(); }

MetricGraph star(int n) {
  if (n < 1) fail(Errc::InvalidArgument, "star needs at least one halfline");
  GraphBuilder b;
  for (int i = 1; i <= n; ++i) b.halfline("h" + std::to_string(i), "v");
  return b.build();
}

MetricGraph bridge(const std::vector<double>& lengths) {
  GraphBuilder b;
  b.halfline("h1", "v1");
  for (std::size_t i = 0; i < lengths.size(); ++i)
    b.edge("e" + std::to_string(i + 1), "v1", "v2", lengths[i]);
  b.halfline("h2", "v2");
  return b.build();
}

MetricGraph pendant_line(double ell) {
  return GraphBuilder().halfline("h1", "v").halfline("h2", "v").edge("p", "v", "tip", ell).build();
}

MetricGraph signpost(double loop, double stem) {
  return GraphBuilder()
      .halfline("h1", "base")
      .halfline("h2", "base")
      .edge("stem", "base", "top", stem)
      .edge("loop", "top", "top", loop)
      .build();
}

MetricGraph tadpole(double loop) {
  return GraphBuilder().edge("loop", "v", "v", loop).halfline("h1", "v").build();
}

MetricGraph fork(const std::vector<double>& lengths) {
  GraphBuilder b;
  b.halfline("h1", "v");
  for (std::size_t i = 0; i < lengths.size(); ++i)
    b.edge("p" + std::to_string(i + 1), "v", "t" + std::to_string(i + 1), lengths[i]);
  return b.build();
}

MetricGraph n_fork(int n, double ell) {
  if (n < 1) fail(Errc::InvalidArgument, "n-fork needs n >= 1");
  return fork(std::vector<double>(static_cast<std::size_t>(n), ell));
}

MetricGraph g_ell(double ell) {
  return GraphBuilder()
      .halfline("h1", "v")
      .halfline("h2", "v")
      .halfline("h3", "v")
      .edge("p", "v", "tip", ell)
      .build();
}

MetricGraph bubble_tower(const std::vector<double>& arcs, double loop) {
  GraphBuilder b;
  b.halfline("h1", "t0").halfline("h2", "t0");
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    const auto lo = "t" + std::to_string(j), hi = "t" + std::to_string(j + 1);
    b.edge("a" + std::to_string(j + 1) + "l", lo, hi, arcs[j]);
    b.edge("a" + std::to_string(j + 1) + "r", lo, hi, arcs[j]);
  }
  b.edge("loop", "t" + std::to_string(arcs.size()), "t" + std::to_string(arcs.size()), loop);
  return b.build();
}

MetricGraph edge_with_halflines(double len) {
  return GraphBuilder().halfline("h1", "v1").edge("e", "v1", "v2", len).halfline("h2", "v2").build();
}

MetricGraph case_h_graph() {
  return GraphBuilder()
      .edge("e1", "n00", "n11", 1.0)
      .edge("e2", "n00", "n-11", 1.0)
      .edge("e3", "n00", "n02", 1.0)
      .edge("e4", "n-11", "n02", 1.0)
      .edge("e5", "n02", "n11", 1.0)
      .edge("e6", "n00", "n11", 1.5)
      .edge("e7", "n04", "n-13", 1.0)
      .edge("e8", "n04", "n13", 1.0)
      .edge("e9", "n-13", "n-11", 1.0)
      .edge("e10", "n04", "n02", 1.0)
      .edge("e11", "n13", "n11", 1.0)
      .edge("e12", "n13", "n02", 1.0)
      .halfline("h1", "n-11")
      .halfline("h2", "n-13")
      .halfline("h3", "n11")
      .build();
}

namespace {

GraphBuilder& core_edges(GraphBuilder& b) {
  return b.edge("c1", "n02", "n04", 1.0)
      .edge("c2", "n04", "n24", 1.0)
      .edge("c3", "n04", "n22", 1.0)
      .edge("c4", "n24", "n22", 1.0)
      .edge("c5", "n02", "n11", 1.0)
      .edge("c6", "n11", "n22", 1.0)
      .edge("c7", "n11", "n20", 1.0)
      .edge("c8", "n20", "n22", 1.0)
      .edge("c9", "n22", "n33", 1.0)
      .edge("c10", "n24", "n33", 1.0)
      .edge("c11", "n24", "n43", 1.0)
      .edge("c12", "n33", "n43", 1.0)
      .edge("c13", "n43", "n52", 1.0)
      .edge("c14", "n33", "n42", 1.0)
      .edge("c15", "n20", "n42", 1.0)
      .edge("c16", "n20", "n40", 1.0)
      .edge("c17", "n40", "n42", 1.0)
      .edge("c18", "n42", "n52", 1.0)
      .edge("c19", "n40", "n52", 1.0);
}

}  // namespace

MetricGraph terminal_graph() {
  GraphBuilder b;
  core_edges(b).edge("term", "n43", "tip", 1.0).halfline("h1", "n02").halfline("h2", "n52").halfline(
      "h3", "n04");
  return b.build();
}

MetricGraph single_halfline_graph() {
  GraphBuilder b;
  core_edges(b).halfline("h1", "n02");
  return b.build();
}

MetricGraph single_halfline_with_pendant_graph() {
  GraphBuilder b;
  core_edges(b).edge("pend", "n11", "n11b", 1.0).edge("c11b", "n24", "n43", 1.5).halfline("h1", "n02");
  return b.build();
}

MetricGraph case_other_graph() {
  return GraphBuilder()
      .halfline("h1", "m30")
      .edge("l1", "m30", "m10", 1.0)
      .edge("l2", "m10", "z00", 1.0)
      .edge("l3", "z00", "p10", 1.0)
      .edge("l4", "p10", "p30", 1.0)
      .halfline("h2", "p30")
      .edge("stem", "m30", "m32", 1.0)
      .edge("loop", "m32", "m32", 2.0)
      .edge("rstem", "p30", "p32", 1.0)
      .edge("arc1", "p32", "rig", 1.5)
      .edge("arc2", "p32", "rig", 1.5)
      .halfline("h3", "rig")
      .edge("m1", "m10", "z02", 1.0)
      .edge("m2", "z02", "p10", 1.0)
      .edge("m3", "m10", "z-02", 1.0)
      .edge("m4", "z-02", "p10", 1.0)
      .edge("m5", "z-02", "z02", 1.0)
      .build();
}

std::vector<Entry> shipped() {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Entry> out{
      {"line", line(), "ASSUMPTION_H", true, "real line, soliton is the ground state"},
      {"halfline", halfline(), "TERMINAL", false, "halfline, half-soliton is the ground state"},
      {"star3", star(3), "ASSUMPTION_H", true, "star of three halflines, no ground state"},
      {"star4", star(4), "ASSUMPTION_H", true, "star of four halflines, no ground state"},
      {"bridge2", bridge({1.0, 2.0}), "ASSUMPTION_H", true, "two-bridge, no ground state"},
      {"bridge3", bridge({1.0, 1.5, 2.0}), "ASSUMPTION_H", true, "three-bridge, no ground state"},
      {"pendant_line", pendant_line(1.0), "TERMINAL", false, "line with a pendant, ground state exists"},
      {"signpost", signpost(two_pi, 1.0), "OTHER", false, "signpost, ground state exists"},
      {"tadpole", tadpole(two_pi), "SINGLE_HALFLINE", false, "tadpole, ground state exists"},
      {"fork3", fork({1.0, 1.0, 1.0}), "TERMINAL", false, "3-fork, ground state exists"},
      {"bubble_tower1", bubble_tower({}, 3.0), "ASSUMPTION_H", true, "one bubble, folded soliton"},
      {"bubble_tower2", bubble_tower({1.0}, 2.0), "ASSUMPTION_H", true, "two bubbles"},
      {"bubble_tower3", bubble_tower({0.5, 1.0}, 1.5), "ASSUMPTION_H", true, "three bubbles"},
      {"case_h", case_h_graph(), "ASSUMPTION_H", true, "compact core with a cycle covering"},
      {"terminal", terminal_graph(), "TERMINAL", false, "compact core with a terminal point"},
      {"single_halfline", single_halfline_graph(), "SINGLE_HALFLINE", false,
       "compact core with exactly one halfline"},
      {"single_halfline_pendant", single_halfline_with_pendant_graph(), "TERMINAL", false,
       "one halfline and a pendant"},
      {"case_other", case_other_graph(), "OTHER", false,
       "no terminal point, no cycle covering, three halflines"},
  };
  for (int n = 3; n <= 8; ++n)
    out.push_back({"fork" + std::to_string(n) + "_short", n_fork(n, 0.3), "TERMINAL", false,
                   "n-fork with short edges"});
  for (double ell : {0.5, 2.0, 5.0}) {
    auto tag = std::to_string(static_cast<int>(std::lround(ell * 10)));
    out.push_back({"g_ell_" + tag, g_ell(ell), "TERMINAL", false,
                   "three halflines and a terminal edge"});
  }
  return out;
}

}  // namespace nlsg::corpus
