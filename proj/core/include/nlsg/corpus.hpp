#pragma once

#include <string>
#include <vector>

#include "nlsg/graph.hpp"

namespace nlsg::corpus {

MetricGraph line();
MetricGraph halfline();
/// n halflines at one vertex.
MetricGraph star(int n);
/// Two vertices joined by parallel edges of the given lengths, one halfline at each.
MetricGraph bridge(const std::vector<double>& lengths);
/// Line with a terminal edge of length ell at its origin.
MetricGraph pendant_line(double ell);
/// Loop of length `loop` on top of a stem whose base carries two halflines.
MetricGraph signpost(double loop, double stem);
MetricGraph tadpole(double loop);
/// One halfline into a vertex carrying pendant edges of the given lengths.
MetricGraph fork(const std::vector<double>& lengths);
MetricGraph n_fork(int n, double ell);
/// Three halflines and a terminal edge of length ell at one vertex.
MetricGraph g_ell(double ell);
/// Two halflines at a root, a chain of equal double arcs (root upward), and a top loop.
MetricGraph bubble_tower(const std::vector<double>& arcs, double loop);
/// Finite edge with one halfline at each end.
MetricGraph edge_with_halflines(double len);

/// Three halflines, satisfies (H).
MetricGraph case_h_graph();
/// Compact core with a terminal point and three halflines.
MetricGraph terminal_graph();
/// Compact core with exactly one halfline and no terminal point.
MetricGraph single_halfline_graph();
/// Single halfline, a pendant and a double edge in the core.
MetricGraph single_halfline_with_pendant_graph();
/// No terminal point, no cycle covering, three halflines.
MetricGraph case_other_graph();

struct Entry {
  std::string name;
  MetricGraph graph;
  std::string expected_case;
  bool expected_h = false;
  std::string description;
};

/// The shipped corpus with the expected classification.
std::vector<Entry> shipped();

}  // namespace nlsg::corpus
