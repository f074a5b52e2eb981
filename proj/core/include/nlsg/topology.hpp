#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlsg/graph.hpp"

namespace nlsg {

enum class CaseLabel { Terminal, AssumptionH, SingleHalfline, Other };

std::string_view to_string(CaseLabel c) noexcept;
CaseLabel case_label_from_string(std::string_view s);

struct HVerdict {
  bool satisfied = false;
  std::optional<std::string> witness;
};

struct TopologyReport {
  std::size_t num_halflines = 0;
  std::vector<std::string> terminal_edges;
  bool satisfies_H = false;
  std::optional<std::string> h_violation_witness;
  CaseLabel case_label = CaseLabel::Other;
  bool is_bubble_tower = false;
  bool is_line = false;
};

/// Edges with an endpoint of degree one that is not at infinity. The halfline of
/// the graph R+ counts, since its origin is a terminal point.
std::vector<std::string> terminal_edges(const MetricGraph& g);

/// Edge-removal test: every component left after deleting any edge holds a vertex at infinity.
HVerdict satisfies_H(const MetricGraph& g);

/// Every edge lies on a cycle once all vertices at infinity are merged.
bool satisfies_H_cycle(const MetricGraph& g);

/// Every edge lies on a trail whose first and last edges are halflines. Exhaustive search.
bool satisfies_H_trail(const MetricGraph& g, std::size_t edge_cap = 12);

/// Throws CompactGraph when g has no halflines.
TopologyReport classify_case(const MetricGraph& g);

/// Shape of a bubble tower: two halflines at a root, paired arcs from the root
/// upward, then a top loop. Degree-2 vertices are smoothed out first.
struct TowerShape {
  std::vector<double> arcs;
  double loop = 0.0;
  bool line = false;
};

std::optional<TowerShape> tower_shape(const MetricGraph& g);
bool is_bubble_tower(const MetricGraph& g);
bool is_line(const MetricGraph& g);

}  // namespace nlsg
