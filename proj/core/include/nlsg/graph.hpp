#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nlsg {

struct Vertex {
  std::string id;
  bool at_infinity = false;
};

/// A finite edge or a halfline. Halflines keep length == 0 and halfline == true.
struct Edge {
  std::string id;
  std::size_t a = 0;
  std::size_t b = 0;
  double length = 0.0;
  bool halfline = false;

  bool is_loop() const noexcept { return a == b; }
  std::size_t other(std::size_t v) const noexcept { return v == a ? b : a; }
};

/// Unvalidated description, one-to-one with the JSON graph file.
struct GraphSpec {
  struct V {
    std::string id;
    bool infinity = false;
  };
  struct E {
    std::string id;
    std::string from;
    std::string to;
    std::optional<double> length;
    bool halfline = false;
  };
  std::vector<V> vertices;
  std::vector<E> edges;
};

/// Immutable metric multigraph with finite edges and halflines.
class MetricGraph {
 public:
  MetricGraph() = default;

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::size_t vertex_index(const std::string& id) const;
  std::size_t edge_index(const std::string& id) const;
  std::optional<std::size_t> find_vertex(const std::string& id) const;

  /// Edge indices incident to v; a loop appears twice.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incidence_.at(v); }
  std::size_t degree(std::size_t v) const { return incidence_.at(v).size(); }

  std::size_t num_halflines() const noexcept;
  double finite_length() const noexcept;

  friend MetricGraph build_graph(const GraphSpec& spec);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::unordered_map<std::string, std::size_t> vindex_;
  std::unordered_map<std::string, std::size_t> eindex_;
};

/// Validates and builds. Throws Error with the matching Errc on violations.
MetricGraph build_graph(const GraphSpec& spec);

/// Degree by vertex id; loops count twice.
std::size_t degree(const MetricGraph& g, const std::string& vertex_id);

/// Spec describing g, so build_graph(to_spec(g)) reproduces it.
GraphSpec to_spec(const MetricGraph& g);

/// Small helper for assembling graphs in code.
class GraphBuilder {
 public:
  GraphBuilder& vertex(const std::string& id);
  GraphBuilder& edge(const std::string& id, const std::string& from, const std::string& to,
                     double length);
  /// Adds a halfline from `from` plus its vertex at infinity (named id + "_inf").
  GraphBuilder& halfline(const std::string& id, const std::string& from);
  MetricGraph build() const { return build_graph(spec_); }
  const GraphSpec& spec() const noexcept { return spec_; }

 private:
  void ensure(const std::string& id);
  GraphSpec spec_;
};

struct TVertex {
  std::string id;
  bool boundary = false;
};

struct TEdge {
  std::string id;
  std::size_t a = 0;
  std::size_t b = 0;
  double length = 0.0;
  bool from_halfline = false;

  bool is_loop() const noexcept { return a == b; }
  std::size_t other(std::size_t v) const noexcept { return v == a ? b : a; }
};

/// Finite computational domain. Vertex and edge indices match the base graph;
/// each vertex at infinity becomes a degree-1 boundary vertex, and each former
/// halfline is oriented from its finite vertex (a) to the boundary (b).
class TruncatedGraph {
 public:
  TruncatedGraph(MetricGraph base, double truncation_length);

  const MetricGraph& base() const noexcept { return base_; }
  double truncation_length() const noexcept { return L_; }
  const std::vector<TVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<TEdge>& edges() const noexcept { return edges_; }
  const TVertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const TEdge& edge(std::size_t i) const { return edges_.at(i); }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<std::size_t>& incident(std::size_t v) const { return base_.incident(v); }
  std::size_t degree(std::size_t v) const { return base_.degree(v); }
  double total_length() const noexcept;

 private:
  MetricGraph base_;
  double L_;
  std::vector<TVertex> vertices_;
  std::vector<TEdge> edges_;
};

TruncatedGraph truncate(const MetricGraph& g, double L);

struct CoreMetrics {
  double diameter = 0.0;
  double total_length = 0.0;
};

/// Diameter and length of the compact core (graph minus halflines).
CoreMetrics compact_core_metrics(const MetricGraph& g);

/// All-pairs shortest path lengths between vertices over finite edges only.
std::vector<std::vector<double>> finite_vertex_distances(const MetricGraph& g);

}  // namespace nlsg
