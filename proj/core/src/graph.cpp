#include "nlsg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "nlsg/error.hpp"

namespace nlsg {

std::size_t MetricGraph::vertex_index(const std::string& id) const {
  auto it = vindex_.find(id);
  if (it == vindex_.end()) fail(Errc::UnknownVertex, "unknown vertex '" + id + "'");
  return it->second;
}

std::size_t MetricGraph::edge_index(const std::string& id) const {
  auto it = eindex_.find(id);
  if (it == eindex_.end()) fail(Errc::UnknownEdge, "unknown edge '" + id + "'");
  return it->second;
}

std::optional<std::size_t> MetricGraph::find_vertex(const std::string& id) const {
  auto it = vindex_.find(id);
  if (it == vindex_.end()) return std::nullopt;
  return it->second;
}

std::size_t MetricGraph::num_halflines() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.halfline; }));
}

double MetricGraph::finite_length() const noexcept {
  double s = 0.0;
  for (const auto& e : edges_)
    if (!e.halfline) s += e.length;
  return s;
}

MetricGraph build_graph(const GraphSpec& spec) {
  MetricGraph g;
  for (const auto& v : spec.vertices) {
    if (v.id.empty()) fail(Errc::ParseError, "vertex with empty id");
    if (!g.vindex_.emplace(v.id, g.vertices_.size()).second)
      fail(Errc::DuplicateId, "duplicate vertex id '" + v.id + "'");
    g.vertices_.push_back({v.id, v.infinity});
  }
  if (g.vertices_.empty()) fail(Errc::DisconnectedGraph, "graph has no vertices");

  for (const auto& e : spec.edges) {
    if (e.id.empty()) fail(Errc::ParseError, "edge with empty id");
    if (!g.eindex_.emplace(e.id, g.edges_.size()).second)
      fail(Errc::DuplicateId, "duplicate edge id '" + e.id + "'");
    Edge out;
    out.id = e.id;
    out.a = g.vertex_index(e.from);
    out.b = g.vertex_index(e.to);
    const bool ia = g.vertices_[out.a].at_infinity;
    const bool ib = g.vertices_[out.b].at_infinity;
    if (out.a == out.b && ia)
      fail(Errc::SelfLoopAtInfinity, "edge '" + e.id + "' is a loop at a vertex at infinity");
    if (ia && ib)
      fail(Errc::InfinityToInfinityEdge, "edge '" + e.id + "' joins two vertices at infinity");
    if (e.halfline == e.length.has_value())
      fail(Errc::ParseError, "edge '" + e.id + "' needs exactly one of length or halfline");
    if (e.halfline != (ia || ib))
      fail(Errc::HalflineMarkerMismatch,
           "edge '" + e.id + "': halfline marker requires exactly one endpoint at infinity");
    if (e.length) {
      if (!(*e.length > 0.0) || !std::isfinite(*e.length))
        fail(Errc::NonpositiveLength, "edge '" + e.id + "' has nonpositive or infinite length");
      out.length = *e.length;
    } else {
      out.halfline = true;
    }
    g.edges_.push_back(std::move(out));
  }

  g.incidence_.assign(g.vertices_.size(), {});
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    g.incidence_[g.edges_[i].a].push_back(i);
    g.incidence_[g.edges_[i].b].push_back(i);
  }
  for (std::size_t v = 0; v < g.vertices_.size(); ++v)
    if (g.vertices_[v].at_infinity && g.incidence_[v].size() != 1)
      fail(Errc::InfinityDegreeViolation,
           "vertex at infinity '" + g.vertices_[v].id + "' has degree " +
               std::to_string(g.incidence_[v].size()));

  std::vector<char> seen(g.vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto ei : g.incidence_[v]) {
      auto w = g.edges_[ei].other(v);
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    fail(Errc::DisconnectedGraph, "graph is not connected");
  return g;
}

std::size_t degree(const MetricGraph& g, const std::string& vertex_id) {
  return g.degree(g.vertex_index(vertex_id));
}

GraphSpec to_spec(const MetricGraph& g) {
  GraphSpec s;
  for (const auto& v : g.vertices()) s.vertices.push_back({v.id, v.at_infinity});
  for (const auto& e : g.edges()) {
    GraphSpec::E out{e.id, g.vertex(e.a).id, g.vertex(e.b).id, std::nullopt, e.halfline};
    if (!e.halfline) out.length = e.length;
    s.edges.push_back(std::move(out));
  }
  return s;
}

void GraphBuilder::ensure(const std::string& id) {
  for (const auto& v : spec_.vertices)
    if (v.id == id) return;
  spec_.vertices.push_back({id, false});
}

GraphBuilder& GraphBuilder::vertex(const std::string& id) {
  ensure(id);
  return *this;
}

GraphBuilder& GraphBuilder::edge(const std::string& id, const std::string& from,
                                 const std::string& to, double length) {
  ensure(from);
  ensure(to);
  spec_.edges.push_back({id, from, to, length, false});
  return *this;
}

GraphBuilder& GraphBuilder::halfline(const std::string& id, const std::string& from) {
  ensure(from);
  spec_.vertices.push_back({id + "_inf", true});
  spec_.edges.push_back({id, from, id + "_inf", std::nullopt, true});
  return *this;
}

TruncatedGraph::TruncatedGraph(MetricGraph base, double truncation_length)
    : base_(std::move(base)), L_(truncation_length) {
  if (!(L_ > 0.0) || !std::isfinite(L_))
    fail(Errc::NonpositiveTruncation, "truncation length must be positive and finite");
  for (const auto& v : base_.vertices()) vertices_.push_back({v.id, v.at_infinity});
  for (const auto& e : base_.edges()) {
    TEdge t{e.id, e.a, e.b, e.length, e.halfline};
    if (e.halfline) {
      t.length = L_;
      if (base_.vertex(e.a).at_infinity) std::swap(t.a, t.b);
    }
    edges_.push_back(std::move(t));
  }
}

double TruncatedGraph::total_length() const noexcept {
  double s = 0.0;
  for (const auto& e : edges_) s += e.length;
  return s;
}

TruncatedGraph truncate(const MetricGraph& g, double L) { return TruncatedGraph(g, L); }

std::vector<std::vector<double>> finite_vertex_distances(const MetricGraph& g) {
  const auto n = g.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    auto& ds = d[s];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    ds[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [dv, v] = pq.top();
      pq.pop();
      if (dv > ds[v]) continue;
      for (auto ei : g.incident(v)) {
        const auto& e = g.edge(ei);
        if (e.halfline) continue;
        auto w = e.other(v);
        if (dv + e.length < ds[w]) {
          ds[w] = dv + e.length;
          pq.push({ds[w], w});
        }
      }
    }
  }
  return d;
}

namespace {

// max over t in [0, m] of min(A + t, B + m - t)
double far_on_edge(double A, double B, double m) {
  return std::min({(A + B + m) / 2.0, A + m, B + m});
}

}  // namespace

CoreMetrics compact_core_metrics(const MetricGraph& g) {
  std::vector<std::size_t> fin;
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    if (!g.edge(i).halfline) fin.push_back(i);
  if (fin.empty()) fail(Errc::EmptyCompactCore, "graph has no finite edges");

  const auto D = finite_vertex_distances(g);
  CoreMetrics out;
  for (auto i : fin) out.total_length += g.edge(i).length;

  for (auto i : fin) {
    const auto& e = g.edge(i);
    const double len = e.length;
    // same-edge distances
    out.diameter = std::max(out.diameter, std::min(len, (D[e.a][e.b] + len) / 2.0));
    for (auto j : fin) {
      if (j == i) continue;
      const auto& f = g.edge(j);
      const double m = f.length;
      // distance from x at s on e to the endpoints of f
      auto A = [&](double s) { return std::min(s + D[e.a][f.a], len - s + D[e.b][f.a]); };
      auto B = [&](double s) { return std::min(s + D[e.a][f.b], len - s + D[e.b][f.b]); };
      std::vector<double> cand{0.0, len};
      auto add = [&](double s) {
        if (s > 0.0 && s < len) cand.push_back(s);
      };
      add((len + D[e.b][f.a] - D[e.a][f.a]) / 2.0);
      add((len + D[e.b][f.b] - D[e.a][f.b]) / 2.0);
      std::sort(cand.begin(), cand.end());
      const auto nb = cand.size();
      // within each piece A and B are linear; add points where B - A hits -m, 0, m
      for (std::size_t k = 0; k + 1 < nb; ++k) {
        const double s0 = cand[k], s1 = cand[k + 1];
        const double d0 = B(s0) - A(s0), d1 = B(s1) - A(s1);
        for (double target : {-m, 0.0, m}) {
          if ((d0 - target) * (d1 - target) < 0.0)
            cand.push_back(s0 + (target - d0) * (s1 - s0) / (d1 - d0));
        }
      }
      for (double s : cand) out.diameter = std::max(out.diameter, far_on_edge(A(s), B(s), m));
    }
  }
  return out;
}

}  // namespace nlsg
