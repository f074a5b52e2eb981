#include "nlsg/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_set>

#include "nlsg/error.hpp"

namespace nlsg {

std::string_view to_string(CaseLabel c) noexcept {
  switch (c) {
    case CaseLabel::Terminal: return "TERMINAL";
    case CaseLabel::AssumptionH: return "ASSUMPTION_H";
    case CaseLabel::SingleHalfline: return "SINGLE_HALFLINE";
    case CaseLabel::Other: return "OTHER";
  }
  return "OTHER";
}

CaseLabel case_label_from_string(std::string_view s) {
  for (auto c : {CaseLabel::Terminal, CaseLabel::AssumptionH, CaseLabel::SingleHalfline,
                 CaseLabel::Other})
    if (to_string(c) == s) return c;
  fail(Errc::InvalidArgument, "unknown case label '" + std::string(s) + "'");
}

std::vector<std::string> terminal_edges(const MetricGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    for (auto v : {e.a, e.b}) {
      if (!g.vertex(v).at_infinity && g.degree(v) == 1) {
        out.push_back(e.id);
        break;
      }
    }
  }
  return out;
}

HVerdict satisfies_H(const MetricGraph& g) {
  const auto n = g.num_vertices();
  std::vector<int> comp(n);
  for (std::size_t skip = 0; skip < g.num_edges(); ++skip) {
    std::fill(comp.begin(), comp.end(), -1);
    int ncomp = 0;
    std::vector<char> has_inf;
    for (std::size_t s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      has_inf.push_back(0);
      std::vector<std::size_t> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (g.vertex(v).at_infinity) has_inf[ncomp] = 1;
        for (auto ei : g.incident(v)) {
          if (ei == skip) continue;
          auto w = g.edge(ei).other(v);
          if (comp[w] < 0) {
            comp[w] = ncomp;
            stack.push_back(w);
          }
        }
      }
      ++ncomp;
    }
    if (std::find(has_inf.begin(), has_inf.end(), 0) != has_inf.end())
      return {false, g.edge(skip).id};
  }
  return {g.num_edges() > 0, std::nullopt};
}

bool satisfies_H_cycle(const MetricGraph& g) {
  if (g.num_halflines() == 0) return false;
  const auto n = g.num_vertices();
  // merge every vertex at infinity into one node
  std::size_t omega = n;
  std::vector<std::size_t> node(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (g.vertex(v).at_infinity) {
      if (omega == n) omega = v;
      node[v] = omega;
    } else {
      node[v] = v;
    }
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    auto a = node[g.edge(i).a], b = node[g.edge(i).b];
    if (a == b) continue;  // loops are never bridges
    adj[a].push_back({b, i});
    adj[b].push_back({a, i});
  }
  std::vector<int> tin(n, -1), low(n, 0);
  int timer = 0;
  bool bridge = false;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t via) {
    tin[v] = low[v] = timer++;
    for (auto [w, ei] : adj[v]) {
      if (ei == via) continue;
      if (tin[w] >= 0) {
        low[v] = std::min(low[v], tin[w]);
      } else {
        dfs(w, ei);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > tin[v]) bridge = true;
      }
    }
  };
  dfs(omega, static_cast<std::size_t>(-1));
  return !bridge;
}

bool satisfies_H_trail(const MetricGraph& g, std::size_t edge_cap) {
  const auto m = g.num_edges();
  if (m > edge_cap || m > 64)
    fail(Errc::TooLargeForBruteForce,
         "trail search limited to " + std::to_string(std::min<std::size_t>(edge_cap, 64)) +
             " edges, graph has " + std::to_string(m));
  if (g.num_halflines() < 2) return false;
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
  std::uint64_t covered = 0;

  struct Key {
    std::size_t v;
    std::uint64_t used;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>()(k.used * 1315423911u + k.v);
    }
  };
  std::unordered_set<Key, Hash> seen;

  std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t v, std::uint64_t used) {
    if (covered == all) return;
    if (!seen.insert({v, used}).second) return;
    for (auto ei : g.incident(v)) {
      const auto bit = std::uint64_t{1} << ei;
      if (used & bit) continue;
      const auto& e = g.edge(ei);
      if (e.halfline) {
        covered |= used | bit;
        continue;
      }
      walk(e.other(v), used | bit);
    }
  };
  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = g.edge(i);
    if (!e.halfline) continue;
    auto finite = g.vertex(e.a).at_infinity ? e.b : e.a;
    walk(finite, std::uint64_t{1} << i);
  }
  return covered == all;
}

namespace {

struct REdge {
  std::size_t a;
  std::size_t b;  // unused for halflines
  double length;
  bool halfline;
  bool alive = true;
};

}  // namespace

std::optional<TowerShape> tower_shape(const MetricGraph& g) {
  if (g.num_halflines() != 2) return std::nullopt;
  std::vector<REdge> es;
  for (const auto& e : g.edges()) {
    if (e.halfline)
      es.push_back({g.vertex(e.a).at_infinity ? e.b : e.a, 0, 0.0, true});
    else
      es.push_back({e.a, e.b, e.length, false});
  }
  const auto n = g.num_vertices();
  auto ends_at = [&](std::size_t v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (!es[i].alive) continue;
      if (es[i].a == v) out.push_back(i);
      if (!es[i].halfline && es[i].b == v) out.push_back(i);
    }
    return out;
  };
  // smooth degree-2 vertices
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < n && !changed; ++v) {
      if (g.vertex(v).at_infinity) continue;
      auto inc = ends_at(v);
      if (inc.size() != 2 || inc[0] == inc[1]) continue;
      auto& e1 = es[inc[0]];
      auto& e2 = es[inc[1]];
      if (e1.halfline && e2.halfline) {
        // two halflines meeting at a degree-2 vertex: this is the whole line
        bool rest = false;
        for (std::size_t i = 0; i < es.size(); ++i)
          if (es[i].alive && i != inc[0] && i != inc[1]) rest = true;
        if (rest) return std::nullopt;
        TowerShape t;
        t.line = true;
        return t;
      }
      if (e1.halfline || e2.halfline) {
        auto& h = e1.halfline ? e1 : e2;
        auto& f = e1.halfline ? e2 : e1;
        h.a = f.a == v ? f.b : f.a;
        f.alive = false;
      } else {
        auto y1 = e1.a == v ? e1.b : e1.a;
        auto y2 = e2.a == v ? e2.b : e2.a;
        e1 = {y1, y2, e1.length + e2.length, false};
        e2.alive = false;
      }
      changed = true;
    }
  }

  std::vector<std::size_t> halfs;
  for (std::size_t i = 0; i < es.size(); ++i)
    if (es[i].alive && es[i].halfline) halfs.push_back(i);
  if (halfs.size() != 2 || es[halfs[0]].a != es[halfs[1]].a) return std::nullopt;

  std::size_t cur = es[halfs[0]].a;
  std::vector<std::size_t> used(halfs.begin(), halfs.end());
  std::vector<char> visited(n, 0);
  TowerShape shape;
  std::size_t alive = 0;
  for (const auto& e : es) alive += e.alive;

  while (true) {
    visited[cur] = 1;
    std::vector<std::size_t> rem;
    for (auto i : ends_at(cur))
      if (std::find(used.begin(), used.end(), i) == used.end() &&
          std::find(rem.begin(), rem.end(), i) == rem.end())
        rem.push_back(i);
    if (rem.empty()) {
      if (shape.arcs.empty() && used.size() == alive) {
        shape.line = true;
        return shape;
      }
      return std::nullopt;
    }
    if (rem.size() == 1) {
      const auto& e = es[rem[0]];
      if (e.halfline || e.a != e.b) return std::nullopt;
      shape.loop = e.length;
      used.push_back(rem[0]);
      if (used.size() != alive) return std::nullopt;
      return shape;
    }
    if (rem.size() != 2) return std::nullopt;
    const auto& e1 = es[rem[0]];
    const auto& e2 = es[rem[1]];
    if (e1.halfline || e2.halfline || e1.a == e1.b || e2.a == e2.b) return std::nullopt;
    auto w1 = e1.a == cur ? e1.b : e1.a;
    auto w2 = e2.a == cur ? e2.b : e2.a;
    if (w1 != w2 || visited[w1]) return std::nullopt;
    if (std::abs(e1.length - e2.length) > 1e-9 * std::max(e1.length, e2.length))
      return std::nullopt;
    shape.arcs.push_back(e1.length);
    used.push_back(rem[0]);
    used.push_back(rem[1]);
    cur = w1;
  }
}

bool is_bubble_tower(const MetricGraph& g) { return tower_shape(g).has_value(); }

bool is_line(const MetricGraph& g) {
  auto t = tower_shape(g);
  return t && t->line;
}

TopologyReport classify_case(const MetricGraph& g) {
  TopologyReport r;
  r.num_halflines = g.num_halflines();
  if (r.num_halflines == 0) fail(Errc::CompactGraph, "graph has no halflines");
  r.terminal_edges = terminal_edges(g);
  auto h = satisfies_H(g);
  r.satisfies_H = h.satisfied;
  r.h_violation_witness = h.witness;
  auto t = tower_shape(g);
  r.is_bubble_tower = t.has_value();
  r.is_line = t && t->line;
  if (!r.terminal_edges.empty())
    r.case_label = CaseLabel::Terminal;
  else if (r.satisfies_H)
    r.case_label = CaseLabel::AssumptionH;
  else if (r.num_halflines == 1)
    r.case_label = CaseLabel::SingleHalfline;
  else
    r.case_label = CaseLabel::Other;
  return r;
}

}  // namespace nlsg
