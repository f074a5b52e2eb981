#include "nlsg/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "nlsg/closed_forms.hpp"
#include "nlsg/corpus.hpp"
#include "nlsg/error.hpp"
#include "nlsg/topology.hpp"

namespace nlsg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SolitonParams require_soliton(double p, double mu) {
  if (!(mu > 0.0)) fail(Errc::InvalidArgument, "mass must be positive");
  return soliton(p, mu);
}

PiecewiseLinear sample_profile(const SolitonParams& s, double a, double b, double h) {
  PiecewiseLinear f;
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / h - 1e-12)));
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    f.x.push_back(x);
    f.y.push_back(s.value(x));
  }
  return f;
}

/// Pieces given in the distance t from vertex `from` turned into arc coordinates.
std::vector<Piece> orient(std::vector<Piece> in_t, const TEdge& e, std::size_t from) {
  if (e.a == from) return in_t;
  std::vector<Piece> out;
  for (const auto& q : in_t)
    out.push_back({e.length - q.s1, e.length - q.s0, q.x0 + q.k * (q.s1 - q.s0), -q.k});
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Piece> linear(double len, double x0, double k) { return {{0.0, len, x0, k}}; }

/// Loop of length c centred on the soliton peak.
std::vector<Piece> centred_loop(double c) { return {{0.0, c / 2.0, c / 2.0, -1.0}, {c / 2.0, c, 0.0, 1.0}}; }

/// Pointwise minimum of lines a_i + k_i s on [lo, hi] as pieces.
std::vector<Piece> lower_envelope(const std::vector<std::pair<double, double>>& lines, double lo, double hi) {
  std::vector<double> cuts = {lo, hi};
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double dk = lines[i].second - lines[j].second;
      if (dk == 0.0) continue;
      const double s = (lines[j].first - lines[i].first) / dk;
      if (s > lo && s < hi) cuts.push_back(s);
    }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Piece> out;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double s0 = cuts[c], s1 = cuts[c + 1];
    if (s1 - s0 <= 0.0) continue;
    const double mid = 0.5 * (s0 + s1);
    std::size_t best = 0;
    for (std::size_t i = 1; i < lines.size(); ++i)
      if (lines[i].first + lines[i].second * mid < lines[best].first + lines[best].second * mid) best = i;
    const auto [a, k] = lines[best];
    if (!out.empty() && out.back().k == k) {
      out.back().s1 = s1;
    } else {
      out.push_back({s0, s1, a + k * s0, k});
    }
  }
  return out;
}

double piece_value(const SolitonParams& sol, const std::vector<Piece>& ps, double s) {
  for (const auto& q : ps)
    if (s <= q.s1 || &q == &ps.back()) return sol.value(std::abs(q.x0 + q.k * (s - q.s0)));
  return 0.0;
}

Competitor finish(std::string shape, const MetricGraph& g, std::shared_ptr<const TruncatedGraph> tg,
                  std::vector<std::vector<Piece>> pieces, const SolitonParams& sol,
                  const SolverConfig& cfg) {
  const double p = sol.p, mu = sol.mu;
  auto d = std::make_shared<const Discretization>(tg, cfg.h_target);
  auto u = sample(d, [&](std::size_t e, double s) { return piece_value(sol, pieces[e], s); });
  u = rescale_mass(u, mu);

  const double x_far = 80.0 / sol.width_rate;
  double kin = 0.0, pot = 0.0, m = 0.0;
  for (std::size_t e = 0; e < tg->num_edges(); ++e) {
    for (const auto& q : pieces[e]) {
      double s1 = q.s1;
      if (!std::isfinite(s1)) {
        if (!(q.k > 0.0)) fail(Errc::WrongShape, "construction does not decay along a halfline");
        s1 = q.s0 + std::max(0.0, x_far - q.x0) / q.k;
      }
      if (!(s1 > q.s0)) continue;
      auto x = [&](double s) { return std::abs(q.x0 + q.k * (s - q.s0)); };
      kin += integrate([&](double s) { const double v = q.k * sol.derivative(x(s)); return v * v; }, q.s0, s1, 1e-13);
      pot += integrate([&](double s) { return std::pow(sol.value(x(s)), p); }, q.s0, s1, 1e-13);
      m += integrate([&](double s) { const double v = sol.value(x(s)); return v * v; }, q.s0, s1, 1e-13);
    }
  }
  Competitor c;
  c.shape = std::move(shape);
  c.graph = g;
  c.pieces = std::move(pieces);
  c.discrete_energy = energy(u, p).total;
  c.u = std::move(u);
  c.continuum_energy = 0.5 * kin - pot / p;
  c.continuum_mass = m;
  c.soliton_energy = soliton_energy(p, mu);
  return c;
}

std::shared_ptr<const TruncatedGraph> truncated(const MetricGraph& g, const SolverConfig& cfg) {
  cfg.validate();
  return std::make_shared<const TruncatedGraph>(g, cfg.truncation_length);
}

std::vector<std::size_t> halflines_of(const MetricGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (g.edge(e).halfline) out.push_back(e);
  return out;
}

std::size_t finite_end(const MetricGraph& g, std::size_t e) {
  const auto& ed = g.edge(e);
  return g.vertex(ed.a).at_infinity ? ed.b : ed.a;
}

std::vector<Piece> halfline_tail(double x0, double k) { return {{0.0, kInf, x0, k}}; }

}  // namespace

SolitonCut cut_soliton(double p, double mu, double ell, double h, double tail_length) {
  if (!(ell > 0.0)) fail(Errc::NonpositiveWidth, "cut width must be positive");
  if (!(h > 0.0) || !(tail_length > 0.0)) fail(Errc::InvalidArgument, "sampling parameters must be positive");
  const auto s = require_soliton(p, mu);
  SolitonCut c;
  c.p = p;
  c.mu = mu;
  c.ell = ell;
  c.head = sample_profile(s, -ell / 2.0, ell / 2.0, h);
  c.tail = sample_profile(s, ell / 2.0, ell / 2.0 + tail_length, h);
  auto sq = [&](double x) { const double v = s.value(x); return v * v; };
  c.head_mass = 2.0 * integrate(sq, 0.0, ell / 2.0, 1e-13);
  const double far = std::max(ell / 2.0, 80.0 / s.width_rate);
  c.tail_mass_right = integrate(sq, ell / 2.0, far, 1e-13);
  c.tail_mass_left = c.tail_mass_right;
  return c;
}

Competitor pendant_competitor(double ell, double mu, double p, const SolverConfig& cfg) {
  if (!(ell > 0.0)) fail(Errc::WrongShape, "pendant length must be positive");
  return pendant_competitor(corpus::pendant_line(ell), mu, p, cfg);
}

Competitor pendant_competitor(const MetricGraph& g, double mu, double p, const SolverConfig& cfg) {
  const auto sol = require_soliton(p, mu);
  const auto hl = halflines_of(g);
  if (g.num_edges() != 3 || hl.size() != 2) fail(Errc::WrongShape, "expected two halflines and one pendant");
  const auto v = finite_end(g, hl[0]);
  if (finite_end(g, hl[1]) != v) fail(Errc::WrongShape, "halflines must share their finite vertex");
  std::size_t pend = 0;
  while (g.edge(pend).halfline) ++pend;
  const auto& pe = g.edge(pend);
  if (pe.is_loop() || (pe.a != v && pe.b != v) || g.degree(pe.other(v)) != 1)
    fail(Errc::WrongShape, "expected a pendant edge at the halfline vertex");
  const double ell = pe.length;

  auto tg = truncated(g, cfg);
  std::vector<std::vector<Piece>> pieces(g.num_edges());
  // head rearranged onto the pendant, peak at the tip
  pieces[pend] = orient(linear(ell, ell / 2.0, -0.5), tg->edge(pend), v);
  for (auto e : hl) pieces[e] = halfline_tail(ell / 2.0, 1.0);
  return finish("pendant", g, tg, std::move(pieces), sol, cfg);
}

Competitor signpost_competitor(double loop, double stem, double mu, double p, const SolverConfig& cfg) {
  if (!(loop > 0.0) || !(stem > 0.0)) fail(Errc::WrongShape, "signpost lengths must be positive");
  return signpost_competitor(corpus::signpost(loop, stem), mu, p, cfg);
}

Competitor signpost_competitor(const MetricGraph& g, double mu, double p, const SolverConfig& cfg) {
  const auto sol = require_soliton(p, mu);
  const auto hl = halflines_of(g);
  if (g.num_edges() != 4 || hl.size() != 2) fail(Errc::WrongShape, "expected two halflines, a stem and a loop");
  const auto base = finite_end(g, hl[0]);
  if (finite_end(g, hl[1]) != base) fail(Errc::WrongShape, "halflines must share their finite vertex");
  std::size_t stem = g.num_edges(), loop = g.num_edges();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.edge(e).halfline) continue;
    (g.edge(e).is_loop() ? loop : stem) = e;
  }
  if (stem == g.num_edges() || loop == g.num_edges()) fail(Errc::WrongShape, "expected one stem and one loop");
  const auto& se = g.edge(stem);
  if (se.a != base && se.b != base) fail(Errc::WrongShape, "stem must start at the halfline vertex");
  const auto top = se.other(base);
  if (g.edge(loop).a != top) fail(Errc::WrongShape, "loop must sit at the top of the stem");
  const double c = g.edge(loop).length, l1 = se.length;

  auto tg = truncated(g, cfg);
  std::vector<std::vector<Piece>> pieces(g.num_edges());
  pieces[loop] = centred_loop(c);
  // both flanks of width l1/2 rearranged onto the stem
  pieces[stem] = orient(linear(l1, c / 2.0, 0.5), tg->edge(stem), top);
  for (auto e : hl) pieces[e] = halfline_tail(c / 2.0 + l1 / 2.0, 1.0);
  return finish("signpost", g, tg, std::move(pieces), sol, cfg);
}

Competitor tadpole_competitor(const MetricGraph& g, double mu, double p, const SolverConfig& cfg) {
  const auto sol = require_soliton(p, mu);
  const auto hl = halflines_of(g);
  if (g.num_edges() != 2 || hl.size() != 1) fail(Errc::WrongShape, "expected one halfline and one loop");
  const std::size_t loop = hl[0] == 0 ? 1 : 0;
  if (!g.edge(loop).is_loop() || g.edge(loop).a != finite_end(g, hl[0]))
    fail(Errc::WrongShape, "loop must sit at the halfline vertex");
  const double c = g.edge(loop).length;

  auto tg = truncated(g, cfg);
  std::vector<std::vector<Piece>> pieces(g.num_edges());
  pieces[loop] = centred_loop(c);
  // both tails rearranged onto the single halfline
  pieces[hl[0]] = halfline_tail(c / 2.0, 0.5);
  return finish("tadpole", g, tg, std::move(pieces), sol, cfg);
}

Competitor fork_competitor(const MetricGraph& g, double mu, double p, const SolverConfig& cfg) {
  const auto sol = require_soliton(p, mu);
  const auto hl = halflines_of(g);
  if (hl.size() != 1 || g.num_edges() < 3) fail(Errc::WrongShape, "expected one halfline and at least two pendants");
  const auto v = finite_end(g, hl[0]);
  std::vector<std::size_t> pend;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (e == hl[0]) continue;
    const auto& ed = g.edge(e);
    if (ed.is_loop() || (ed.a != v && ed.b != v) || g.degree(ed.other(v)) != 1)
      fail(Errc::WrongShape, "every finite edge must be a pendant at the halfline vertex");
    pend.push_back(e);
  }
  // the two longest pendants rise to their tips and carry the head; the others fall away
  // from the junction next to the start of the halfline, which then takes both tails
  std::sort(pend.begin(), pend.end(), [&](auto x, auto y) { return g.edge(x).length > g.edge(y).length; });
  const std::vector<std::size_t> rising(pend.begin(), pend.begin() + 2);
  const std::vector<std::size_t> falling(pend.begin() + 2, pend.end());
  auto breakpoints = [&](const std::vector<std::size_t>& es) {
    std::vector<double> c;
    for (auto e : es) c.push_back(g.edge(e).length);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  };
  auto count_longer = [&](const std::vector<std::size_t>& es, double r) {
    int n = 0;
    for (auto e : es) n += g.edge(e).length > r;
    return n;
  };
  // superlevel measure at distance r from v inside the rising pendants
  auto inner = [&](double r) {
    double S = 0.0;
    for (auto e : rising) S += std::max(0.0, g.edge(e).length - r);
    return S;
  };
  const double S0 = inner(0.0);
  auto outer = [&](double r) {
    double S = S0 + r;
    for (auto e : falling) S += std::min(r, g.edge(e).length);
    return S;
  };

  auto tg = truncated(g, cfg);
  std::vector<std::vector<Piece>> pieces(g.num_edges());
  const auto rcuts = breakpoints(rising);
  for (auto e : rising) {
    const double len = g.edge(e).length;
    std::vector<Piece> out;
    double r0 = 0.0;
    for (double c : rcuts) {
      if (c <= r0) continue;
      const double r1 = std::min(c, len);
      out.push_back({r0, r1, inner(r0) / 2.0, -count_longer(rising, 0.5 * (r0 + r1)) / 2.0});
      r0 = r1;
      if (r0 >= len) break;
    }
    pieces[e] = orient(std::move(out), tg->edge(e), v);
  }
  auto fcuts = breakpoints(falling);
  fcuts.push_back(kInf);
  auto outward = [&](double len) {
    std::vector<Piece> out;
    double r0 = 0.0;
    for (double c : fcuts) {
      if (c <= r0) continue;
      const double r1 = std::min(c, len);
      const double mid = std::isfinite(r1) ? 0.5 * (r0 + r1) : r0 + 1.0;
      out.push_back({r0, r1, outer(r0) / 2.0, (1 + count_longer(falling, mid)) / 2.0});
      r0 = r1;
      if (r0 >= len) break;
    }
    return out;
  };
  for (auto e : falling) pieces[e] = orient(outward(g.edge(e).length), tg->edge(e), v);
  pieces[hl[0]] = outward(kInf);
  return finish("fork", g, tg, std::move(pieces), sol, cfg);
}

Competitor fold_on_bubble_tower(const MetricGraph& tower, double mu, double p, const SolverConfig& cfg) {
  const auto sol = require_soliton(p, mu);
  if (!tower_shape(tower)) fail(Errc::NotABubbleTower, "graph is not a bubble tower");
  auto tg = truncated(tower, cfg);
  const auto hl = halflines_of(tower);
  const auto root = finite_end(tower, hl[0]);
  const auto n = tg->num_vertices();

  auto dijkstra = [&](std::vector<double> dist) {
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::size_t v = 0; v < n; ++v)
      if (std::isfinite(dist[v])) pq.push({dist[v], v});
    while (!pq.empty()) {
      auto [dv, v] = pq.top();
      pq.pop();
      if (dv > dist[v]) continue;
      for (auto ei : tg->incident(v)) {
        const auto& e = tg->edge(ei);
        if (e.from_halfline) continue;
        const auto w = e.other(v);
        if (dv + e.length < dist[w]) {
          dist[w] = dv + e.length;
          pq.push({dist[w], w});
        }
      }
    }
    return dist;
  };
  std::vector<double> init(n, kInf);
  init[root] = 0.0;
  const auto from_root = dijkstra(init);

  // the peak goes to the point of the core farthest from the root
  std::size_t top_edge = tg->num_edges();
  double top_s = 0.0, ecc = 0.0;
  for (std::size_t e = 0; e < tg->num_edges(); ++e) {
    const auto& ed = tg->edge(e);
    if (ed.from_halfline) continue;
    const double da = from_root[ed.a], db = from_root[ed.b];
    const double s = std::clamp((db + ed.length - da) / 2.0, 0.0, ed.length);
    const double far = std::min(da + s, db + ed.length - s);
    if (far > ecc) {
      ecc = far;
      top_edge = e;
      top_s = s;
    }
  }

  std::vector<double> seed(n, kInf);
  if (top_edge == tg->num_edges()) {
    seed[root] = 0.0;
  } else {
    const auto& te = tg->edge(top_edge);
    seed[te.a] = std::min(seed[te.a], top_s);
    seed[te.b] = std::min(seed[te.b], te.length - top_s);
  }
  const auto dist = dijkstra(seed);

  std::vector<std::vector<Piece>> pieces(tg->num_edges());
  for (std::size_t e = 0; e < tg->num_edges(); ++e) {
    const auto& ed = tg->edge(e);
    if (ed.from_halfline) {
      pieces[e] = halfline_tail(dist[ed.a], 1.0);
      continue;
    }
    const std::pair<double, double> up{dist[ed.a], 1.0}, down{dist[ed.b] + ed.length, -1.0};
    std::vector<Piece> env;
    if (e == top_edge) {
      env = lower_envelope({up, down, {top_s, -1.0}}, 0.0, top_s);
      const auto right = lower_envelope({up, down, {-top_s, 1.0}}, top_s, ed.length);
      env.insert(env.end(), right.begin(), right.end());
    } else {
      env = lower_envelope({up, down}, 0.0, ed.length);
    }
    pieces[e] = std::move(env);
  }
  return finish("bubble_tower", tower, tg, std::move(pieces), sol, cfg);
}

}  // namespace nlsg
