#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "nlsg/closed_forms.hpp"
#include "nlsg/error.hpp"
#include "nlsg/function_space.hpp"
#include "nlsg/graph.hpp"
#include "nlsg/surgery.hpp"

namespace nlsg::test {

/// Code of the nlsg::Error thrown by f, or nullopt if f returns normally.
template <class F>
std::optional<Errc> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Composite Simpson rule with n (even) panels. Test-only quadrature, independent of the library.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 200000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

inline std::shared_ptr<const Discretization> discretize(const MetricGraph& g, double L, double h) {
  return std::make_shared<const Discretization>(std::make_shared<const TruncatedGraph>(g, L), h);
}

/// Random nonnegative function: a few smooth bumps plus noise, zero at the truncation boundary.
inline GraphFunction random_function(const std::shared_ptr<const Discretization>& d, std::mt19937_64& rng,
                                     bool nonnegative = true) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  GraphFunction u(d);
  for (std::size_t k = 0; k < d->num_dofs(); ++k) {
    if (d->is_dirichlet(k)) continue;
    const double x = U(rng);
    u[k] = nonnegative ? x : 2.0 * x - 1.0;
  }
  return u;
}

inline double rel_gradient_error(const GraphFunction& u, double p) {
  const auto g = energy_gradient(u, p);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (u.disc().is_dirichlet(k)) continue;
    const double eps = 1e-6 * std::max(1.0, std::abs(u[k]));
    GraphFunction a = u, b = u;
    a[k] += eps;
    b[k] -= eps;
    const double fd = (energy(a, p).total - energy(b, p).total) / (2.0 * eps);
    num += (fd - g[k]) * (fd - g[k]);
    den += g[k] * g[k];
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

/// Same graph with node structure scaled by 1/lambda.
inline std::shared_ptr<const Discretization> shrunk(const Discretization& d, const MetricGraph& base_scaled, double lambda) {
  std::vector<std::size_t> segs;
  for (std::size_t e = 0; e < d.graph().num_edges(); ++e) segs.push_back(d.segments(e));
  auto tg = std::make_shared<const TruncatedGraph>(base_scaled, d.graph().truncation_length() / lambda);
  return std::make_shared<const Discretization>(tg, segs);
}

inline double piece_at(const SolitonParams& s, const std::vector<Piece>& ps, double x) {
  for (const auto& q : ps)
    if (x >= q.s0 - 1e-12 && x <= q.s1 + 1e-12) return s.value(std::abs(q.x0 + q.k * (x - q.s0)));
  return NAN;
}

/// Largest jump between the closed-form pieces meeting at a finite vertex.
inline double continuum_jump(const Competitor& c, double p, double mu) {
  const auto s = soliton(p, mu);
  const TruncatedGraph tg(c.graph, 40.0);
  double worst = 0.0;
  for (std::size_t v = 0; v < tg.num_vertices(); ++v) {
    if (tg.vertex(v).boundary) continue;
    double lo = INFINITY, hi = -INFINITY;
    for (auto e : tg.incident(v)) {
      const auto& ed = tg.edge(e);
      for (double at : {0.0, ed.length}) {
        if ((at == 0.0 ? ed.a : ed.b) != v) continue;
        const double val = piece_at(s, c.pieces[e], at);
        lo = std::min(lo, val);
        hi = std::max(hi, val);
      }
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

/// Largest jump between nodal values of u read edge by edge at each vertex.
inline double discrete_jump(const GraphFunction& u) {
  const auto& d = u.disc();
  const auto& g = d.graph();
  double worst = 0.0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    double lo = INFINITY, hi = -INFINITY;
    for (auto e : g.incident(v)) {
      const auto& ed = g.edge(e);
      if (ed.a == v) {
        lo = std::min(lo, u.at(e, 0));
        hi = std::max(hi, u.at(e, 0));
      }
      if (ed.b == v) {
        lo = std::min(lo, u.at(e, d.segments(e)));
        hi = std::max(hi, u.at(e, d.segments(e)));
      }
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

}  // namespace nlsg::test
