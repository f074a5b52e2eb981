#include "nlsg/minimize.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "nlsg/closed_forms.hpp"
#include "nlsg/error.hpp"
#include "operators.hpp"

namespace nlsg {

std::string_view to_string(InitStrategy s) noexcept {
  switch (s) {
    case InitStrategy::VertexBump: return "VERTEX_BUMP";
    case InitStrategy::HalflineSoliton: return "HALFLINE_SOLITON";
    case InitStrategy::EdgeUniform: return "EDGE_UNIFORM";
    case InitStrategy::Random: return "RANDOM";
  }
  return "RANDOM";
}

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Converged: return "CONVERGED";
    case Status::MaxIter: return "MAX_ITER";
    case Status::UnboundedSuspected: return "UNBOUNDED_SUSPECTED";
  }
  return "MAX_ITER";
}

InitStrategy init_strategy_from_string(std::string_view s) {
  for (auto v : {InitStrategy::VertexBump, InitStrategy::HalflineSoliton, InitStrategy::EdgeUniform,
                 InitStrategy::Random})
    if (to_string(v) == s) return v;
  fail(Errc::InvalidArgument, "unknown init strategy '" + std::string(s) + "'");
}

void SolverConfig::validate() const {
  if (!(truncation_length > 0.0)) fail(Errc::NonpositiveTruncation, "truncation length must be positive");
  if (!(h_target > 0.0)) fail(Errc::InvalidArgument, "h_target must be positive");
  if (!(dt > 0.0) || !(dt_max >= dt) || !(dt_min > 0.0))
    fail(Errc::InvalidArgument, "flow steps must satisfy 0 < dt_min, dt <= dt_max");
  if (!(tol_energy > 0.0) || !(tol_residual > 0.0))
    fail(Errc::InvalidArgument, "tolerances must be positive");
  if (max_iterations < 1 || restarts < 1) fail(Errc::InvalidArgument, "iteration counts must be positive");
  if (init_strategies.empty()) fail(Errc::InvalidArgument, "at least one init strategy required");
  if (blowup_energy_floor && !(*blowup_energy_floor < 0.0))
    fail(Errc::InvalidArgument, "blow-up floor must be negative");
}

double SolverConfig::floor_for(double p, double mu) const {
  if (blowup_energy_floor) return *blowup_energy_floor;
  if (p < 6.0) return 1e3 * halfsoliton_energy(p, mu);
  return -1e3;
}

namespace {

using detail::Operators;
using detail::assemble;

constexpr double kMinShift = 1e-6;
/// Width in cells of the concentrated starts used at p >= 6.
constexpr double kProbeCells = 10.0;

void clamp_negative(GraphFunction& u) {
  for (auto& x : u.values())
    if (x < 0.0) x = 0.0;
}

double effective_width(const EnergyBreakdown& b) {
  return b.kinetic > 0.0 ? std::sqrt(b.mass / (2.0 * b.kinetic)) : std::numeric_limits<double>::infinity();
}

}  // namespace

double escape_fraction(const GraphFunction& u) {
  const auto& d = u.disc();
  const auto& g = d.graph();
  const double total = mass(u);
  if (!(total > 0.0)) return 0.0;
  double best = 0.0;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (!g.edge(e).from_halfline) continue;
    const double half = g.edge(e).length / 2.0;
    const double h = d.spacing(e);
    double m = 0.0;
    for (std::size_t i = 0; i < d.segments(e); ++i) {
      const double s0 = h * static_cast<double>(i);
      const double frac = std::clamp((s0 + h - half) / h, 0.0, 1.0);
      if (frac <= 0.0) continue;
      const double a = u.at(e, i), b = u.at(e, i + 1);
      m += frac * h * (a * a + a * b + b * b) / 3.0;
    }
    best = std::max(best, m / total);
  }
  return best;
}

GroundStateResult normalized_gradient_flow(const GraphFunction& u0, double p, double mu,
                                           const SolverConfig& cfg, const FlowObserver& observer) {
  cfg.validate();
  if (!(p > 2.0)) fail(Errc::ExponentOutOfRange, "flow needs p > 2");
  if (!(mu > 0.0)) fail(Errc::InvalidArgument, "target mass must be positive");
  GraphFunction u = u0;
  clamp_negative(u);
  if (!(mass(u) > 0.0)) fail(Errc::ZeroInitialMass, "initial guess has zero mass");
  u = rescale_mass(u, mu);

  const auto& d = u.disc();
  const auto op = assemble(d);
  const auto nfree = static_cast<Eigen::Index>(op.dofs.size());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  double dt = cfg.dt;
  double sigma = 0.0;
  auto factor = [&]() {
    Eigen::SparseMatrix<double> P = op.K + sigma * op.M;
    solver.compute(P);
    if (solver.info() != Eigen::Success) fail(Errc::SolverError, "preconditioner factorization failed");
  };
  const double floor = cfg.floor_for(p, mu);
  const double hmin = d.min_spacing();
  auto br = energy(u, p);
  double E = br.total;
  double rel = std::numeric_limits<double>::infinity();
  int streak = 0;
  Status status = Status::MaxIter;
  int it = 0;
  double omega = 0.0, residual = 0.0;
  Eigen::VectorXd gf(nfree), uf(nfree), step(nfree), Mu(nfree);

  auto measure = [&](const std::vector<double>& g) {
    for (Eigen::Index k = 0; k < nfree; ++k) uf[k] = u[op.dofs[static_cast<std::size_t>(k)]];
    Mu = op.M * uf;
    omega = (p * br.potential - 2.0 * br.kinetic) / br.mass;
    double s = 0.0;
    for (Eigen::Index k = 0; k < nfree; ++k) {
      const auto j = op.dofs[static_cast<std::size_t>(k)];
      const double r = g[j] + omega * Mu[k];
      s += r * r / d.lumped_weight(j);
    }
    residual = std::sqrt(s);
  };

  for (;; ++it) {
    const auto g = energy_gradient(u, p);
    measure(g);
    const double target = std::max(omega, kMinShift);
    if (it == 0 || std::abs(target - sigma) > 0.1 * sigma) {
      sigma = target;
      factor();
    }
    if (rel < cfg.tol_energy && residual < cfg.tol_residual) {
      status = Status::Converged;
      break;
    }
    if (E < floor || (p >= 6.0 && E < 0.0 && effective_width(br) < cfg.collapse_cells * hmin)) {
      status = Status::UnboundedSuspected;
      break;
    }
    if (it >= cfg.max_iterations) break;

    for (Eigen::Index k = 0; k < nfree; ++k) gf[k] = g[op.dofs[static_cast<std::size_t>(k)]];
    bool accepted = false;
    GraphFunction v(u.disc_ptr());
    EnergyBreakdown bv;
    step = solver.solve(gf);
    {
      const Eigen::VectorXd b = solver.solve(Mu);
      const double beta = Mu.dot(step) / Mu.dot(b);
      step -= beta * b;
    }
    while (!accepted) {
      v.values() = u.values();
      for (Eigen::Index k = 0; k < nfree; ++k) v[op.dofs[static_cast<std::size_t>(k)]] -= dt * step[k];
      clamp_negative(v);
      if (mass(v) > 0.0) {
        v = rescale_mass(v, mu);
        bv = energy(v, p);
        if (bv.total <= E + 1e-14 * std::max(1.0, std::abs(E))) {
          accepted = true;
          break;
        }
      }
      streak = 0;
      dt *= 0.5;
      if (dt < cfg.dt_min) break;
    }
    if (!accepted) {
      // step control exhausted; the iterate is as stationary as the flow can make it
      status = residual < cfg.tol_residual ? Status::Converged : Status::MaxIter;
      break;
    }
    rel = std::abs(E - bv.total) / std::max(std::abs(bv.total), 1e-300);
    u = std::move(v);
    br = bv;
    E = bv.total;
    if (observer) observer(it + 1, E, br.mass);
    if (++streak >= 3 && dt < cfg.dt_max) {
      dt = std::min(2.0 * dt, cfg.dt_max);
      streak = 0;
    }
  }

  GroundStateResult r;
  r.energy = E;
  r.mass = br.mass;
  r.omega = omega;
  r.grad_residual = residual;
  r.kirchhoff_max_residual = max_kirchhoff_residual(u);
  r.iterations = it;
  r.status = status;
  r.escape_fraction = escape_fraction(u);
  r.mass_escaped = r.escape_fraction > 0.5;
  r.u = std::move(u);
  return r;
}

namespace {

std::vector<double> vertex_distances_from_point(const TruncatedGraph& g, std::size_t e0, double c) {
  const auto n = g.num_vertices();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const auto& ed = g.edge(e0);
  dist[ed.a] = std::min(dist[ed.a], c);
  dist[ed.b] = std::min(dist[ed.b], ed.length - c);
  pq.push({dist[ed.a], ed.a});
  pq.push({dist[ed.b], ed.b});
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv > dist[v]) continue;
    for (auto ei : g.incident(v)) {
      const auto& e = g.edge(ei);
      auto w = e.other(v);
      if (dv + e.length < dist[w]) {
        dist[w] = dv + e.length;
        pq.push({dist[w], w});
      }
    }
  }
  return dist;
}

// distance from point (e0, c) to (e, s)
double point_distance(const TruncatedGraph& g, const std::vector<double>& dv, std::size_t e0, double c,
                      std::size_t e, double s) {
  const auto& ed = g.edge(e);
  double r = std::min(dv[ed.a] + s, dv[ed.b] + ed.length - s);
  if (e == e0) r = std::min(r, std::abs(s - c));
  return r;
}

std::function<double(double)> radial_profile(double p, double mu, double scale) {
  if (p < 6.0) {
    auto s = soliton(p, mu);
    return [s, scale](double r) { return s.value(r / scale); };
  }
  auto s = soliton_p6(1.0);
  return [s, scale](double r) { return s.value(r / scale); };
}

}  // namespace

GraphFunction radial_bump(const std::shared_ptr<const Discretization>& d, std::size_t e0, double c,
                          const std::function<double(double)>& profile) {
  const auto& g = d->graph();
  const auto dv = vertex_distances_from_point(g, e0, c);
  return sample(d, [&](std::size_t e, double s) { return profile(point_distance(g, dv, e0, c, e, s)); });
}

std::vector<InitialGuess> initial_guesses(const std::shared_ptr<const Discretization>& d,
                                          InitStrategy strat, double p, double mu,
                                          const SolverConfig& cfg, int restart) {
  const auto& g = d->graph();
  std::vector<InitialGuess> out;
  const auto prof = radial_profile(p, mu, 1.0);
  const auto tip_prof = radial_profile(p, 2.0 * mu, 1.0);
  switch (strat) {
    case InitStrategy::VertexBump: {
      std::vector<std::size_t> vs;
      for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (!g.vertex(v).boundary) vs.push_back(v);
      std::stable_sort(vs.begin(), vs.end(), [&](std::size_t a, std::size_t b) {
        const auto da = g.degree(a), db = g.degree(b);
        if ((da == 1) != (db == 1)) return da == 1;
        return da > db;
      });
      const auto cap = static_cast<std::size_t>(std::max(1, cfg.max_vertex_starts));
      const std::size_t offset = vs.empty() ? 0 : (static_cast<std::size_t>(restart) * cap) % vs.size();
      for (std::size_t k = 0; k < std::min(cap, vs.size()); ++k) {
        const auto v = vs[(offset + k) % vs.size()];
        const auto e0 = g.incident(v).front();
        const double c = g.edge(e0).a == v ? 0.0 : g.edge(e0).length;
        // a tip sees half a soliton: start from the half-soliton of mass mu
        const auto& shape = g.degree(v) == 1 ? tip_prof : prof;
        out.push_back({g.vertex(v).id, radial_bump(d, e0, c, shape)});
        if (p >= 6.0 && g.degree(v) == 1)
          out.push_back({g.vertex(v).id + "~narrow",
                         radial_bump(d, e0, c, radial_profile(p, mu, kProbeCells * d->min_spacing()))});
      }
      if (p >= 6.0) {
        // concentrated start inside the longest edge, where collapse needs the least mass
        std::size_t best = 0;
        for (std::size_t e = 1; e < g.num_edges(); ++e) {
          const bool hb = g.edge(best).from_halfline, he = g.edge(e).from_halfline;
          if ((hb && !he) || (hb == he && g.edge(e).length > g.edge(best).length)) best = e;
        }
        const double c = g.edge(best).length / 2.0;
        out.push_back({g.edge(best).id + "~narrow",
                       radial_bump(d, best, c, radial_profile(p, mu, kProbeCells * d->min_spacing()))});
      }
      break;
    }
    case InitStrategy::HalflineSoliton: {
      for (std::size_t e = 0; e < g.num_edges(); ++e) {
        if (!g.edge(e).from_halfline) continue;
        const double frac = 0.6 + 0.05 * static_cast<double>(restart % 4);
        out.push_back({g.edge(e).id, radial_bump(d, e, frac * g.edge(e).length, prof)});
      }
      break;
    }
    case InitStrategy::EdgeUniform: {
      out.push_back({"core", sample(d, [&](std::size_t e, double s) {
                       return g.edge(e).from_halfline ? prof(s) : prof(0.0);
                     })});
      break;
    }
    case InitStrategy::Random: {
      std::mt19937_64 rng(cfg.seed + 7919u * static_cast<std::uint64_t>(restart));
      std::uniform_real_distribution<double> U(0.0, 1.0);
      std::vector<double> weight;
      for (const auto& e : g.edges())
        weight.push_back(e.from_halfline ? std::min(e.length, 8.0) : e.length);
      std::discrete_distribution<std::size_t> pick(weight.begin(), weight.end());
      GraphFunction u(d);
      for (int k = 0; k < 3; ++k) {
        const auto e = pick(rng);
        const double span = g.edge(e).from_halfline ? std::min(g.edge(e).length, 8.0) : g.edge(e).length;
        const double c = U(rng) * span;
        const double scale = 0.5 + 1.5 * U(rng);
        const double amp = 0.5 + U(rng);
        const auto bump = radial_bump(d, e, c, radial_profile(p, mu, scale));
        for (std::size_t j = 0; j < u.values().size(); ++j) u[j] += amp * bump[j];
      }
      out.push_back({"random", std::move(u)});
      break;
    }
  }
  return out;
}

GroundStateResult ground_state(const MetricGraph& g, double p, double mu, const SolverConfig& cfg) {
  cfg.validate();
  if (g.num_halflines() == 0) fail(Errc::CompactGraph, "ground_state needs a noncompact graph");
  auto tg = std::make_shared<const TruncatedGraph>(g, cfg.truncation_length);
  auto d = std::make_shared<const Discretization>(tg, cfg.h_target);

  std::optional<GroundStateResult> best_conv, best_unb, best_any;
  std::vector<RunRecord> trace;
  for (int r = 0; r < cfg.restarts; ++r) {
    for (auto strat : cfg.init_strategies) {
      for (auto& guess : initial_guesses(d, strat, p, mu, cfg, r)) {
        auto res = normalized_gradient_flow(guess.u, p, mu, cfg);
        res.origin = std::string(to_string(strat)) + ":" + guess.anchor;
        trace.push_back({strat, r, guess.anchor, res.energy, res.status, res.iterations});
        auto better = [&](const std::optional<GroundStateResult>& cur) {
          return !cur || res.energy < cur->energy;
        };
        if (res.status == Status::UnboundedSuspected) {
          if (better(best_unb)) best_unb = res;
        } else if (res.status == Status::Converged) {
          if (better(best_conv)) best_conv = res;
        }
        if (better(best_any)) best_any = std::move(res);
      }
    }
  }
  GroundStateResult out;
  if (best_unb)
    out = std::move(*best_unb);
  else if (best_conv)
    out = std::move(*best_conv);
  else if (cfg.accept_unconverged && best_any)
    out = std::move(*best_any);
  else
    fail(Errc::NoConvergedRun, "no flow run converged");
  out.trace = std::move(trace);
  return out;
}

bool level_pinching_check(const GroundStateResult& r, double p, double mu) {
  if (r.status != Status::Converged || !(p > 2.0 && p < 6.0)) return false;
  const double lo = halfsoliton_energy(p, mu);
  const double hi = soliton_energy(p, mu);
  const double tol = 1e-3 * std::abs(lo);
  return r.energy >= lo - tol && r.energy <= hi + tol;
}

std::vector<SweepRow> sweep(const GraphFamily& family, double p, double mu,
                            const std::vector<double>& grid, const SolverConfig& cfg) {
  std::vector<SweepRow> rows;
  for (double x : grid) {
    SweepRow row;
    row.param = x;
    try {
      auto res = ground_state(family(x), p, mu, cfg);
      row.energy = res.energy;
      row.omega = res.omega;
      row.status = std::string(to_string(res.status));
      row.iterations = res.iterations;
    } catch (const Error& e) {
      row.energy = std::numeric_limits<double>::quiet_NaN();
      row.omega = std::numeric_limits<double>::quiet_NaN();
      row.status = "FAILED:" + std::string(code_name(e.code()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PhaseTransition find_phase_transition(const GraphFamily& family, double p, double mu, double lo,
                                      double hi, const SolverConfig& cfg, int grid_points,
                                      double width) {
  if (!(lo > 0.0 && hi > lo)) fail(Errc::InvalidArgument, "bracket must satisfy 0 < lo < hi");
  if (grid_points < 2) fail(Errc::InvalidArgument, "need at least two grid points");
  const double Esol = soliton_energy(p, mu);
  PhaseTransition out;
  std::vector<double> grid;
  for (int k = 0; k < grid_points; ++k)
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (grid_points - 1)));
  out.grid = sweep(family, p, mu, grid, cfg);
  std::vector<int> sign;
  for (const auto& row : out.grid) {
    if (!std::isfinite(row.energy))
      fail(Errc::SolverError, "sweep point " + std::to_string(row.param) + " failed: " + row.status);
    sign.push_back(row.energy - Esol < -kPhaseSignThreshold ? -1 : 1);
  }
  std::size_t first = grid.size();
  for (std::size_t k = 0; k + 1 < sign.size(); ++k)
    if (sign[k] != sign[k + 1]) {
      ++out.sign_changes;
      if (first == grid.size()) first = k;
    }
  if (sign.front() == sign.back() || first == grid.size())
    fail(Errc::NoSignChange, "energy minus soliton level keeps its sign on the bracket");

  double a = grid[first], b = grid[first + 1];
  const int sa = sign[first];
  while (b - a > width) {
    const double m = 0.5 * (a + b);
    const auto res = ground_state(family(m), p, mu, cfg);
    const double f = res.energy - Esol;
    out.bisection.push_back({m, f});
    const int sm = f < -kPhaseSignThreshold ? -1 : 1;
    (sm == sa ? a : b) = m;
  }
  out.lo = a;
  out.hi = b;
  out.ell_star = 0.5 * (a + b);
  return out;
}

}  // namespace nlsg
