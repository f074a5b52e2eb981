#include "nlsg/critical.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nlsg/closed_forms.hpp"
#include "nlsg/error.hpp"
#include "operators.hpp"

namespace nlsg {

std::string_view to_string(PredictedMuG m) noexcept {
  switch (m) {
    case PredictedMuG::HalflineMass: return "MU_HALFLINE";
    case PredictedMuG::LineMass: return "MU_LINE";
    case PredictedMuG::UnknownInBetween: return "UNKNOWN_IN_BETWEEN";
  }
  return "UNKNOWN_IN_BETWEEN";
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Zero: return "ZERO";
    case Regime::NegativeFinite: return "NEGATIVE_FINITE";
    case Regime::Unbounded: return "UNBOUNDED_SUSPECTED";
  }
  return "ZERO";
}

double gn_quotient(const GraphFunction& u) {
  const double m = mass(u);
  const double d = dirichlet_integral(u);
  if (!(m > 0.0) || !(d > 0.0)) fail(Errc::ZeroMass, "quotient needs nonzero mass and slope");
  return lp_integral(u, 6.0) / (m * m * d);
}

namespace {

struct AscentResult {
  GraphFunction u;
  double Q = 0.0;
  int iterations = 0;
};

AscentResult ascend(GraphFunction u, const detail::Operators& op, const SolverConfig& cfg) {
  for (auto& x : u.values()) x = std::max(x, 0.0);
  u = rescale_mass(u, 1.0);
  const auto n = static_cast<Eigen::Index>(op.dofs.size());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  double sigma = -1.0;
  double tau = 1.0;
  double Q = gn_quotient(u);
  int it = 0;
  Eigen::VectorXd grad(n);
  for (; it < cfg.max_iterations; ++it) {
    const double m = mass(u), D = dirichlet_integral(u), I6 = lp_integral(u, 6.0);
    const double shift = std::max(D / m, 1e-8);
    if (sigma < 0.0 || std::abs(shift - sigma) > 0.2 * sigma) {
      sigma = shift;
      solver.compute(op.K + sigma * op.M);
      if (solver.info() != Eigen::Success) fail(Errc::SolverError, "preconditioner factorization failed");
    }
    const auto uf = op.restrict(u.values());
    const Eigen::VectorXd Ku = op.K * uf, Mu = op.M * uf;
    const auto g6 = op.restrict(energy_gradient(u, 6.0));
    // d/du of log I6 - 2 log m - log D, with grad I6 = 6 (K u - grad E_6)
    grad = 6.0 * (Ku - g6) / I6 - 4.0 * Mu / m - 2.0 * Ku / D;
    Eigen::VectorXd step = solver.solve(grad);
    const Eigen::VectorXd b = solver.solve(Mu);
    step -= (Mu.dot(step) / Mu.dot(b)) * b;

    bool accepted = false;
    double Qn = Q;
    GraphFunction v(u.disc_ptr());
    while (tau > 1e-14) {
      v.values() = u.values();
      for (Eigen::Index k = 0; k < n; ++k) {
        auto& x = v[op.dofs[static_cast<std::size_t>(k)]];
        x = std::max(x + tau * step[k], 0.0);
      }
      if (mass(v) > 0.0 && dirichlet_integral(v) > 0.0) {
        v = rescale_mass(v, 1.0);
        Qn = gn_quotient(v);
        if (Qn >= Q) {
          accepted = true;
          break;
        }
      }
      tau *= 0.5;
    }
    if (!accepted) break;
    const double rel = (Qn - Q) / Q;
    u = std::move(v);
    Q = Qn;
    tau = std::min(1.5 * tau, 4.0);
    if (rel < cfg.tol_energy) break;
  }
  return {std::move(u), Q, it};
}

std::string interval(const char* open, double a, double b, const char* close) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s%.6f, %.6f%s", open, a, b, close);
  return buf;
}

}  // namespace

KEstimate estimate_K(const MetricGraph& g, const SolverConfig& cfg) {
  cfg.validate();
  if (g.num_halflines() == 0) fail(Errc::CompactGraph, "estimate_K needs a noncompact graph");
  auto tg = std::make_shared<const TruncatedGraph>(g, cfg.truncation_length);
  auto d = std::make_shared<const Discretization>(tg, cfg.h_target);
  const auto op = detail::assemble(*d);

  std::vector<std::pair<std::string, GraphFunction>> starts;
  std::vector<std::pair<std::string, std::pair<std::size_t, double>>> centres;
  for (std::size_t v = 0; v < tg->num_vertices(); ++v) {
    if (tg->vertex(v).boundary) continue;
    const auto e = tg->incident(v).front();
    centres.push_back({tg->vertex(v).id, {e, tg->edge(e).a == v ? 0.0 : tg->edge(e).length}});
  }
  for (std::size_t e = 0; e < tg->num_edges(); ++e)
    if (tg->edge(e).from_halfline) centres.push_back({tg->edge(e).id, {e, 0.6 * tg->edge(e).length}});
  for (double width : {1.0, cfg.truncation_length / 12.0})
    for (const auto& [name, at] : centres) {
      const auto prof = soliton_p6(1.0 / width);
      starts.emplace_back(name + "@" + std::to_string(width),
                          radial_bump(d, at.first, at.second, [&](double r) { return prof.value(r); }));
    }

  KEstimate best;
  bool any = false;
  for (auto& [name, u0] : starts) {
    if (!(mass(u0) > 0.0)) continue;
    auto r = ascend(u0, op, cfg);
    if (!any || r.Q > best.K) {
      best.K = r.Q;
      best.u = std::move(r.u);
      best.iterations = r.iterations;
      best.origin = name;
      any = true;
    }
  }
  if (!any) fail(Errc::NoConvergedRun, "no admissible start for the quotient ascent");
  return best;
}

CriticalReport predict(const MetricGraph& g) {
  const auto topo = classify_case(g);
  const auto cm = critical_masses();
  CriticalReport r;
  r.case_label = topo.case_label;
  switch (topo.case_label) {
    case CaseLabel::Terminal:
      r.predicted_mu_G = PredictedMuG::HalflineMass;
      r.predicted_minus_infinity_below_line_mass = true;
      r.predicted_existence =
          (g.num_halflines() == 1 && g.num_edges() == 1) ? "{" + std::to_string(cm.mu_halfline) + "}" : "none";
      break;
    case CaseLabel::AssumptionH:
      r.predicted_mu_G = PredictedMuG::LineMass;
      r.predicted_existence =
          (topo.is_line || topo.is_bubble_tower) ? "{" + std::to_string(cm.mu_line) + "}" : "none";
      break;
    case CaseLabel::SingleHalfline:
      r.predicted_mu_G = PredictedMuG::HalflineMass;
      r.predicted_existence = interval("(", cm.mu_halfline, cm.mu_line, "]");
      break;
    case CaseLabel::Other:
      r.predicted_mu_G = PredictedMuG::UnknownInBetween;
      r.predicted_existence = "[mu_G, " + std::to_string(cm.mu_line) + "] provided mu_G < mu_R";
      break;
  }
  return r;
}

CriticalReport critical_report(const MetricGraph& g, const SolverConfig& cfg) {
  auto r = predict(g);
  const auto k = estimate_K(g, cfg);
  r.K_estimate = k.K;
  r.mu_G_estimate = std::sqrt(3.0 / k.K);
  r.truncation_length = cfg.truncation_length;
  r.h = cfg.h_target;
  return r;
}

namespace {

/// Lowest energy over every run: any run bounds the level from above.
RunRecord level_of(const MetricGraph& g, double mu, const SolverConfig& cfg) {
  const auto res = ground_state(g, 6.0, mu, cfg);
  RunRecord best{InitStrategy::VertexBump, 0, res.origin, res.energy, res.status, res.iterations};
  for (const auto& r : res.trace)
    if (r.status == Status::UnboundedSuspected || (best.status != Status::UnboundedSuspected && r.energy < best.energy))
      best = r;
  return best;
}

}  // namespace

std::vector<ProfileRow> energy_profile_p6(const MetricGraph& g, const std::vector<double>& masses,
                                          const SolverConfig& cfg, double zero_tol) {
  const double cap = 1.05 * critical_masses().mu_line * (1.0 + 1e-12);
  for (double m : masses)
    if (!(m > 0.0 && m <= cap)) fail(Errc::InvalidArgument, "masses must lie in (0, 1.05 mu_R]");
  SolverConfig c = cfg;
  c.accept_unconverged = true;
  std::vector<ProfileRow> rows;
  for (double m : masses) {
    ProfileRow row;
    row.mu = m;
    const auto res = level_of(g, m, c);
    row.energy = res.energy;
    row.status = res.status;
    row.iterations = res.iterations;
    if (res.status == Status::UnboundedSuspected) {
      row.regime = Regime::Unbounded;
    } else if (res.energy >= -zero_tol) {
      row.regime = Regime::Zero;
    } else {
      SolverConfig fine = c;
      fine.h_target = c.h_target / 2.0;
      const auto r2 = level_of(g, m, fine);
      row.energy_half_h = r2.energy;
      const bool stable = r2.status != Status::UnboundedSuspected &&
                          std::abs(r2.energy - res.energy) < 0.05 * std::abs(res.energy);
      row.regime = stable ? Regime::NegativeFinite : Regime::Unbounded;
    }
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> modified_gn_theta(const GraphFunction& u, double mu, double C, std::size_t grid) {
  const double muR = critical_masses().mu_line;
  if (mu > muR * (1.0 + 1e-12)) fail(Errc::MassTooLarge, "mass exceeds mu_R");
  if (!(C > 0.0)) fail(Errc::InvalidArgument, "C must be positive");
  if (!(mu > 0.0) || grid == 0) fail(Errc::InvalidArgument, "mass and grid must be positive");
  const double I6 = lp_integral(u, 6.0);
  const double D = dirichlet_integral(u);
  const double K = gn_constant_line();
  for (std::size_t k = 0; k <= grid; ++k) {
    const double theta = mu * static_cast<double>(k) / static_cast<double>(grid);
    if (I6 <= K * (mu - theta) * (mu - theta) * D + C * std::sqrt(theta)) return theta;
  }
  return std::nullopt;
}

}  // namespace nlsg
