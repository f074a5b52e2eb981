#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "nlsg/closed_forms.hpp"
#include "nlsg/corpus.hpp"
#include "nlsg/minimize.hpp"
#include "support.hpp"

using namespace nlsg;
using nlsg::test::error_of;

namespace {

constexpr double kSol = -1.0 / 96.0;
constexpr double kHalf = -1.0 / 24.0;

SolverConfig config(double L, double h) {
  SolverConfig c;
  c.truncation_length = L;
  c.h_target = h;
  return c;
}

double edge_mass(const GraphFunction& u, std::size_t e) {
  const auto& d = u.disc();
  double m = 0.0;
  for (std::size_t i = 0; i < d.segments(e); ++i) {
    const double a = u.at(e, i), b = u.at(e, i + 1);
    m += d.spacing(e) * (a * a + a * b + b * b) / 3.0;
  }
  return m;
}

}  // namespace

TEST_CASE("line: soliton energy and frequency") {
  const auto r = ground_state(corpus::line(), 4.0, 1.0, config(40.0, 0.02));
  CHECK(r.status == Status::Converged);
  CHECK(std::abs(r.energy - kSol) <= 5e-5);
  CHECK(std::abs(r.omega - 1.0 / 16.0) <= 1e-3);
  CHECK(std::abs(r.mass - 1.0) <= 1e-10);
  CHECK(level_pinching_check(r, 4.0, 1.0));
}

TEST_CASE("halfline: half-soliton energy") {
  const auto r = ground_state(corpus::halfline(), 4.0, 1.0, config(40.0, 0.02));
  CHECK(r.status == Status::Converged);
  CHECK(std::abs(r.energy - kHalf) <= 1e-4);
  CHECK(std::abs(r.omega - 0.25) <= 1e-3);
  CHECK(level_pinching_check(r, 4.0, 1.0));
}

TEST_CASE("p = 6 above the line critical mass is unbounded") {
  auto cfg = config(20.0, 0.05);
  cfg.init_strategies = {InitStrategy::VertexBump};
  const double mu = 1.1 * critical_masses().mu_line;
  auto tg = std::make_shared<const TruncatedGraph>(corpus::line(), cfg.truncation_length);
  auto d = std::make_shared<const Discretization>(tg, cfg.h_target);
  const auto f = soliton_p6(4.0);
  const auto u0 = sample(d, [&](std::size_t, double s) { return f.value(s); });
  const auto r = normalized_gradient_flow(u0, 6.0, mu, cfg);
  CHECK(r.status == Status::UnboundedSuspected);
  CHECK(r.energy < 0.0);
}

TEST_CASE("star of three halflines: mass runs off along one halfline") {
  const auto r = ground_state(corpus::star(3), 4.0, 1.0, config(80.0, 0.05));
  CHECK(r.status == Status::Converged);
  CHECK(std::abs(r.energy - kSol) <= 2e-3 / 96.0);
  CHECK(r.energy >= kSol - 1e-6);
  CHECK(r.mass_escaped);
  std::vector<double> m;
  for (std::size_t e = 0; e < r.u.disc().graph().num_edges(); ++e) m.push_back(edge_mass(r.u, e));
  std::sort(m.rbegin(), m.rend());
  CHECK(m[0] + m[1] >= 0.99 * r.mass);
}

TEST_CASE("nonexistence signature on bridges") {
  for (const auto& g : {corpus::bridge({1.0, 2.0}), corpus::bridge({1.0, 1.5, 2.0})}) {
    const auto r = ground_state(g, 4.0, 1.0, config(80.0, 0.05));
    CHECK(r.energy >= kSol - 1e-6);
    CHECK(r.energy <= kSol + 2e-3 / 96.0);
    CHECK(r.mass_escaped);
  }
}

TEST_CASE("pendant and tadpole beat the soliton") {
  const auto pl = ground_state(corpus::pendant_line(1.0), 4.0, 1.0, config(80.0, 0.02));
  CHECK(pl.status == Status::Converged);
  CHECK(pl.energy < kSol - 1e-5);
  CHECK_FALSE(pl.mass_escaped);
  const auto tp = ground_state(corpus::tadpole(2.0 * M_PI), 4.0, 1.0, config(80.0, 0.05));
  CHECK(tp.energy < kSol - 1e-5);
  CHECK(level_pinching_check(pl, 4.0, 1.0));
  CHECK(level_pinching_check(tp, 4.0, 1.0));
}

TEST_CASE("level pinching check") {
  GroundStateResult r;
  r.status = Status::Converged;
  r.energy = kSol;
  CHECK(level_pinching_check(r, 4.0, 1.0));
  r.energy = kHalf;
  CHECK(level_pinching_check(r, 4.0, 1.0));
  r.energy = kSol + 1e-3;
  CHECK_FALSE(level_pinching_check(r, 4.0, 1.0));
  r.energy = kHalf - 1e-3;
  CHECK_FALSE(level_pinching_check(r, 4.0, 1.0));
  r.energy = kSol;
  r.status = Status::MaxIter;
  CHECK_FALSE(level_pinching_check(r, 4.0, 1.0));
}

TEST_CASE("sweeps") {
  const auto cfg = config(80.0, 0.05);
  const auto rows = sweep([](double l) { return corpus::g_ell(l); }, 4.0, 1.0, {0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0}, cfg);
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CAPTURE(rows[i].param);
    CHECK(rows[i + 1].energy <= rows[i].energy + 1e-8);
  }
  CHECK(rows.front().energy - kSol > -1e-9);
  CHECK(rows.back().energy - kSol < -1e-4);

  const auto one = sweep([](double l) { return corpus::g_ell(l); }, 4.0, 1.0, {1.0}, cfg);
  CHECK(one.size() == 1);

  // compact graph: recorded, not thrown
  const auto bad = sweep([](double) { return GraphBuilder().edge("e", "a", "b", 1.0).build(); }, 4.0, 1.0, {1.0}, cfg);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].status.rfind("FAILED", 0) == 0);
}

TEST_CASE("n-fork: energy minus soliton level changes sign with n") {
  std::vector<double> ns{3, 4, 5, 6, 7, 8, 9};
  const auto rows = sweep([](double n) { return corpus::n_fork(static_cast<int>(n), 2.0); }, 4.0, 1.0, ns, config(80.0, 0.05));
  CHECK(rows.front().energy < kSol - 1e-6);
  CHECK(rows.back().energy > kSol - 1e-9);
  int changes = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    changes += (rows[i].energy - kSol < -1e-9) != (rows[i + 1].energy - kSol < -1e-9);
  CHECK(changes == 1);
}

TEST_CASE("phase transition: bracket without a sign change") {
  const auto fam = [](double l) { return corpus::g_ell(l); };
  CHECK(error_of([&] { find_phase_transition(fam, 4.0, 1.0, 4.0, 10.0, config(80.0, 0.05), 3); }) ==
        Errc::NoSignChange);
  CHECK(error_of([&] { find_phase_transition(fam, 4.0, 1.0, 2.0, 1.0, config(80.0, 0.05)); }) ==
        Errc::InvalidArgument);
}

TEST_CASE("flow invariants: mass per step and monotone energy") {
  const std::vector<MetricGraph> gs{corpus::tadpole(3.0), corpus::signpost(2.0, 1.0), corpus::fork({0.5, 1.0, 2.0})};
  for (const auto& g : gs) {
    const auto cfg = config(30.0, 0.05);
    auto tg = std::make_shared<const TruncatedGraph>(g, cfg.truncation_length);
    auto d = std::make_shared<const Discretization>(tg, cfg.h_target);
    for (auto strat : {InitStrategy::VertexBump, InitStrategy::Random}) {
      for (const auto& guess : initial_guesses(d, strat, 4.0, 1.0, cfg, 0)) {
        double prev = energy(rescale_mass(guess.u, 1.0), 4.0).total;
        double worst_mass = 0.0, worst_rise = -1.0;
        int steps = 0;
        const auto r = normalized_gradient_flow(guess.u, 4.0, 1.0, cfg, [&](int, double E, double m) {
          worst_mass = std::max(worst_mass, std::abs(m - 1.0));
          worst_rise = std::max(worst_rise, E - prev);
          prev = E;
          ++steps;
        });
        CHECK(steps > 0);
        CHECK(worst_mass <= 1e-10);
        CHECK(worst_rise <= 1e-12);
        if (r.status == Status::Converged) {
          CHECK(r.grad_residual <= cfg.tol_residual);
          CHECK(r.kirchhoff_max_residual <= 10.0 * cfg.h_target);
          CHECK(std::abs(r.mass - 1.0) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("truncation stability") {
  const std::vector<MetricGraph> gs{corpus::line(), corpus::halfline(), corpus::tadpole(2.0 * M_PI)};
  for (const auto& g : gs) {
    const double a = ground_state(g, 4.0, 1.0, config(40.0, 0.05)).energy;
    const double b = ground_state(g, 4.0, 1.0, config(80.0, 0.05)).energy;
    CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
  }
}

TEST_CASE("errors") {
  auto tg = std::make_shared<const TruncatedGraph>(corpus::line(), 10.0);
  auto d = std::make_shared<const Discretization>(tg, 0.1);
  const GraphFunction zero(d);
  CHECK(error_of([&] { normalized_gradient_flow(zero, 4.0, 1.0, config(10.0, 0.1)); }) == Errc::ZeroInitialMass);
  const auto compact = GraphBuilder().edge("e", "a", "b", 1.0).build();
  CHECK(error_of([&] { ground_state(compact, 4.0, 1.0, config(10.0, 0.1)); }) == Errc::CompactGraph);
  auto bad = config(10.0, 0.1);
  bad.tol_energy = 0.0;
  CHECK(error_of([&] { bad.validate(); }) == Errc::InvalidArgument);
  bad = config(-1.0, 0.1);
  CHECK(error_of([&] { bad.validate(); }) == Errc::NonpositiveTruncation);
  CHECK(error_of([] { init_strategy_from_string("NOPE"); }) == Errc::InvalidArgument);
  CHECK(init_strategy_from_string("HALFLINE_SOLITON") == InitStrategy::HalflineSoliton);
}
