#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nlsg/closed_forms.hpp"
#include "nlsg/corpus.hpp"
#include "nlsg/function_space.hpp"
#include "support.hpp"

using namespace nlsg;
using nlsg::test::discretize;
using nlsg::test::error_of;
using nlsg::test::rel_gradient_error;
using nlsg::test::shrunk;

namespace {

GraphFunction line_soliton(double p, double mu, double L, double h) {
  const auto s = soliton(p, mu);
  auto tg = std::make_shared<const TruncatedGraph>(corpus::line(), L);
  return sample(tg, [&](std::size_t, double x) { return x >= L ? 0.0 : s.value(x); }, h);
}

}  // namespace

TEST_CASE("sample") {
  const auto edge = GraphBuilder().edge("e", "a", "b", 2.0).build();
  auto tg = std::make_shared<const TruncatedGraph>(edge, 1.0);
  const auto u = sample(tg, [](std::size_t, double) { return 1.0; }, 0.5);
  const auto xs = u.edge_samples(0);
  CHECK(xs.size() == 5);
  for (double x : xs) CHECK(x == 1.0);

  const auto s = soliton(4.0, 1.0);
  const auto v = line_soliton(4.0, 1.0, 40.0, 0.01);
  for (std::size_t e = 0; e < 2; ++e)
    for (std::size_t i = 0; i < 4000; i += 37) CHECK(v.at(e, i) == s.value(i * v.disc().spacing(e)));

  // h_e = length / ceil(length / h_target)
  auto t2 = std::make_shared<const TruncatedGraph>(corpus::tadpole(1.0), 2.5);
  const auto w = sample(t2, [](std::size_t, double) { return 0.0; }, 0.3);
  CHECK(w.disc().segments(t2->base().edge_index("loop")) == 4);
  CHECK(w.disc().segments(t2->base().edge_index("h1")) == 9);

  auto t3 = std::make_shared<const TruncatedGraph>(corpus::bridge({1.0, 2.0}), 3.0);
  CHECK(error_of([&] {
          sample(t3, [&](std::size_t e, double x) { return t3->edge(e).from_halfline ? 0.0 : x; }, 0.1);
        }) == Errc::DiscontinuousRule);
}

TEST_CASE("vertex continuity is shared storage") {
  const auto d = discretize(corpus::signpost(2.0, 1.0), 5.0, 0.1);
  GraphFunction u(d);
  const auto& g = d->graph();
  const auto top = g.base().vertex_index("top");
  u[top] = 3.5;
  for (auto e : g.incident(top)) {
    const auto& ed = g.edge(e);
    if (ed.a == top) CHECK(u.at(e, 0) == 3.5);
    if (ed.b == top) CHECK(u.at(e, d->segments(e)) == 3.5);
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.vertex(v).boundary) CHECK(d->is_dirichlet(v));
}

TEST_CASE("energy examples") {
  const auto edge = GraphBuilder().edge("e", "a", "b", 3.0).build();
  auto tg = std::make_shared<const TruncatedGraph>(edge, 1.0);
  const double c = 0.7;
  const auto u = sample(tg, [&](std::size_t, double) { return c; }, 0.1);
  const auto E = energy(u, 4.0);
  CHECK(E.kinetic == 0.0);
  CHECK(E.potential == doctest::Approx(std::pow(c, 4) * 3.0 / 4.0).epsilon(1e-13));
  CHECK(E.mass == doctest::Approx(c * c * 3.0).epsilon(1e-13));
  CHECK(E.total == E.kinetic - E.potential);

  const auto sol = line_soliton(4.0, 1.0, 40.0, 0.01);
  CHECK(std::abs(energy(sol, 4.0).total + 1.0 / 96.0) < 5e-5);

  const GraphFunction zero(sol.disc_ptr());
  const auto Z = energy(zero, 4.0);
  CHECK(Z.kinetic == 0.0);
  CHECK(Z.potential == 0.0);
  CHECK(Z.mass == 0.0);
  for (double g : energy_gradient(zero, 4.0)) CHECK(g == 0.0);
}

TEST_CASE("stationarity of the sampled soliton") {
  // long enough that the cut-off tail does not dominate the residual
  const auto u = line_soliton(4.0, 1.0, 120.0, 0.01);
  CHECK(stationarity_residual(u, 4.0, 1.0 / 16.0) <= 1e-3);
  CHECK(max_kirchhoff_residual(u) <= 1e-3);
  CHECK(lagrange_multiplier(u, 4.0) == doctest::Approx(1.0 / 16.0).epsilon(1e-3));
  CHECK(lagrange_multiplier(line_soliton(4.0, 2.0, 40.0, 0.01), 4.0) == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("lagrange multiplier of a constant on a loop") {
  const auto loop = GraphBuilder().edge("e", "v", "v", 4.0).build();
  auto tg = std::make_shared<const TruncatedGraph>(loop, 1.0);
  for (double p : {3.0, 4.0, 6.0}) {
    const double c = 1.3;
    const auto u = sample(tg, [&](std::size_t, double) { return c; }, 0.05);
    CHECK(lagrange_multiplier(u, p) == doctest::Approx(std::pow(c, p - 2.0)).epsilon(1e-12));
    for (const auto& [v, r] : kirchhoff_residual(u)) CHECK(r == 0.0);
  }
  CHECK(error_of([&] { lagrange_multiplier(GraphFunction(std::make_shared<const Discretization>(tg, 0.1)), 4.0); }) ==
        Errc::ZeroMass);
}

TEST_CASE("rescale_mass") {
  const auto d = discretize(corpus::tadpole(2.0), 6.0, 0.1);
  std::mt19937_64 rng(11);
  auto u = test::random_function(d, rng);
  u = rescale_mass(u, 4.0);
  const auto v = rescale_mass(u, 1.0);
  for (std::size_t k = 0; k < u.values().size(); ++k) CHECK(v[k] == doctest::Approx(u[k] / 2.0).epsilon(1e-14));
  CHECK(std::abs(mass(v) - 1.0) < 1e-14);
  const auto w = rescale_mass(v, 1.0);
  for (std::size_t k = 0; k < v.values().size(); ++k) CHECK(w[k] == doctest::Approx(v[k]).epsilon(1e-14));
  const auto arg = std::max_element(u.values().begin(), u.values().end()) - u.values().begin();
  CHECK(std::max_element(v.values().begin(), v.values().end()) - v.values().begin() == arg);
  CHECK(error_of([&] { rescale_mass(GraphFunction(d), 1.0); }) == Errc::ZeroMass);
}

TEST_CASE("property: gradient matches central differences") {
  std::mt19937_64 rng(2024);
  const std::vector<MetricGraph> graphs{corpus::line(), corpus::tadpole(2.0), corpus::signpost(1.5, 0.7),
                                        corpus::bridge({1.0, 2.0, 0.5}), corpus::fork({0.5, 1.0, 1.5})};
  std::uniform_real_distribution<double> P(2.5, 6.0);
  int cases = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& g = graphs[static_cast<std::size_t>(i) % graphs.size()];
    const auto d = discretize(g, 2.0, 0.2);
    const auto u = test::random_function(d, rng);
    const double p = P(rng);
    CAPTURE(i);
    CHECK(rel_gradient_error(u, p) <= 1e-6);
    ++cases;
  }
  CHECK(cases == 50);
}

TEST_CASE("property: scaling homogeneity at p = 6") {
  std::mt19937_64 rng(5);
  for (double lambda : {1.5, 2.0, 4.0}) {
    const auto d = discretize(corpus::tadpole(3.0), 4.0, 0.1);
    const auto u = test::random_function(d, rng);
    const auto ds = shrunk(*d, corpus::tadpole(3.0 / lambda), lambda);
    GraphFunction ul(ds);
    for (std::size_t k = 0; k < u.values().size(); ++k) ul[k] = std::sqrt(lambda) * u[k];
    const double E = energy(u, 6.0).total, El = energy(ul, 6.0).total;
    CAPTURE(lambda);
    CHECK(std::abs(El - lambda * lambda * E) <= 1e-12 * lambda * lambda * (std::abs(E) + 1.0));
    CHECK(mass(ul) == doctest::Approx(mass(u)).epsilon(1e-13));
  }
}

TEST_CASE("property: mass-preserving scaling on stars") {
  std::mt19937_64 rng(9);
  for (int n : {2, 3, 5})
    for (double p : {3.0, 4.0, 5.0})
      for (double lambda : {0.5, 3.0}) {
        const auto d = discretize(corpus::star(n), 5.0, 0.1);
        const auto u = test::random_function(d, rng);
        const auto ds = shrunk(*d, corpus::star(n), lambda);
        GraphFunction ul(ds);
        for (std::size_t k = 0; k < u.values().size(); ++k) ul[k] = std::sqrt(lambda) * u[k];
        const auto E = energy(u, p);
        const double expect = lambda * lambda * E.kinetic - std::pow(lambda, p / 2.0 - 1.0) * E.potential;
        CHECK(energy(ul, p).total == doctest::Approx(expect).epsilon(1e-12));
        CHECK(mass(ul) == doctest::Approx(mass(u)).epsilon(1e-13));
      }
}

TEST_CASE("property: relabeling and flipping edges leave the energy unchanged") {
  const auto g1 = GraphBuilder()
                      .halfline("h1", "a")
                      .edge("e1", "a", "b", 1.0)
                      .edge("e2", "a", "b", 2.0)
                      .edge("e3", "b", "b", 1.5)
                      .halfline("h2", "b")
                      .build();
  const auto g2 = GraphBuilder()
                      .edge("e3", "b", "b", 1.5)
                      .halfline("h2", "b")
                      .edge("e2", "b", "a", 2.0)
                      .halfline("h1", "a")
                      .edge("e1", "b", "a", 1.0)
                      .build();
  auto t1 = std::make_shared<const TruncatedGraph>(g1, 4.0);
  auto t2 = std::make_shared<const TruncatedGraph>(g2, 4.0);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = test::random_function(std::make_shared<const Discretization>(t1, 0.1), rng);
    std::ostringstream out;
    write_csv(u, out);
    // flip arc coordinates of e1 and e2 and reverse the row order
    std::istringstream in(out.str());
    std::string line, rows = "edge_id,arc_coordinate,value\n";
    std::getline(in, line);
    std::vector<std::string> body;
    while (std::getline(in, line)) {
      const auto c1 = line.find(','), c2 = line.rfind(',');
      const auto id = line.substr(0, c1);
      double s = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      if (id == "e1") s = 1.0 - s;
      if (id == "e2") s = 2.0 - s;
      std::ostringstream r;
      r.precision(17);
      r << id << ',' << s << ',' << line.substr(c2 + 1);
      body.push_back(r.str());
    }
    for (auto it = body.rbegin(); it != body.rend(); ++it) rows += *it + "\n";
    std::istringstream back(rows);
    const auto v = read_csv(t2, back);
    for (double p : {4.0, 6.0}) {
      CHECK(energy(v, p).total == doctest::Approx(energy(u, p).total).epsilon(1e-12));
      CHECK(lp_integral(v, p) == doctest::Approx(lp_integral(u, p)).epsilon(1e-12));
    }
    CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-12));
  }
}

TEST_CASE("CSV round trip and continuity check") {
  const auto d = discretize(corpus::tadpole(2.0), 3.0, 0.25);
  std::mt19937_64 rng(1);
  const auto u = test::random_function(d, rng);
  std::ostringstream out;
  write_csv(u, out);
  std::istringstream in(out.str());
  const auto v = read_csv(d->graph_ptr(), in);
  REQUIRE(v.values().size() == u.values().size());
  for (std::size_t k = 0; k < u.values().size(); ++k) CHECK(v[k] == u[k]);

  // break continuity at v beyond 1e-9
  auto text = out.str();
  const auto pos = text.find("\nloop,0,");
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos + 1);
  text.replace(pos + 1, end - pos - 1, "loop,0,123.0");
  std::istringstream bad(text);
  CHECK(error_of([&] { read_csv(d->graph_ptr(), bad); }) == Errc::DiscontinuousRule);
  std::istringstream header("a,b,c\n");
  CHECK(error_of([&] { read_csv(d->graph_ptr(), header); }) == Errc::ParseError);
}
