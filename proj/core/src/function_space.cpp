#include "nlsg/function_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "nlsg/error.hpp"

namespace nlsg {

namespace {

constexpr std::array<double, 4> kGaussT = {
    0.5 - 0.5 * 0.8611363115940526, 0.5 - 0.5 * 0.3399810435848563,
    0.5 + 0.5 * 0.3399810435848563, 0.5 + 0.5 * 0.8611363115940526};
constexpr std::array<double, 4> kGaussW = {0.5 * 0.3478548451374538, 0.5 * 0.6521451548625461,
                                           0.5 * 0.6521451548625461, 0.5 * 0.3478548451374538};

inline double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (p == 2.0) return a * a;
  if (p == 4.0) {
    const double s = a * a;
    return s * s;
  }
  if (p == 6.0) {
    const double s = a * a;
    return s * s * s;
  }
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

// |x|^(p-2) x
inline double signed_pow(double x, double p) {
  if (p == 4.0) return x * x * x;
  if (p == 6.0) {
    const double s = x * x;
    return s * s * x;
  }
  if (p == 2.0) return x;
  if (p == 3.0) return std::abs(x) * x;
  return std::pow(std::abs(x), p - 2.0) * x;
}

template <class F>
void for_each_cell(const GraphFunction& u, F&& f) {
  const auto& d = u.disc();
  const auto& vals = u.values();
  for (std::size_t e = 0; e < d.graph().num_edges(); ++e) {
    const auto n = d.segments(e);
    const double h = d.spacing(e);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ja = d.node(e, i), jb = d.node(e, i + 1);
      f(ja, jb, vals[ja], vals[jb], h);
    }
  }
}

}  // namespace

Discretization::Discretization(std::shared_ptr<const TruncatedGraph> g, double h_target)
    : graph_(std::move(g)) {
  if (!(h_target > 0.0)) fail(Errc::InvalidArgument, "grid spacing must be positive");
  for (const auto& e : graph_->edges()) {
    auto n = static_cast<std::size_t>(std::ceil(e.length / h_target - 1e-12));
    n = std::max<std::size_t>(n, e.is_loop() ? 3 : 1);
    segs_.push_back(n);
  }
  build();
}

Discretization::Discretization(std::shared_ptr<const TruncatedGraph> g,
                               std::vector<std::size_t> segments)
    : graph_(std::move(g)), segs_(std::move(segments)) {
  if (segs_.size() != graph_->num_edges())
    fail(Errc::InvalidArgument, "segment count per edge required");
  for (std::size_t e = 0; e < segs_.size(); ++e)
    if (segs_[e] == 0) fail(Errc::InvalidArgument, "edge needs at least one segment");
  build();
}

void Discretization::build() {
  const auto& g = *graph_;
  n_dofs_ = g.num_vertices();
  h_.clear();
  first_.clear();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    h_.push_back(g.edge(e).length / static_cast<double>(segs_[e]));
    first_.push_back(n_dofs_);
    n_dofs_ += segs_[e] - 1;
  }
  dirichlet_.assign(n_dofs_, 0);
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.vertex(v).boundary) dirichlet_[v] = 1;
  lumped_.assign(n_dofs_, 0.0);
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    for (std::size_t i = 0; i < segs_[e]; ++i) {
      lumped_[node(e, i)] += 0.5 * h_[e];
      lumped_[node(e, i + 1)] += 0.5 * h_[e];
    }
}

std::size_t Discretization::node(std::size_t e, std::size_t i) const {
  const auto& ed = graph_->edge(e);
  if (i == 0) return ed.a;
  if (i == segs_[e]) return ed.b;
  return first_[e] + i - 1;
}

std::pair<std::size_t, std::size_t> Discretization::locate(std::size_t dof) const {
  const auto& g = *graph_;
  if (dof < g.num_vertices()) {
    const auto& inc = g.incident(dof);
    if (inc.empty()) fail(Errc::InvalidArgument, "isolated vertex");
    const auto e = inc.front();
    return {e, g.edge(e).a == dof ? 0 : segs_[e]};
  }
  auto it = std::upper_bound(first_.begin(), first_.end(), dof);
  const auto e = static_cast<std::size_t>(std::distance(first_.begin(), it)) - 1;
  return {e, dof - first_[e] + 1};
}

double Discretization::max_spacing() const noexcept {
  return h_.empty() ? 0.0 : *std::max_element(h_.begin(), h_.end());
}

double Discretization::min_spacing() const noexcept {
  return h_.empty() ? 0.0 : *std::min_element(h_.begin(), h_.end());
}

GraphFunction::GraphFunction(std::shared_ptr<const Discretization> d)
    : disc_(std::move(d)), values_(disc_->num_dofs(), 0.0) {}

GraphFunction::GraphFunction(std::shared_ptr<const Discretization> d, std::vector<double> values)
    : disc_(std::move(d)), values_(std::move(values)) {
  if (values_.size() != disc_->num_dofs())
    fail(Errc::InvalidArgument, "value vector does not match the grid");
}

std::vector<double> GraphFunction::edge_samples(std::size_t e) const {
  std::vector<double> out(disc_->segments(e) + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(e, i);
  return out;
}

double GraphFunction::eval(std::size_t e, double s) const {
  const auto n = disc_->segments(e);
  const double h = disc_->spacing(e);
  const double len = graph().edge(e).length;
  s = std::clamp(s, 0.0, len);
  auto i = static_cast<std::size_t>(std::floor(s / h));
  if (i >= n) i = n - 1;
  const double t = std::clamp(s / h - static_cast<double>(i), 0.0, 1.0);
  return (1.0 - t) * at(e, i) + t * at(e, i + 1);
}

GraphFunction sample(std::shared_ptr<const Discretization> d, const EdgeRule& f) {
  GraphFunction u(d);
  const auto& g = d->graph();
  auto& vals = u.values();
  std::vector<char> set(g.num_vertices(), 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto n = d->segments(e);
    const double h = d->spacing(e);
    for (std::size_t i = 1; i < n; ++i) vals[d->node(e, i)] = f(e, h * static_cast<double>(i));
    const double ends[2] = {f(e, 0.0), f(e, g.edge(e).length)};
    const std::size_t vs[2] = {g.edge(e).a, g.edge(e).b};
    for (int k = 0; k < 2; ++k) {
      const auto v = vs[k];
      if (g.vertex(v).boundary) continue;
      if (!set[v]) {
        vals[v] = ends[k];
        set[v] = 1;
      } else if (std::abs(vals[v] - ends[k]) > 1e-12 * std::max(1.0, std::abs(vals[v]))) {
        fail(Errc::DiscontinuousRule, "rule is discontinuous at vertex '" + g.vertex(v).id + "'");
      }
    }
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.vertex(v).boundary) vals[v] = 0.0;
  return u;
}

GraphFunction sample(std::shared_ptr<const TruncatedGraph> g, const EdgeRule& f, double h_target) {
  return sample(std::make_shared<const Discretization>(std::move(g), h_target), f);
}

double dirichlet_integral(const GraphFunction& u) {
  double s = 0.0;
  for_each_cell(u, [&](std::size_t, std::size_t, double a, double b, double h) {
    s += (b - a) * (b - a) / h;
  });
  return s;
}

double mass(const GraphFunction& u) {
  double s = 0.0;
  for_each_cell(u, [&](std::size_t, std::size_t, double a, double b, double h) {
    s += h * (a * a + a * b + b * b) / 3.0;
  });
  return s;
}

double lp_integral(const GraphFunction& u, double p) {
  double s = 0.0;
  for_each_cell(u, [&](std::size_t, std::size_t, double a, double b, double h) {
    double c = 0.0;
    for (int q = 0; q < 4; ++q) c += kGaussW[q] * abs_pow(a + (b - a) * kGaussT[q], p);
    s += h * c;
  });
  return s;
}

EnergyBreakdown energy(const GraphFunction& u, double p) {
  EnergyBreakdown out;
  double kin = 0.0, pot = 0.0, m = 0.0;
  for_each_cell(u, [&](std::size_t, std::size_t, double a, double b, double h) {
    kin += (b - a) * (b - a) / h;
    m += h * (a * a + a * b + b * b) / 3.0;
    if (a == 0.0 && b == 0.0) return;
    double c = 0.0;
    for (int q = 0; q < 4; ++q) c += kGaussW[q] * abs_pow(a + (b - a) * kGaussT[q], p);
    pot += h * c;
  });
  out.kinetic = 0.5 * kin;
  out.potential = pot / p;
  out.total = out.kinetic - out.potential;
  out.mass = m;
  return out;
}

std::vector<double> energy_gradient(const GraphFunction& u, double p) {
  std::vector<double> g(u.values().size(), 0.0);
  for_each_cell(u, [&](std::size_t ja, std::size_t jb, double a, double b, double h) {
    const double k = (b - a) / h;
    double fa = 0.0, fb = 0.0;
    if (a != 0.0 || b != 0.0) {
      for (int q = 0; q < 4; ++q) {
        const double t = kGaussT[q];
        const double w = kGaussW[q] * signed_pow(a + (b - a) * t, p);
        fa += w * (1.0 - t);
        fb += w * t;
      }
    }
    g[ja] += -k - h * fa;
    g[jb] += k - h * fb;
  });
  const auto& d = u.disc();
  for (std::size_t j = 0; j < g.size(); ++j)
    if (d.is_dirichlet(j)) g[j] = 0.0;
  return g;
}

std::vector<double> mass_gradient(const GraphFunction& u) {
  std::vector<double> g(u.values().size(), 0.0);
  for_each_cell(u, [&](std::size_t ja, std::size_t jb, double a, double b, double h) {
    g[ja] += h * (2.0 * a + b) / 3.0;
    g[jb] += h * (a + 2.0 * b) / 3.0;
  });
  const auto& d = u.disc();
  for (std::size_t j = 0; j < g.size(); ++j)
    if (d.is_dirichlet(j)) g[j] = 0.0;
  return g;
}

double lagrange_multiplier(const GraphFunction& u, double p) {
  const double m = mass(u);
  if (!(m > 0.0)) fail(Errc::ZeroMass, "function has zero mass");
  return (lp_integral(u, p) - dirichlet_integral(u)) / m;
}

double stationarity_residual(const GraphFunction& u, double p, double omega) {
  const auto ge = energy_gradient(u, p);
  const auto gm = mass_gradient(u);
  const auto& d = u.disc();
  double s = 0.0;
  for (std::size_t j = 0; j < ge.size(); ++j) {
    if (d.is_dirichlet(j)) continue;
    const double r = ge[j] + 0.5 * omega * gm[j];
    s += r * r / d.lumped_weight(j);
  }
  return std::sqrt(s);
}

std::map<std::string, double> kirchhoff_residual(const GraphFunction& u) {
  const auto& d = u.disc();
  const auto& g = d.graph();
  std::vector<double> acc(g.num_vertices(), 0.0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto n = d.segments(e);
    const double h = d.spacing(e);
    const auto& ed = g.edge(e);
    acc[ed.a] += (u.at(e, 1) - u.at(e, 0)) / h;
    acc[ed.b] += (u.at(e, n - 1) - u.at(e, n)) / h;
  }
  std::map<std::string, double> out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!g.vertex(v).boundary) out[g.vertex(v).id] = std::abs(acc[v]);
  return out;
}

double max_kirchhoff_residual(const GraphFunction& u) {
  double m = 0.0;
  for (const auto& [_, r] : kirchhoff_residual(u)) m = std::max(m, r);
  return m;
}

GraphFunction rescale_mass(const GraphFunction& u, double mu) {
  const double m = mass(u);
  if (!(m > 0.0)) fail(Errc::ZeroMass, "cannot rescale a function with zero mass");
  if (!(mu > 0.0)) fail(Errc::InvalidArgument, "target mass must be positive");
  GraphFunction out = u;
  const double c = std::sqrt(mu / m);
  for (auto& x : out.values()) x *= c;
  return out;
}

GraphFunction transfer(const GraphFunction& u, std::shared_ptr<const Discretization> target) {
  GraphFunction out(target);
  const auto& g = target->graph();
  auto& vals = out.values();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) vals[v] = u[v];
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto n = target->segments(e);
    const double h = target->spacing(e);
    for (std::size_t i = 1; i < n; ++i)
      vals[target->node(e, i)] = u.eval(e, h * static_cast<double>(i));
  }
  return out;
}

void write_csv(const GraphFunction& u, std::ostream& out) {
  const auto& d = u.disc();
  const auto& g = d.graph();
  out << "edge_id,arc_coordinate,value\n";
  char buf[96];
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto n = d.segments(e);
    const double h = d.spacing(e);
    for (std::size_t i = 0; i <= n; ++i) {
      const double s = i == n ? g.edge(e).length : h * static_cast<double>(i);
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", s, u.at(e, i));
      out << g.edge(e).id << buf;
    }
  }
}

GraphFunction read_csv(std::shared_ptr<const TruncatedGraph> g, std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(Errc::ParseError, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "edge_id,arc_coordinate,value")
    fail(Errc::ParseError, "CSV header must be edge_id,arc_coordinate,value");

  std::unordered_map<std::string, std::size_t> eidx;
  for (std::size_t e = 0; e < g->num_edges(); ++e) eidx[g->edge(e).id] = e;
  std::vector<std::vector<std::pair<double, double>>> rows(g->num_edges());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string id, s, v;
    if (!std::getline(ss, id, ',') || !std::getline(ss, s, ',') || !std::getline(ss, v))
      fail(Errc::ParseError, "malformed CSV row " + std::to_string(lineno));
    auto it = eidx.find(id);
    if (it == eidx.end()) fail(Errc::UnknownEdge, "CSV references unknown edge '" + id + "'");
    try {
      rows[it->second].push_back({std::stod(s), std::stod(v)});
    } catch (const std::exception&) {
      fail(Errc::ParseError, "bad number on CSV row " + std::to_string(lineno));
    }
  }

  std::vector<std::size_t> segs;
  for (std::size_t e = 0; e < rows.size(); ++e) {
    auto& r = rows[e];
    if (r.size() < 2) fail(Errc::ParseError, "edge '" + g->edge(e).id + "' needs two samples");
    std::sort(r.begin(), r.end());
    const double len = g->edge(e).length;
    const auto n = r.size() - 1;
    for (std::size_t i = 0; i <= n; ++i)
      if (std::abs(r[i].first - len * static_cast<double>(i) / static_cast<double>(n)) > 1e-9 * std::max(1.0, len))
        fail(Errc::ParseError, "edge '" + g->edge(e).id + "' samples are not on a uniform grid");
    segs.push_back(n);
  }
  auto d = std::make_shared<const Discretization>(g, segs);
  GraphFunction u(d);
  std::vector<char> set(g->num_vertices(), 0);
  for (std::size_t e = 0; e < rows.size(); ++e) {
    const auto n = segs[e];
    for (std::size_t i = 1; i < n; ++i) u[d->node(e, i)] = rows[e][i].second;
    const std::size_t vs[2] = {g->edge(e).a, g->edge(e).b};
    const double ends[2] = {rows[e].front().second, rows[e].back().second};
    for (int k = 0; k < 2; ++k) {
      const auto v = vs[k];
      if (g->vertex(v).boundary) {
        if (std::abs(ends[k]) > 1e-9)
          fail(Errc::DiscontinuousRule, "nonzero value at boundary vertex '" + g->vertex(v).id + "'");
        continue;
      }
      if (!set[v]) {
        u[v] = ends[k];
        set[v] = 1;
      } else if (std::abs(u[v] - ends[k]) > 1e-9) {
        fail(Errc::DiscontinuousRule, "CSV values disagree at vertex '" + g->vertex(v).id + "'");
      }
    }
  }
  return u;
}

}  // namespace nlsg
