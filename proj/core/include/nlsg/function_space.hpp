#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nlsg/graph.hpp"

namespace nlsg {

/// Uniform P1 grid on every edge of a truncated graph. Degrees of freedom are the
/// vertex values (indices 0..V-1, shared by all incident edges) followed by the
/// interior nodes of each edge. Boundary vertices carry homogeneous Dirichlet data.
class Discretization {
 public:
  Discretization(std::shared_ptr<const TruncatedGraph> g, double h_target);
  Discretization(std::shared_ptr<const TruncatedGraph> g, std::vector<std::size_t> segments);

  const TruncatedGraph& graph() const noexcept { return *graph_; }
  std::shared_ptr<const TruncatedGraph> graph_ptr() const noexcept { return graph_; }

  std::size_t num_dofs() const noexcept { return n_dofs_; }
  std::size_t segments(std::size_t e) const { return segs_.at(e); }
  double spacing(std::size_t e) const { return h_.at(e); }
  double max_spacing() const noexcept;
  double min_spacing() const noexcept;

  /// Dof index of node i (0..segments) on edge e; node 0 sits at endpoint a.
  std::size_t node(std::size_t e, std::size_t i) const;
  bool is_dirichlet(std::size_t dof) const { return dirichlet_[dof] != 0; }
  /// Lumped (row-sum) mass weight of a dof.
  double lumped_weight(std::size_t dof) const { return lumped_[dof]; }
  /// Edge and node index of a dof; vertices report their first incident edge end.
  std::pair<std::size_t, std::size_t> locate(std::size_t dof) const;

 private:
  void build();

  std::shared_ptr<const TruncatedGraph> graph_;
  std::vector<std::size_t> segs_;
  std::vector<double> h_;
  std::vector<std::size_t> first_;
  std::vector<char> dirichlet_;
  std::vector<double> lumped_;
  std::size_t n_dofs_ = 0;
};

/// Continuous piecewise-linear function on a truncated graph.
class GraphFunction {
 public:
  GraphFunction() = default;
  explicit GraphFunction(std::shared_ptr<const Discretization> d);
  GraphFunction(std::shared_ptr<const Discretization> d, std::vector<double> values);

  const Discretization& disc() const noexcept { return *disc_; }
  std::shared_ptr<const Discretization> disc_ptr() const noexcept { return disc_; }
  const TruncatedGraph& graph() const noexcept { return disc_->graph(); }

  std::vector<double>& values() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double& operator[](std::size_t dof) { return values_[dof]; }
  double operator[](std::size_t dof) const { return values_[dof]; }

  double at(std::size_t e, std::size_t i) const { return values_[disc_->node(e, i)]; }
  std::vector<double> edge_samples(std::size_t e) const;
  /// Linear interpolation at arc coordinate s from endpoint a.
  double eval(std::size_t e, double s) const;

 private:
  std::shared_ptr<const Discretization> disc_;
  std::vector<double> values_;
};

using EdgeRule = std::function<double(std::size_t edge, double s)>;

/// Samples f on a fresh grid (h_e = length / ceil(length / h_target)).
GraphFunction sample(std::shared_ptr<const TruncatedGraph> g, const EdgeRule& f, double h_target);
GraphFunction sample(std::shared_ptr<const Discretization> d, const EdgeRule& f);

struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double mass = 0.0;
};

/// Kinetic term exact for the interpolant; mass and L^p terms integrate the
/// interpolant with 4-point Gauss-Legendre per cell (exact for p = 2, 4, 6).
EnergyBreakdown energy(const GraphFunction& u, double p);
double mass(const GraphFunction& u);
double lp_integral(const GraphFunction& u, double p);
/// ||u'||^2 (twice the kinetic energy).
double dirichlet_integral(const GraphFunction& u);

/// Derivative of the discrete energy w.r.t. each dof; zero at Dirichlet dofs.
std::vector<double> energy_gradient(const GraphFunction& u, double p);
/// Derivative of the mass w.r.t. each dof (2 M u); zero at Dirichlet dofs.
std::vector<double> mass_gradient(const GraphFunction& u);

double lagrange_multiplier(const GraphFunction& u, double p);

/// sqrt(sum r_j^2 / w_j) over free dofs, r = grad E + omega * grad(mass) / 2.
double stationarity_residual(const GraphFunction& u, double p, double omega);

std::map<std::string, double> kirchhoff_residual(const GraphFunction& u);
double max_kirchhoff_residual(const GraphFunction& u);

GraphFunction rescale_mass(const GraphFunction& u, double mu);

/// Linear interpolation of u onto another discretization of the same graph.
GraphFunction transfer(const GraphFunction& u, std::shared_ptr<const Discretization> target);

/// CSV with header edge_id,arc_coordinate,value; every node of every edge.
void write_csv(const GraphFunction& u, std::ostream& out);
/// Rebuilds the grid from the rows; vertex values must agree within 1e-9.
GraphFunction read_csv(std::shared_ptr<const TruncatedGraph> g, std::istream& in);

}  // namespace nlsg
