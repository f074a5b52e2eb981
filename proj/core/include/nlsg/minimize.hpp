#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlsg/function_space.hpp"
#include "nlsg/graph.hpp"

namespace nlsg {

enum class InitStrategy { VertexBump, HalflineSoliton, EdgeUniform, Random };
enum class Status { Converged, MaxIter, UnboundedSuspected };

std::string_view to_string(InitStrategy s) noexcept;
std::string_view to_string(Status s) noexcept;
InitStrategy init_strategy_from_string(std::string_view s);

struct SolverConfig {
  double truncation_length = 80.0;
  double h_target = 0.01;
  /// Initial step of the preconditioned flow; adapted during the run.
  double dt = 1.0;
  double dt_max = 1.5;
  double dt_min = 1.0e-10;
  int max_iterations = 4000;
  double tol_energy = 1e-10;
  double tol_residual = 1e-7;
  int restarts = 1;
  std::vector<InitStrategy> init_strategies = {InitStrategy::VertexBump, InitStrategy::HalflineSoliton,
                                               InitStrategy::EdgeUniform, InitStrategy::Random};
  std::uint64_t seed = 1;
  /// Negative; when absent, 1e3 times the half-soliton energy for p < 6 and -1e3 for p >= 6.
  std::optional<double> blowup_energy_floor;
  /// At p >= 6 a negative-energy iterate narrower than this many cells counts as collapse.
  double collapse_cells = 4.0;
  /// Cap on vertex-centred starts per restart.
  int max_vertex_starts = 6;
  /// Return the best run even if none converged (used for profiling).
  bool accept_unconverged = false;

  void validate() const;
  double floor_for(double p, double mu) const;
};

struct RunRecord {
  InitStrategy strategy = InitStrategy::VertexBump;
  int restart = 0;
  std::string anchor;
  double energy = 0.0;
  Status status = Status::MaxIter;
  int iterations = 0;
};

struct GroundStateResult {
  GraphFunction u;
  double energy = 0.0;
  double mass = 0.0;
  double omega = 0.0;
  double grad_residual = 0.0;
  double kirchhoff_max_residual = 0.0;
  int iterations = 0;
  Status status = Status::MaxIter;
  /// Largest fraction of mass on the outer half of a truncated halfline.
  double escape_fraction = 0.0;
  bool mass_escaped = false;
  std::string origin;
  std::vector<RunRecord> trace;
};

/// Observer called after every accepted step with (iteration, energy, mass).
using FlowObserver = std::function<void(int, double, double)>;

GroundStateResult normalized_gradient_flow(const GraphFunction& u0, double p, double mu,
                                           const SolverConfig& cfg,
                                           const FlowObserver& observer = {});

/// Mass fraction on the outer half of the most loaded truncated halfline.
double escape_fraction(const GraphFunction& u);

/// profile(distance to the point at arc coordinate s of edge e).
GraphFunction radial_bump(const std::shared_ptr<const Discretization>& d, std::size_t e, double s,
                          const std::function<double(double)>& profile);

/// Initial guesses for one strategy on a discretization.
struct InitialGuess {
  std::string anchor;
  GraphFunction u;
};
std::vector<InitialGuess> initial_guesses(const std::shared_ptr<const Discretization>& d,
                                          InitStrategy s, double p, double mu,
                                          const SolverConfig& cfg, int restart);

GroundStateResult ground_state(const MetricGraph& g, double p, double mu, const SolverConfig& cfg);

/// halfsoliton_energy - tol <= energy <= soliton_energy + tol with tol = 1e-3 |halfsoliton_energy|.
bool level_pinching_check(const GroundStateResult& r, double p, double mu);

using GraphFamily = std::function<MetricGraph(double)>;

struct SweepRow {
  double param = 0.0;
  double energy = 0.0;
  double omega = 0.0;
  std::string status;
  int iterations = 0;
};

std::vector<SweepRow> sweep(const GraphFamily& family, double p, double mu,
                            const std::vector<double>& grid, const SolverConfig& cfg);

struct PhaseTransition {
  double ell_star = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int sign_changes = 0;
  std::vector<SweepRow> grid;
  std::vector<std::pair<double, double>> bisection;  // (ell, f)
};

/// Values of f below -threshold count as "ground state exists".
inline constexpr double kPhaseSignThreshold = 1e-9;

/// Sweeps the bracket on a log grid, then bisects f = E - soliton_energy to width `width`.
PhaseTransition find_phase_transition(const GraphFamily& family, double p, double mu, double lo,
                                      double hi, const SolverConfig& cfg, int grid_points = 10,
                                      double width = 1e-2);

}  // namespace nlsg
