#pragma once

#include <string>
#include <vector>

#include "nlsg/function_space.hpp"
#include "nlsg/graph.hpp"
#include "nlsg/minimize.hpp"
#include "nlsg/rearrange.hpp"

namespace nlsg {

/// Soliton split at +-ell/2 into a head and two tails.
struct SolitonCut {
  double p = 4.0;
  double mu = 1.0;
  double ell = 0.0;
  PiecewiseLinear head;
  /// Right tail sampled on [ell/2, ell/2 + tail_length]; the left one is its mirror image.
  PiecewiseLinear tail;
  double head_mass = 0.0;
  double tail_mass_left = 0.0;
  double tail_mass_right = 0.0;
};

SolitonCut cut_soliton(double p, double mu, double ell, double h = 1e-3, double tail_length = 40.0);

/// Linear change of variable on part of an edge: value = phi(|x0 + k (s - s0)|) on [s0, s1].
struct Piece {
  double s0 = 0.0;
  double s1 = 0.0;
  double x0 = 0.0;
  double k = 0.0;
};

/// A construction assembled from pieces of the soliton, given edge by edge.
struct Competitor {
  std::string shape;
  MetricGraph graph;
  std::vector<std::vector<Piece>> pieces;
  GraphFunction u;
  /// Energy of u on the grid (mass exactly mu).
  double discrete_energy = 0.0;
  /// Energy of the piecewise closed-form construction on the untruncated graph.
  double continuum_energy = 0.0;
  double continuum_mass = 0.0;
  double soliton_energy = 0.0;
};

Competitor pendant_competitor(double ell, double mu, double p, const SolverConfig& cfg);
Competitor pendant_competitor(const MetricGraph& g, double mu, double p, const SolverConfig& cfg);
Competitor signpost_competitor(const MetricGraph& g, double mu, double p, const SolverConfig& cfg);
Competitor signpost_competitor(double loop, double stem, double mu, double p, const SolverConfig& cfg);
Competitor tadpole_competitor(const MetricGraph& g, double mu, double p, const SolverConfig& cfg);
/// One halfline and at least two pendants at a single vertex. Each level is covered at most
/// twice when there are at most three pendants.
Competitor fork_competitor(const MetricGraph& g, double mu, double p, const SolverConfig& cfg);
/// The soliton laid isometrically on a bubble tower, centred at the top of the tower.
Competitor fold_on_bubble_tower(const MetricGraph& tower, double mu, double p, const SolverConfig& cfg);

}  // namespace nlsg
