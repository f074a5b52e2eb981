#pragma once

#include <vector>

#include "nlsg/function_space.hpp"

namespace nlsg {

/// Continuous piecewise-linear function on an interval; x is nondecreasing.
struct PiecewiseLinear {
  std::vector<double> x;
  std::vector<double> y;

  double eval(double t) const;
  double lower() const { return x.front(); }
  double upper() const { return x.back(); }
  /// Integral of |y|^p, exact for even p up to 6.
  double lp_integral(double p) const;
  /// One half of the integral of y'^2.
  double kinetic() const;
  double mass() const { return lp_integral(2.0); }
  /// Values on a uniform grid of spacing close to h (endpoints included).
  std::vector<double> resample(double h) const;
};

/// Linear cells (start value, end value, length) describing a P1 function.
struct Cell {
  double a;
  double b;
  double h;
};

std::vector<Cell> cells_of(const GraphFunction& u);
std::vector<Cell> cells_of(const PiecewiseLinear& f);

/// rho(t) = |{u > t}| for the piecewise-linear interpolant. Levels are the distinct
/// sample values; rho is linear between them and jumps down at plateau levels.
class DistributionFunction {
 public:
  explicit DistributionFunction(const std::vector<Cell>& cells);

  double operator()(double t) const;
  /// Value just below level t (left limit).
  double left_limit(double t) const;
  double total_length() const noexcept { return total_; }
  double max_value() const noexcept { return levels_.back(); }
  double min_value() const noexcept { return levels_.front(); }
  const std::vector<double>& levels() const noexcept { return levels_; }
  const std::vector<double>& left() const noexcept { return left_; }
  const std::vector<double>& right() const noexcept { return right_; }
  /// -rho'(t) on the open interval between levels k and k+1.
  const std::vector<double>& slopes() const noexcept { return slopes_; }

 private:
  std::vector<double> levels_;
  std::vector<double> left_;
  std::vector<double> right_;
  std::vector<double> slopes_;
  double total_ = 0.0;
};

DistributionFunction distribution(const GraphFunction& u);

/// Nonincreasing u* on [0, total length], equimeasurable with u.
PiecewiseLinear monotone_rearrangement(const GraphFunction& u);
PiecewiseLinear monotone_rearrangement(const PiecewiseLinear& f);
PiecewiseLinear monotone_rearrangement(const DistributionFunction& rho);

/// Even function u*(2|x|) on [-total/2, total/2].
PiecewiseLinear symmetric_rearrangement(const GraphFunction& u);
PiecewiseLinear symmetrize(const PiecewiseLinear& monotone);

/// N(t) on the open intervals between consecutive distinct sample values.
struct PreimageCount {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<int> count;
  /// Levels attained on a set of positive length.
  std::vector<double> plateaus;

  int at(double t) const;
  int min_count() const;
};

PreimageCount preimage_count(const GraphFunction& u);
/// Transversal crossings of each requested level.
std::vector<int> preimage_count(const GraphFunction& u, const std::vector<double>& levels);

/// kinetic(u) - kinetic(u*).
double polya_szego_gap(const GraphFunction& u);
/// kinetic(u) - kinetic(symmetric rearrangement).
double polya_szego_gap_symmetric(const GraphFunction& u);

}  // namespace nlsg
