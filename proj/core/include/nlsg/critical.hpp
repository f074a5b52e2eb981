#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlsg/function_space.hpp"
#include "nlsg/minimize.hpp"
#include "nlsg/topology.hpp"

namespace nlsg {

enum class PredictedMuG { HalflineMass, LineMass, UnknownInBetween };
std::string_view to_string(PredictedMuG m) noexcept;

struct CriticalReport {
  double K_estimate = 0.0;
  /// sqrt(3 / K_estimate)
  double mu_G_estimate = 0.0;
  CaseLabel case_label = CaseLabel::Other;
  PredictedMuG predicted_mu_G = PredictedMuG::UnknownInBetween;
  /// Mass set carrying a ground state.
  std::string predicted_existence;
  /// Masses in (mu_{R+}, mu_R] where the level is minus infinity, if predicted.
  bool predicted_minus_infinity_below_line_mass = false;
  double truncation_length = 0.0;
  double h = 0.0;
};

/// ||u||_6^6 / (||u||_2^4 ||u'||_2^2)
double gn_quotient(const GraphFunction& u);

struct KEstimate {
  double K = 0.0;
  GraphFunction u;
  int iterations = 0;
  std::string origin;
};

/// Lower bound for the Gagliardo-Nirenberg constant by preconditioned ascent of the quotient.
KEstimate estimate_K(const MetricGraph& g, const SolverConfig& cfg);

/// Prediction fields only; throws CompactGraph.
CriticalReport predict(const MetricGraph& g);

/// Prediction plus the numerical estimate of K.
CriticalReport critical_report(const MetricGraph& g, const SolverConfig& cfg);

enum class Regime { Zero, NegativeFinite, Unbounded };
std::string_view to_string(Regime r) noexcept;

struct ProfileRow {
  double mu = 0.0;
  double energy = 0.0;
  Status status = Status::MaxIter;
  Regime regime = Regime::Zero;
  int iterations = 0;
  /// Energy on the grid with half the spacing; only for negative levels.
  std::optional<double> energy_half_h;
};

/// Ground-state energy at p = 6 for each mass. A negative level counts as finite
/// only if halving h changes it by less than 5 percent.
std::vector<ProfileRow> energy_profile_p6(const MetricGraph& g, const std::vector<double>& masses,
                                          const SolverConfig& cfg, double zero_tol = 1e-4);

/// Smallest theta on a uniform grid of [0, mu] with
/// ||u||_6^6 <= K_R (mu - theta)^2 ||u'||_2^2 + C theta^(1/2); empty if none.
std::optional<double> modified_gn_theta(const GraphFunction& u, double mu, double C,
                                        std::size_t grid = 20000);

}  // namespace nlsg
