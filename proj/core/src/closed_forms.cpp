#include "nlsg/closed_forms.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "nlsg/error.hpp"

namespace nlsg {

namespace {

void check_p(double p) {
  if (!(p > 2.0 && p < 6.0))
    fail(Errc::ExponentOutOfRange, "soliton needs 2 < p < 6, got p = " + std::to_string(p));
}

// integral of sech^s over the line
double sech_power_integral(double s) {
  return std::sqrt(std::numbers::pi) * std::tgamma(s / 2.0) / std::tgamma((s + 1.0) / 2.0);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, tol);
}

double SolitonParams::value(double x) const {
  return amplitude * std::pow(1.0 / std::cosh(width_rate * x), exponent());
}

double SolitonParams::derivative(double x) const {
  const double bx = width_rate * x;
  return -amplitude * exponent() * width_rate * std::pow(1.0 / std::cosh(bx), exponent()) *
         std::tanh(bx);
}

SolitonParams soliton(double p, double mu) {
  check_p(p);
  if (!(mu > 0.0)) fail(Errc::InvalidArgument, "mass must be positive");
  const double alpha = 2.0 / (p - 2.0);
  // mu = c_p * omega^((6-p)/(2(p-2)))
  const double c = std::pow(p / 2.0, alpha) * sech_power_integral(2.0 * alpha) * 2.0 / (p - 2.0);
  SolitonParams s;
  s.p = p;
  s.mu = mu;
  s.omega = std::pow(mu / c, 2.0 * (p - 2.0) / (6.0 - p));
  s.width_rate = (p - 2.0) / 2.0 * std::sqrt(s.omega);
  s.amplitude = std::pow(p * s.omega / 2.0, 1.0 / (p - 2.0));
  return s;
}

double soliton_energy(double p, double mu) {
  check_p(p);
  if (p == 4.0) return -mu * mu * mu / 96.0;
  const auto s = soliton(p, mu);
  const double X = 40.0 / s.width_rate;
  auto density = [&](double x) {
    const double d = s.derivative(x);
    return 0.5 * d * d - std::pow(s.value(x), p) / p;
  };
  return 2.0 * integrate(density, 0.0, X, 1e-14);
}

double halfsoliton_energy(double p, double mu) { return soliton_energy(p, 2.0 * mu) / 2.0; }

CriticalMasses critical_masses() noexcept {
  const double m = std::numbers::pi * std::sqrt(3.0) / 2.0;
  return {m, m / 2.0};
}

double gn_constant_line() noexcept { return 4.0 / (std::numbers::pi * std::numbers::pi); }

double gn_constant_halfline() noexcept { return 16.0 / (std::numbers::pi * std::numbers::pi); }

double P6Profile::value(double x) const {
  return amplitude / std::sqrt(std::cosh(width_rate * x));
}

double P6Profile::derivative(double x) const {
  const double bx = width_rate * x;
  return -0.5 * amplitude * width_rate * std::tanh(bx) / std::sqrt(std::cosh(bx));
}

P6Profile soliton_p6(double lambda) {
  if (!(lambda > 0.0)) fail(Errc::NonpositiveScale, "lambda must be positive");
  return {lambda, std::sqrt(lambda), 2.0 * lambda / std::sqrt(3.0)};
}

}  // namespace nlsg
