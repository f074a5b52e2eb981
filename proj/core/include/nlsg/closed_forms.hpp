#pragma once

#include <functional>
#include <utility>

namespace nlsg {

/// Profile A * sech^(2/(p-2))(B x) solving u'' + u^(p-1) = omega u on the line.
struct SolitonParams {
  double p = 4.0;
  double mu = 1.0;
  double amplitude = 0.0;
  double width_rate = 0.0;
  double omega = 0.0;

  double exponent() const noexcept { return 2.0 / (p - 2.0); }
  double value(double x) const;
  double derivative(double x) const;
};

SolitonParams soliton(double p, double mu);
double soliton_energy(double p, double mu);
double halfsoliton_energy(double p, double mu);

struct CriticalMasses {
  double mu_line;
  double mu_halfline;
};
CriticalMasses critical_masses() noexcept;

double gn_constant_line() noexcept;
double gn_constant_halfline() noexcept;

/// sqrt(lambda) * sech^(1/2)(2 lambda x / sqrt 3), the zero-energy family at p = 6.
struct P6Profile {
  double lambda = 1.0;
  double amplitude = 1.0;
  double width_rate = 0.0;
  double value(double x) const;
  double derivative(double x) const;
};
P6Profile soliton_p6(double lambda);

/// Adaptive Gauss-Kronrod quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14);

}  // namespace nlsg
