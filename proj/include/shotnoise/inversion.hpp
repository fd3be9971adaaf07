#pragma once
// Fourier inversion of the stationary characteristic function
//   h(t) = exp(-int_0^t (1 - g(xi))/xi dxi),   g(s) = pFq(a; b; -s^2),
// giving the stationary density f(x) = (1/pi) int_0^inf cos(xt) h(t) dt and
// its distribution function.
//
// Supported laws are those with a closed evaluator for g at large argument:
//   a = (1/4, 3/4), b = (1/2, 1/2, 1)  ->  g(s) = cos s J0(s)
//   a = (),         b = (1/2)          ->  g(s) = cos 2s
//   a = (),         b = (1)            ->  g(s) = J0(2s)
// (the power series for g loses all precision beyond s ~ 8 in doubles).

#include "shotnoise/grid.hpp"
#include "shotnoise/specfun.hpp"

#include <vector>

namespace shotnoise {

struct InversionConfig {
  double x1 = 10.0;          // integration-by-parts split point
  double x2 = 200.0;         // truncation of the transform
  double panel_width = 0.01; // Gauss-Legendre panel width in t
};

// C = e^{m1}; t h(t) -> C as t -> infinity
double normalization_constant(const HypergeometricLaw& law);

// L(t) = int_0^t (1 - g)/xi dxi, series below t = 14 and the closed
// large-argument form of g above
double log_cf_exponent(const HypergeometricLaw& law, double t);

// ln h(s) = ln C - ln s - (1/2) ti(1, s)  (equivalently -L(s)); h(0+) = 1
double log_transform_h(const HypergeometricLaw& law, double s);

class Inverter {
 public:
  explicit Inverter(const HypergeometricLaw& law, InversionConfig cfg = {});

  // stationary density; symmetric in x.  |x| must be below ~0.3/panel_width
  // (use the saddle-point tail beyond).  At x = 0 the transform diverges
  // logarithmically; the value returned is the x2-truncated transform.
  double density(double x) const;

  // distribution function, exact tail completion beyond x2; clamped to [0,1]
  double cdf(double x) const;

  // truncation + quadrature error estimate, O(1/(|x| x2^2)) + O(step^2)
  double error_estimate(double x) const;

  double normalization() const { return norm_; }
  const InversionConfig& config() const { return cfg_; }

  DensityGrid density_grid(const std::vector<double>& xs) const;
  DensityGrid cdf_grid(const std::vector<double>& xs) const;

 private:
  double g_direct(double t) const;
  double h_at(double t) const;

  HypergeometricLaw law_;
  InversionConfig cfg_;
  int kind_ = 0;  // 0: cos*J0, 1: cos 2s, 2: J0(2s)
  double m1_ = 0.0, norm_ = 1.0, h_x1_ = 0.0, ctilde_ = 0.0;
  std::vector<double> ta_, ha_, wa_;        // nodes/values on [0, x1]
  std::vector<double> tm_, hm_, hgm_, wm_;  // nodes/values on [x1, x2]
};

// convenience wrapper over a per-(law, config) cached Inverter
double stationary_density(const HypergeometricLaw& law, double x,
                          const InversionConfig& cfg = {});

// uniform-grid linear interpolant of the cdf, for fast repeated evaluation
// (e.g. KS statistics over 1e6 sample points); clamped to 0/1 outside [lo, hi]
class CdfTable {
 public:
  CdfTable(const Inverter& inv, double lo, double hi, int n);
  double operator()(double x) const;

 private:
  double lo_, hi_, step_;
  std::vector<double> F_;
};

}  // namespace shotnoise
