#pragma once
// Saddle-point tail approximation of the stationary density,
//   f(x) ~ exp(Phi(s0)) / sqrt(2 pi Phi''(s0)),  x -> infinity,
// where Phi(s) = -s x + int_0^s (G(xi) - 1)/xi dxi and G(s) = pFq(a; b; +s^2)
// is the bilateral (s -> is) counterpart of the characteristic function
// (for the example law G(s) = cosh s * I0(s)).  The saddle s0 solves
// Phi'(s0) = 0, i.e. 1 + x s0 = G(s0).

#include "shotnoise/specfun.hpp"

#include <string>
#include <vector>

namespace shotnoise {

struct PhiDerivatives {
  double phi;    // Phi(s)
  double dphi;   // Phi'(s) = -x + (G(s) - 1)/s
  double d2phi;  // Phi''(s), analytic (shifted-parameter pFq derivative)
};

struct SaddleResult {
  double x = 0.0;
  double s0 = 0.0;
  double phi = 0.0;           // Phi(s0)
  double phi2 = 0.0;          // Phi''(s0) > 0
  double f_asymptotic = 0.0;  // exp(phi)/sqrt(2 pi phi2), computed in logs
};

PhiDerivatives phi_and_derivatives(const HypergeometricLaw& law, double x,
                                   double s);

// Newton iteration safeguarded by a bisection bracket, started from
// s0 = (1/2) ln x + (3/4) ln ln x + (1/4) ln pi.  Requires x >= 3.
SaddleResult find_saddle(const HypergeometricLaw& law, double x);

double density_tail(const HypergeometricLaw& law, double x);

// CSV with columns x,s0,phi,phi2,f
std::string saddle_csv(const std::vector<SaddleResult>& rows);

}  // namespace shotnoise
