#pragma once
// Closed-form densities for the arcsine+Bernoulli amplitude
// Λ = cos(πV) + Δ and its first recurrence iterates:
//   f0_simple         density of W0 = U Λ
//   g1_density        density of Y = W0 + Λ' (complete elliptic integrals)
//   f0_triggered      density of W0 = U1 U2 Λ
//   f_waiting_time    waiting-time-corrected first-iterate density (l = 2)
//   f0_three_uniforms density of U1 U2 U3 Λ (Clausen-integral form)
// All are even in x and vanish outside their support.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shotnoise {

struct FormulaMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double f0_simple(double x);          // support [-2,2], +inf at x = 0
double g1_density(double y);         // support [-4,4]
double f0_triggered(double x);       // support [-2,2], +inf at x = 0
double f_waiting_time(double x);     // support [-2,2], +inf at x = 0
double f0_three_uniforms(double x);  // support [-2,2], +inf at x = 0

// the tabulated integral claimed for f1; kept experimental: its Monte-Carlo
// gate fails structurally (no constant rescaling matches), so this always
// throws FormulaMismatch with the measured discrepancy
double f1_simple(double x);

struct SupportedDensity {
  std::string name;
  double lo = 0.0, hi = 0.0;
  std::function<double(double)> eval;
};

// registry of the non-experimental closed forms (for the CLI)
const std::vector<SupportedDensity>& supported_densities();

}  // namespace shotnoise
