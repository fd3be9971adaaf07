#include "shotnoise/saddle.hpp"

#include "shotnoise/hyperint.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace shotnoise {

namespace {

// G(s) = pFq(a; b; s^2) and its first derivative.  dG/ds = 2s (prod a / prod b)
// pFq(a+1; b+1; s^2) by the contiguous-derivative identity.
struct GPair {
  double g, dg;
};

GPair g_and_derivative(const HypergeometricLaw& law, double s) {
  double z = s * s;
  double ratio = 1.0;
  HypergeometricLaw up = law;
  for (double& ai : up.a) {
    ratio *= ai;
    ai += 1.0;
  }
  for (double& bj : up.b) {
    ratio /= bj;
    bj += 1.0;
  }
  return {pfq(law, z), 2.0 * s * ratio * pfq(up, z)};
}

}  // namespace

PhiDerivatives phi_and_derivatives(const HypergeometricLaw& law, double x,
                                   double s) {
  if (!(s > 0.0)) throw std::domain_error("phi_and_derivatives: s must be > 0");
  auto [g, dg] = g_and_derivative(law, s);
  PhiDerivatives r;
  r.phi = -s * x + ciin(law, 1, s);
  r.dphi = -x + (g - 1.0) / s;
  r.d2phi = dg / s - (g - 1.0) / (s * s);
  return r;
}

SaddleResult find_saddle(const HypergeometricLaw& law, double x) {
  law.validate();
  if (!(x >= 3.0))
    throw std::domain_error("find_saddle: x must be >= 3 (tail regime)");
  double guess = 0.5 * std::log(x) + 0.75 * std::log(std::log(x)) +
                 0.25 * std::log(kPi);
  double lo = guess / 2.0, hi = 2.0 * guess + 2.0;
  // Phi' is increasing in s for fixed x once G grows; widen until bracketed
  while (phi_and_derivatives(law, x, lo).dphi > 0.0 && lo > 1e-8) lo /= 2.0;
  int widen = 0;
  while (phi_and_derivatives(law, x, hi).dphi < 0.0) {
    hi *= 1.5;
    if (++widen > 60) throw NonConvergence("find_saddle: no bracket");
  }
  double s = std::fmin(std::fmax(guess, lo), hi);
  double tol = 1e-12 * x;
  PhiDerivatives d{};
  bool done = false;
  for (int it = 0; it < 100; ++it) {
    d = phi_and_derivatives(law, x, s);
    if (std::abs(d.dphi) < tol) {
      done = true;
      break;
    }
    if (d.dphi > 0.0)
      hi = s;
    else
      lo = s;
    double step = d.dphi / d.d2phi;
    double next = s - step;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  if (!done) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "find_saddle: residual %.3e at s=%.6f after 100 iterations",
                  d.dphi, s);
    throw NonConvergence(msg);
  }
  SaddleResult r;
  r.x = x;
  r.s0 = s;
  r.phi = d.phi;
  r.phi2 = d.d2phi;
  r.f_asymptotic = std::exp(r.phi - 0.5 * std::log(2.0 * kPi * r.phi2));
  return r;
}

double density_tail(const HypergeometricLaw& law, double x) {
  return find_saddle(law, x).f_asymptotic;
}

std::string saddle_csv(const std::vector<SaddleResult>& rows) {
  std::string out = "x,s0,phi,phi2,f\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.x, r.s0,
                  r.phi, r.phi2, r.f_asymptotic);
    out += buf;
  }
  return out;
}

}  // namespace shotnoise
