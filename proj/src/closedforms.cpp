#include "shotnoise/closedforms.hpp"

#include "shotnoise/montecarlo.hpp"
#include "shotnoise/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace shotnoise {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sqrt((2 - |x|)/|x|) on (0, 2], the recurring kernel
double root_kernel(double ax) { return std::sqrt((2.0 - ax) / ax); }

}  // namespace

double f0_simple(double x) {
  double ax = std::abs(x);
  if (ax > 2.0) return 0.0;
  if (ax == 0.0) return kInf;
  return root_kernel(ax) / (2.0 * kPi);
}

double g1_density(double y) {
  double ay = std::abs(y);
  if (ay >= 4.0) return 0.0;
  double v = 0.0;
  if (ay < 2.0) {
    double m1 = 1.0 - ay * ay / 4.0;
    if (m1 >= 1.0) return kInf;  // y = 0
    v += 2.0 * elliptic_k(m1);
  }
  if (ay > 0.0) {
    double m2 = (2.0 - ay / 2.0) * (ay / 2.0);
    if (m2 >= 1.0) return kInf;  // |y| = 2, log singularity
    v += (2.0 - ay / 2.0) * elliptic_k(m2);
  }
  return v / (4.0 * kPi * kPi);
}

double f0_triggered(double x) {
  double ax = std::abs(x);
  if (ax > 2.0) return 0.0;
  if (ax == 0.0) return kInf;
  double r = root_kernel(ax);
  return (r - std::atan(r)) / kPi;
}

double f_waiting_time(double x) {
  double ax = std::abs(x);
  if (ax > 2.0) return 0.0;
  if (ax == 0.0) return kInf;
  double r = root_kernel(ax);
  return (3.0 * r - 2.0 * std::atan(r)) / (4.0 * kPi);
}

double f0_three_uniforms(double x) {
  double ax = std::abs(x);
  if (ax > 2.0) return 0.0;
  if (ax == 0.0) return kInf;
  double rt = root_kernel(ax);
  double r = 1.0 / std::sqrt(2.0 * ax);
  double theta = std::atan(rt);
  double omega =
      std::atan(r * std::sin(theta) / (1.0 - r * std::cos(theta)));
  double v = rt - theta - 0.5 * (omega + theta) * std::log(r) +
             0.25 * (clausen2(2.0 * (omega + theta)) - clausen2(2.0 * omega) -
                     clausen2(2.0 * theta));
  return 2.0 * v / kPi;
}

double f1_simple(double x) {
  double ax = std::abs(x);
  if (ax > 4.0) return 0.0;
  // the tabulated integral, upper limit sqrt(1 - (x-1)^2)
  double up2 = 1.0 - (ax - 1.0) * (ax - 1.0);
  double value = 0.0;
  if (up2 > 0.0) {
    double up = std::sqrt(up2);
    int n = 2000;
    for (int i = 0; i < n; ++i) {
      double xi = up * (i + 0.5) / n;
      double t = std::pow(1.0 - xi * xi, 0.2);
      double w = t - 1.0 / t;
      value += elliptic_k(xi) / xi * w * w * (up / n);
    }
  }
  // one-time MC gate at fixed control points: density of U1(U0 Λ0 + Λ1)
  struct Gate {
    double ratio_lo, ratio_hi;
    Gate() {
      long n = 1000000;
      std::vector<double> w((size_t)n);
      auto ab = AmplitudeLaw::make(AmplitudeLaw::Tag::arcsine_plus_bernoulli);
      for (long i = 0; i < n; ++i) {
        RngStream rng(1234, (std::uint64_t)i);
        double l0 = sample_amplitude(ab, rng);
        double u0 = rng.uniform_positive();
        double l1 = sample_amplitude(ab, rng);
        double u1 = rng.uniform_positive();
        w[(size_t)i] = u1 * (u0 * l0 + l1);
      }
      auto h = histogram(w, 40, -4.0, 4.0);
      ratio_lo = kInf;
      ratio_hi = -kInf;
      for (double cx : {0.9, 1.5}) {
        double fmc = h.f[(size_t)((cx + 4.0) / 0.2)];
        double fi = f1_ratio_probe(cx);
        double ratio = fmc / fi;
        ratio_lo = std::fmin(ratio_lo, ratio);
        ratio_hi = std::fmax(ratio_hi, ratio);
      }
    }
    static double f1_ratio_probe(double cx) {
      double up = std::sqrt(1.0 - (cx - 1.0) * (cx - 1.0));
      int n = 2000;
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        double xi = up * (i + 0.5) / n;
        double t = std::pow(1.0 - xi * xi, 0.2);
        double w = t - 1.0 / t;
        s += elliptic_k(xi) / xi * w * w * (up / n);
      }
      return s;
    }
  };
  static const Gate gate;
  // the ratio MC/integral is far from constant (0.33 .. 0.77 over the control
  // points alone), so no scaling reconciles the printed form with the process
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "f1_simple: printed integral fails its MC gate "
                "(MC/integral spans [%.3f, %.3f]); integral value %.6g",
                gate.ratio_lo, gate.ratio_hi, value);
  throw FormulaMismatch(msg);
}

const std::vector<SupportedDensity>& supported_densities() {
  static const std::vector<SupportedDensity> reg = {
      {"f0-simple", -2.0, 2.0, [](double x) { return f0_simple(x); }},
      {"g1", -4.0, 4.0, [](double y) { return g1_density(y); }},
      {"f0-triggered", -2.0, 2.0, [](double x) { return f0_triggered(x); }},
      {"waiting-time", -2.0, 2.0, [](double x) { return f_waiting_time(x); }},
      {"three-uniforms", -2.0, 2.0,
       [](double x) { return f0_three_uniforms(x); }},
  };
  return reg;
}

}  // namespace shotnoise
