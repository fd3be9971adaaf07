#pragma once
// Scalar special functions used by every other module.
// All functions are pure and thread-safe.

#include <stdexcept>
#include <string>
#include <vector>

namespace shotnoise {

// Mathematical constants kept to full double precision; each is cross-checked
// against an independent series oracle in the test suite.
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kZeta3 = 1.20205690315959428540;
inline constexpr double kCatalan = 0.91596559417721901505;

// Parameter vectors (a; b) defining an even characteristic function
// g(s) = pFq(a; b; -s^2).
struct HypergeometricLaw {
  std::vector<double> a;
  std::vector<double> b;

  // all entries strictly positive and p <= q
  void validate() const;
  bool slowly_decaying() const { return a.size() == b.size(); }
};

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (x)_k = Gamma(x+k)/Gamma(x).  k may be negative as long as no gamma pole is
// crossed; direct product for |k| <= 64, log-gamma difference otherwise.
double pochhammer(double x, int k);

// psi^(k)(x), x > 0, relative accuracy ~1e-12.
double polygamma(int k, double x);

struct PfqResult {
  double value = 0.0;
  double err_estimate = 0.0;   // absolute, from cancellation analysis
  bool cancellation_flag = false;  // cancellation above 1e-8 relative
};
PfqResult pfq_full(const HypergeometricLaw& law, double z, int term_cap = 10000);
double pfq(const HypergeometricLaw& law, double z);

double bessel_j(int order, double x);  // order 0 or 1
double bessel_i0(double x);            // |x| <= ~700 (overflow guard)
double bessel_i1(double x);
double cosh_fn(double x);

double cosine_integral(double x);  // Ci(x), x > 0
double sine_integral(double x);    // Si(x)

// Standard Clausen function Cl2(theta) = sum_k sin(k theta)/k^2.
double clausen2(double theta);

// Complete elliptic integral K(m), PARAMETER convention, 0 <= m < 1, by AGM.
double elliptic_k(double m);

}  // namespace shotnoise
