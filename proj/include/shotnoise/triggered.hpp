#pragma once
// Triggered (l = 2) shot noise W_{n+1} = U1 U2 (W_n + Λ).  The stationary
// transform h2 satisfies s^2 h'' + 3 s h' + (1 - g) h = 0; it is evaluated
// piecewise: power series at the origin, outward ODE integration (of
// Y = s h2) on a table, and the matched asymptotic form
//   Y(s) = C1 ((ln s + γ)(1 + CJi2) + 2 CJi3) + (C2 - C1)(1 + CJi2)
// beyond the table, with C1/C2 extracted from (Y, Y') against that basis in
// a large-s window and a least-squares removal of the (a + b ln s)/s defect.

#include "shotnoise/grid.hpp"
#include "shotnoise/specfun.hpp"

#include <vector>

namespace shotnoise {

struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// even amplitude moments K_0..K_{2 nmax} (odd entries zero) from the pFq
// series: K_{2k} = (2k)! (a)_k / ((b)_k k!)
std::vector<double> amplitude_moments(const HypergeometricLaw& law, int nmax);

// series coefficients c_0..c_{2N} (odd entries zero) of h(s) = Σ c_{2j} s^{2j}
// from the ODE recurrence
//   c_{2n} = (1/(4n(n+1))) Σ_{j=0}^{n-1} (-1)^{n-j} c_{2j} K_{2(n-j)}/(2(n-j))!
std::vector<double> series_coefficients(const std::vector<double>& K, int N);

struct TriggeredModel {
  HypergeometricLaw law;
  std::vector<double> K;  // K_0..K_{2N+2}
  std::vector<double> c;  // c_0..c_{2N}
  double C1 = 0.0, C2 = 0.0;
  double match_lo = 150.0, match_hi = 2000.0;
  int N = 14;

  // ODE table of Y = s h2 and Y' on [table_lo, table_hi], fixed step
  double table_lo = 1.0, table_hi = 2000.0, table_step = 0.0;
  std::vector<double> Y, Yp;

  // extended coefficient set used for the series branch and the ODE seed
  // (the contract-level truncation N is too short for 1e-15 accuracy at the
  // table edge: |c_2n| decays only like (2/ln n)^{2n})
  std::vector<double> c_ext;
};

// builds series + ODE table + matched constants (example law only; other
// laws lack the closed CJi basis)
TriggeredModel make_triggered_model(const HypergeometricLaw& law, int N = 14);

// per-point 2x2 solves against the asymptotic basis at abscissae s followed
// by the least-squares defect removal; exposed for the synthetic round-trip
std::pair<double, double> match_constants(const std::vector<double>& s,
                                          const std::vector<double>& Y,
                                          const std::vector<double>& Yp);

// the matched-form basis (valid for s >= ~10, asymptotic CJi forms)
void matched_basis(double s, double& y1, double& y2, double& y1p, double& y2p);

double h2(const TriggeredModel& m, double s);

// analytic residual of the truncated series in the ODE at s: zero through
// order 2N by construction, so this returns the first surviving term
double ode_residual(const TriggeredModel& m, double s);

// f2(x) = (1/pi) [ int_0^T cos(xt) h2 dt + analytic log tail ], T chosen as
// max(100, 8/|x|) capped at the table end; tail_flag (optional) reports when
// the tail term exceeds 10% of the result
double triggered_density(const TriggeredModel& m, double x,
                         bool* tail_flag = nullptr);

// F2(x) via the sine transform with the /t^2 tail primitives
double triggered_cdf(const TriggeredModel& m, double x);

// density grid with the mass-preserving value at an interior x = 0 node
DensityGrid triggered_density_grid(const TriggeredModel& m,
                                   const std::vector<double>& xs);

// uniform-grid interpolant of the cdf for fast repeated evaluation.  Linear
// interpolation alone loses ~1e-2 near x = 0 where f ~ -(C1/pi) ln|x|, so the
// cells within two grid steps of the origin use the local model
// F(x) = 1/2 + x (b0 + b1 ln|x| + b2 ln^2|x|) -- the density diverges like
// ln^2 x there -- with the b's fitted to nearby exact cdf values.
// Clamped to 0/1 outside [lo, hi].
class TriggeredCdfTable {
 public:
  TriggeredCdfTable(const TriggeredModel& m, double lo, double hi, int n);
  double operator()(double x) const;

 private:
  double lo_, hi_, step_, patch_;
  double b_[3] = {0.0, 0.0, 0.0};
  std::vector<double> F_;
};

}  // namespace shotnoise
