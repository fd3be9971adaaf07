#pragma once
// Iterated integrals of even hypergeometric characteristic functions and the
// oscillatory tail primitives they need.

#include "shotnoise/specfun.hpp"

#include <stdexcept>
#include <vector>

namespace shotnoise {

// thrown when a fixed-precision series would lose more than ~1e-9 to
// cancellation; callers switch to an integral representation or an
// asymptotic form
struct CancellationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// thrown by ti_asymptotic when a gamma factor of the expansion degenerates
struct IntegerParameterError : std::domain_error {
  using std::domain_error::domain_error;
};

// log-moment constants of a law: m[k] for k = 1..order_cap (m[0] unused)
// and the cumulative variant M[n] = m[n] + m[1] * M[n-1], M[0] = 0.
struct IntegralConstants {
  HypergeometricLaw law;
  std::vector<double> m;
  std::vector<double> M;
  int order_cap = 0;
};
IntegralConstants integration_constants(const HypergeometricLaw& law,
                                        int order_cap);

// power-series part of the n-fold iterated tail integral:
//   tin(n, x) = -sum_{k>=1} d_k (-x^2)^k / k^n,   d_k = (a)_k / ((b)_k k!).
// Long-double compensated summation; throws CancellationError when the
// rounding estimate exceeds ~1e-9 of the result (near x ~ 15 for laws with
// q = p + 1).
double tin_iter(const HypergeometricLaw& law, int n, double x);

// n-fold iterated tail integral of pFq(a; b; -t)/t assembled from the
// polynomial-in-log part plus the series part:
//   ti(n, x) = 2^n sum_{j=0..n} p_j (-ln x)^{n-j}/(n-j)!  +  (-1)^{n+1} tin(n, x)
// with sum_j p_j t^j = exp(sum_k m_k t^k).
double ti_iter(const HypergeometricLaw& law, int n, double x,
               const IntegralConstants& c);

struct AsymptoticResult {
  double value = 0.0;
  double bound = 0.0;   // first omitted algebraic term + oscillatory envelope
  int terms_used = 0;
};
// large-x algebraic expansion of ti(1, x), at most kmax terms per branch
// (auto-truncated at the smallest term).  Requires q = p + 1; degenerate
// parameter differences raise IntegerParameterError.
AsymptoticResult ti_asymptotic(const HypergeometricLaw& law, double x,
                               int kmax);

enum class AsymKind { CJI, CJI2, CJI3, CII, JI2 };
// closed asymptotic forms for the cos*J0 family; CII is returned log-scaled
double asympt_forms(AsymKind kind, double x);

// iterated cos*J0 tail integrals CJi, CJi2, CJi3 (n = 1..3); dispatches
// between the power series (x <= 14) and integral representations (n = 1, 2);
// n = 3 throws CancellationError beyond the series range.
double cji_family(int n, double x);
double cji_series(int n, double x);   // series + constants form, x <= ~14
double cji_ci_repr(double x);         // n = 1 via the averaged-Ci representation
double cji2_ci_repr(double x);        // n = 2 via the iterated representation

// complementary integral CJin(x) = int_0^x (1 - cos xi J0 xi)/xi dxi,
// valid for all x > 0 (series below 14, asymptotic complement above)
double cjin(double x);

// growing counterparts: ciin(n, s) = sum_k d_k s^{2k} / (2k)^n; overflow
// guarded (throws std::overflow_error once e^{2s} leaves double range)
double ciin(const HypergeometricLaw& law, int n, double s);
double cii_family(int n, double s);   // example law

const HypergeometricLaw& example_law();

// oscillatory tail primitives (z > 0, exact recursions seeded by Si/Ci):
//   tail_sin(m, z) = int_z^inf sin u / u^m du,    tail_cos likewise
double tail_sin(int m, double z);
double tail_cos(int m, double z);
// log-weighted variants int_z^inf ln u {cos,sin} u / u^m du; semiconvergent
// recursion, accurate to ~ (0.9 z)! ln z / z^{0.9 z} (use z >= 8)
double tail_log_cos(int m, double z);
double tail_log_sin(int m, double z);
// R(y) = int_y^inf Ci(u)/u du, all y > 0
double ci_over_u_tail(double y);

}  // namespace shotnoise
