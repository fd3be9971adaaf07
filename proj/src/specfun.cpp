#include "shotnoise/specfun.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>

namespace shotnoise {

void HypergeometricLaw::validate() const {
  for (double v : a)
    if (!(v > 0.0)) throw std::invalid_argument("law: a entries must be > 0");
  for (double v : b)
    if (!(v > 0.0)) throw std::invalid_argument("law: b entries must be > 0");
  if (a.size() > b.size())
    throw std::invalid_argument("law: need p <= q for everywhere-convergent series");
}

double pochhammer(double x, int k) {
  if (k == 0) return 1.0;
  if (k > 0) {
    if (k <= 64) {
      double p = 1.0;
      for (int j = 0; j < k; ++j) {
        double f = x + j;
        if (f == 0.0) throw PoleError("pochhammer: gamma pole at x+" + std::to_string(j));
        p *= f;
      }
      return p;
    }
    if (x <= 0.0 && x == std::floor(x)) throw PoleError("pochhammer: gamma pole");
    if (x > 0.0) return std::exp(std::lgamma(x + k) - std::lgamma(x));
    // negative non-integer x with large k: peel off factors until positive
    double p = 1.0;
    double y = x;
    int rem = k;
    while (y < 1.0 && rem > 0) { p *= y; y += 1.0; --rem; }
    return p * std::exp(std::lgamma(y + rem) - std::lgamma(y));
  }
  // k < 0:  (x)_{-m} = 1/((x-m)(x-m+1)...(x-1))
  int m = -k;
  if (m > 64) {
    if (x - m <= 0.0 && (x == std::floor(x)))
      throw PoleError("pochhammer: gamma pole");
    return std::exp(std::lgamma(x - m) - std::lgamma(x));
  }
  double p = 1.0;
  for (int j = 1; j <= m; ++j) {
    double f = x - j;
    if (f == 0.0) throw PoleError("pochhammer: gamma pole at x-" + std::to_string(j));
    p *= f;
  }
  return 1.0 / p;
}

// ---------------------------------------------------------------------------
// polygamma: shift the argument up to >= 10, then the Bernoulli asymptotic
// series (<= 10 terms reach ~1e-14 relative there).

static const double kBernoulli2n[] = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
    -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330};

double polygamma(int k, double x) {
  if (!(x > 0.0)) throw std::domain_error("polygamma: need x > 0");
  if (k < 0) throw std::domain_error("polygamma: need k >= 0");
  double shift = 0.0;
  double kfac = 1.0;
  for (int j = 2; j <= k; ++j) kfac *= j;
  double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
  while (x < 10.0) {
    if (k == 0)
      shift -= 1.0 / x;
    else
      shift -= sign * kfac / std::pow(x, k + 1);
    x += 1.0;
  }
  double y;
  if (k == 0) {
    y = std::log(x) - 0.5 / x;
    double x2 = 1.0 / (x * x), p = x2;
    for (int n = 1; n <= 10; ++n) {
      y -= kBernoulli2n[n - 1] / (2 * n) * p;
      p *= x2;
    }
  } else {
    // psi^(k)(x) = (-1)^(k-1) [ (k-1)!/x^k + k!/(2 x^(k+1))
    //              + sum_n B_2n (2n+k-1)!/((2n)! x^(2n+k)) ]
    double km1fac = kfac / k;
    double s = km1fac / std::pow(x, k) + kfac / (2.0 * std::pow(x, k + 1));
    double x2 = 1.0 / (x * x);
    double p = std::pow(x, -(k + 2.0));  // x^-(2n+k), starting at n = 1
    for (int n = 1; n <= 10; ++n) {
      // (2n+k-1)!/(2n)! = product_{j=2n+1}^{2n+k-1} j
      double fac_ratio = 1.0;
      for (int j = 2 * n + 1; j <= 2 * n + k - 1; ++j) fac_ratio *= j;
      s += kBernoulli2n[n - 1] * fac_ratio * p;
      p *= x2;
    }
    y = -sign * s;  // (-1)^(k-1)
  }
  return y + shift;
}

// ---------------------------------------------------------------------------

PfqResult pfq_full(const HypergeometricLaw& law, double z, int term_cap) {
  law.validate();
  PfqResult r;
  // long-double recurrence + Kahan: the alternating series cancels ~e^{2x}
  // at z = -x^2, so double arithmetic alone leaves ~1e-9 absolute there
  long double term = 1.0L, sum = 1.0L, comp = 0.0L;
  long double max_abs = 1.0L;
  int below = 0;
  for (int n = 0; n < term_cap; ++n) {
    long double num = 1.0L, den = 1.0L;
    for (double ai : law.a) num *= ai + n;
    for (double bj : law.b) den *= bj + n;
    term *= num / den * z / (n + 1);
    long double yk = term - comp;
    long double t = sum + yk;
    comp = (t - sum) - yk;
    sum = t;
    if (fabsl(term) > max_abs) max_abs = fabsl(term);
    if (fabsl(sum) > max_abs) max_abs = fabsl(sum);
    if (fabsl(term) < 1e-18L * fabsl(sum)) {
      if (++below >= 3) {
        r.value = (double)sum;
        r.err_estimate = (double)max_abs * 1e-16;
        r.cancellation_flag = r.err_estimate > 1e-8 * std::abs(r.value);
        return r;
      }
    } else {
      below = 0;
    }
  }
  throw NonConvergence("pfq: term cap exceeded");
}

double pfq(const HypergeometricLaw& law, double z) { return pfq_full(law, z).value; }

// ---------------------------------------------------------------------------
// Bessel functions: long-double power series for |x| <= 18, Hankel / uniform
// asymptotic series beyond (truncated at the smallest term).

static void hankel_pq(int nu, double x, double* P, double* Q) {
  // a_m = prod_{j=1..m} (4 nu^2 - (2j-1)^2) / (m! 8^m); series in 1/x.
  double fournu2 = 4.0 * nu * nu;
  double am = 1.0;
  double p = 1.0, q = 0.0;
  double prev = 1.0;
  for (int m = 1; m <= 24; ++m) {
    am *= (fournu2 - (2.0 * m - 1.0) * (2.0 * m - 1.0)) / (8.0 * m);
    double t = am / std::pow(x, m);
    if (std::abs(t) > prev) break;  // semiconvergent: stop at smallest term
    prev = std::abs(t);
    int r = m % 4;
    if (r == 0) p += t;
    else if (r == 1) q += t;
    else if (r == 2) p -= t;
    else q -= t;
  }
  *P = p;
  *Q = q;
}

double bessel_j(int order, double x) {
  if (order != 0 && order != 1) throw std::domain_error("bessel_j: order 0 or 1");
  double sign = 1.0;
  if (x < 0.0) {
    x = -x;
    if (order == 1) sign = -1.0;
  }
  if (x <= 18.0) {
    long double u = (long double)x / 2.0L;
    long double u2 = u * u;
    long double term = (order == 0) ? 1.0L : u;
    long double sum = term;
    for (int k = 1; k <= 60; ++k) {
      term *= -u2 / ((long double)k * (k + order));
      sum += term;
      if (std::abs((double)term) < 1e-20 * std::abs((double)sum) && k > 4) break;
    }
    return sign * (double)sum;
  }
  double P, Q;
  hankel_pq(order, x, &P, &Q);
  double chi = x - order * kPi / 2 - kPi / 4;
  return sign * std::sqrt(2.0 / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

static double bessel_i(int order, double x) {
  double sign = 1.0;
  if (x < 0.0) {
    x = -x;
    if (order == 1) sign = -1.0;
  }
  if (x <= 18.0) {
    long double u = (long double)x / 2.0L;
    long double u2 = u * u;
    long double term = (order == 0) ? 1.0L : u;
    long double sum = term;
    for (int k = 1; k <= 80; ++k) {
      term *= u2 / ((long double)k * (k + order));
      sum += term;
      if ((double)term < 1e-18 * (double)sum) break;
    }
    return sign * (double)sum;
  }
  if (x > 700.0) throw std::overflow_error("bessel_i: overflow guard (use log-scaled caller)");
  double fournu2 = 4.0 * order * order;
  double am = 1.0, s = 1.0, prev = 1.0;
  for (int m = 1; m <= 24; ++m) {
    am *= (fournu2 - (2.0 * m - 1.0) * (2.0 * m - 1.0)) / (8.0 * m);
    double t = ((m % 2) ? -1.0 : 1.0) * am / std::pow(x, m);
    if (std::abs(t) > prev) break;
    prev = std::abs(t);
    s += t;
  }
  return sign * std::exp(x) / std::sqrt(2.0 * kPi * x) * s;
}

double bessel_i0(double x) { return bessel_i(0, x); }
double bessel_i1(double x) { return bessel_i(1, x); }
double cosh_fn(double x) { return std::cosh(x); }

// ---------------------------------------------------------------------------
// Ci / Si: long-double power series for x <= 12, else the continued fraction
// for E1(ix) (modified Lentz), which yields both at machine precision.

static std::complex<double> exp1_cf(std::complex<double> z) {
  // E1(z) = e^-z / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...)))) , Re z >= 0
  const double tiny = 1e-300;
  std::complex<double> b = z + 1.0;
  std::complex<double> c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 200; ++i) {
    double a = -(double)i * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

static void cisi(double x, double* ci, double* si) {
  if (!(x > 0.0)) throw std::domain_error("cosine_integral: need x > 0");
  if (x <= 12.0) {
    long double x2 = (long double)x * x;
    // Ci = gamma + ln x + sum_k (-1)^k x^(2k) / ((2k)(2k)!)
    long double p = 1.0L, csum = 0.0L;
    for (int k = 1; k <= 40; ++k) {
      p *= -x2 / ((2.0L * k - 1.0L) * (2.0L * k));  // p = (-1)^k x^(2k)/(2k)!
      long double t = p / (2.0L * k);
      csum += t;
      if (std::abs((double)t) < 1e-20 && k > 3) break;
    }
    *ci = kEulerGamma + std::log(x) + (double)csum;
    // Si = sum_k (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
    long double u = x, ssum = x;
    for (int k = 1; k <= 40; ++k) {
      u *= -x2 / ((2.0L * k) * (2.0L * k + 1.0L));  // u = (-1)^k x^(2k+1)/(2k+1)!
      ssum += u / (2.0L * k + 1.0L);
      if (std::abs((double)u) < 1e-20 && k > 3) break;
    }
    *si = (double)ssum;
    return;
  }
  std::complex<double> e1 = exp1_cf(std::complex<double>(0.0, x));
  *ci = -e1.real();
  *si = kPi / 2 + e1.imag();
}

double cosine_integral(double x) {
  double c, s;
  cisi(x, &c, &s);
  return c;
}
double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  if (x < 0.0) return -sine_integral(-x);
  double c, s;
  cisi(x, &c, &s);
  return s;
}

// ---------------------------------------------------------------------------

double clausen2(double theta) {
  // reduce mod 2*pi into (-pi, pi]; Cl2 is odd and 2*pi-periodic
  double t = std::fmod(theta, 2.0 * kPi);
  if (t > kPi) t -= 2.0 * kPi;
  if (t < -kPi) t += 2.0 * kPi;
  double sign = 1.0;
  if (t < 0.0) { t = -t; sign = -1.0; }
  if (t == 0.0) return 0.0;
  // Cl2(t) = t - t ln t + sum_n zeta(2n) t^(2n+1) / (n (2n+1) (2 pi)^(2n))
  double s = t - t * std::log(t);
  double r = t / (2.0 * kPi);
  double r2 = r * r, p = r2;
  for (int n = 1; n <= 60; ++n) {
    double zt = std::riemann_zeta(2.0 * n);
    double term = zt * p * t / (n * (2.0 * n + 1.0));
    s += term;
    if (term < 1e-17 * std::abs(s) && n > 2) break;
    p *= r2;
  }
  return sign * s;
}

double elliptic_k(double m) {
  if (m < 0.0 || m > 1.0) throw std::domain_error("elliptic_k: need m in [0,1)");
  if (m == 1.0) throw std::domain_error("elliptic_k: divergent at m = 1");
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-16 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2.0 * a);
}

}  // namespace shotnoise
