#include "shotnoise/hyperint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace shotnoise {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kM1 = kLn2 - kEulerGamma;  // ln 2 - gamma

bool near_integer(double d) { return std::abs(d - std::round(d)) < 1e-9; }

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGlX[4] = {0.18343464249564980494, 0.52553240991632898582,
                            0.79666647741362673959, 0.96028985649753623168};
constexpr double kGlW[4] = {0.36268378337836198297, 0.31370664587788728734,
                            0.22238103445337447054, 0.10122853629037625915};

template <class F>
double gl_composite(const F& f, double lo, double hi, int panels) {
  double h = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double c = lo + (p + 0.5) * h;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      double d = 0.5 * h * kGlX[i];
      acc += kGlW[i] * (f(c + d) + f(c - d));
    }
    total += 0.5 * h * acc;
  }
  return total;
}

// Cin(y) = gamma + ln y - Ci(y), entire
double cin_fn(double y) {
  if (y < 2.0) {
    long double t = y, y2 = t * t, c = 1.0L, s = 0.0L;
    for (int k = 1; k <= 24; ++k) {
      c *= -y2 / ((2.0L * k - 1) * (2.0L * k));
      long double term = -c / (2.0L * k);
      s += term;
      if (std::abs((double)term) < 1e-20) break;
    }
    return (double)s;
  }
  return kEulerGamma + std::log(y) - cosine_integral(y);
}

// int_0^y Cin(u)/u du = sum_{k>=1} (-1)^{k+1} y^{2k} / ((2k)^2 (2k)!)
double cin_over_u_int(double y) {
  long double y2 = (long double)y * y, c = 1.0L, s = 0.0L;
  for (int k = 1; k <= 200; ++k) {
    c *= -y2 / ((2.0L * k - 1) * (2.0L * k));
    long double term = -c / (4.0L * k * k);
    s += term;
    if (k > 4 && std::abs((double)term) < 1e-22 * (1.0 + std::abs((double)s)))
      break;
  }
  return (double)s;
}

struct LogTails {
  double icos = 0.0;  // int_z^inf ln u cos u / u^m du
  double isin = 0.0;
};

void tails_sc(double z, int M, std::vector<double>& S, std::vector<double>& C) {
  S.assign(M + 1, 0.0);
  C.assign(M + 1, 0.0);
  S[1] = kPi / 2 - sine_integral(z);
  C[1] = -cosine_integral(z);
  double sz = std::sin(z), cz = std::cos(z), zm = 1.0 / z;
  for (int m = 1; m < M; ++m) {
    S[m + 1] = (C[m] + sz * zm) / m;
    C[m + 1] = (cz * zm - S[m]) / m;
    zm /= z;
  }
}

LogTails log_tails(int m, double z) {
  if (z <= 2.0) throw std::domain_error("log_tails: z too small");
  int depth = std::clamp((int)(0.9 * z) - m, 4, 26);
  int M = m + depth;
  std::vector<double> S, C;
  tails_sc(z, M + 1, S, C);
  double lz = std::log(z), sz = std::sin(z), cz = std::cos(z);
  double icos = 0.0, isin = 0.0;  // start from the truncated level M
  for (int j = M - 1; j >= m; --j) {
    double zmj = std::pow(z, -j);
    double nicos = -lz * sz * zmj - S[j + 1] + j * isin;
    double nisin = lz * cz * zmj + C[j + 1] - j * icos;
    icos = nicos;
    isin = nisin;
  }
  return {icos, isin};
}

}  // namespace

const HypergeometricLaw& example_law() {
  static const HypergeometricLaw law{{0.25, 0.75}, {0.5, 0.5, 1.0}};
  return law;
}

IntegralConstants integration_constants(const HypergeometricLaw& law,
                                        int order_cap) {
  law.validate();
  if (order_cap < 1) throw std::invalid_argument("order_cap must be >= 1");
  IntegralConstants c;
  c.law = law;
  c.order_cap = order_cap;
  c.m.assign(order_cap + 1, 0.0);
  c.M.assign(order_cap + 1, 0.0);
  double kfac = 1.0, two_k = 1.0;
  for (int k = 1; k <= order_cap; ++k) {
    kfac *= k;
    two_k *= 2.0;
    double s = polygamma(k - 1, 1.0);
    double diff = 0.0;
    for (double ai : law.a) diff += polygamma(k - 1, ai);
    for (double bj : law.b) diff -= polygamma(k - 1, bj);
    if (k % 2 == 0)
      s += diff;
    else
      s -= diff;
    c.m[k] = s / (two_k * kfac);
    c.M[k] = c.m[k] + c.m[1] * c.M[k - 1];
  }
  return c;
}

double tin_iter(const HypergeometricLaw& law, int n, double x) {
  law.validate();
  if (n < 1) throw std::invalid_argument("tin_iter: n must be >= 1");
  if (x == 0.0) return 0.0;
  x = std::abs(x);
  long double z = -(long double)x * x;
  long double term = 1.0L, sum = 0.0L, comp = 0.0L, max_term = 0.0L;
  int k = 0;
  for (;;) {
    ++k;
    if (k > 10000) throw NonConvergence("tin_iter: series did not converge");
    long double r = z / k;
    for (double ai : law.a) r *= (long double)ai + (k - 1);
    for (double bj : law.b) r /= (long double)bj + (k - 1);
    term *= r;
    long double kn = 1.0L;
    for (int j = 0; j < n; ++j) kn *= k;
    long double t = -term / kn;
    max_term = std::max(max_term, std::abs(t));
    // Kahan step
    long double y = t - comp;
    long double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    if (k > (int)x && std::abs(t) < 1e-19L * std::max(std::abs(sum), 1e-300L))
      break;
  }
  long double est = max_term * 1.1e-19L * std::sqrt((long double)k);
  if (est > 1e-9L * std::max(std::abs(sum), 1e-300L))
    throw CancellationError("tin_iter: series cancellation beyond 1e-9");
  return (double)sum;
}

double ti_iter(const HypergeometricLaw& law, int n, double x,
               const IntegralConstants& c) {
  if (n < 1 || n > c.order_cap)
    throw std::invalid_argument("ti_iter: need 1 <= n <= order_cap");
  if (x <= 0.0) throw std::domain_error("ti_iter: x must be positive");
  // p_j with sum_j p_j t^j = exp(sum_k m_k t^k)
  std::vector<double> p(n + 1, 0.0);
  p[0] = 1.0;
  for (int j = 1; j <= n; ++j) {
    double s = 0.0;
    for (int k = 1; k <= j; ++k) s += k * c.m[k] * p[j - k];
    p[j] = s / j;
  }
  double L = -std::log(x);
  double poly = 0.0;
  for (int j = 0; j <= n; ++j) {
    double t = p[j];
    for (int i = 1; i <= n - j; ++i) t *= L / i;
    poly += t;
  }
  double scale = std::pow(2.0, n);
  double sgn = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n+1}
  return scale * poly + sgn * tin_iter(law, n, x);
}

AsymptoticResult ti_asymptotic(const HypergeometricLaw& law, double x,
                               int kmax) {
  law.validate();
  if (kmax < 0) throw std::invalid_argument("ti_asymptotic: kmax < 0");
  if (law.b.size() != law.a.size() + 1)
    throw std::invalid_argument("ti_asymptotic: requires q = p + 1");
  if (x <= 1.0) throw std::domain_error("ti_asymptotic: x too small");
  for (double bj : law.b)
    if (near_integer(bj) && bj - kmax <= 1e-9)
      throw IntegerParameterError("ti_asymptotic: integer b parameter");
  for (double ai : law.a)
    if (near_integer(ai) && ai - kmax <= 1e-9)
      throw IntegerParameterError("ti_asymptotic: integer a parameter");

  double pref = 1.0, suma = 0.0, sumb = 0.0;
  for (double bj : law.b) {
    pref *= std::tgamma(bj);
    sumb += bj;
  }
  for (double ai : law.a) {
    pref /= std::tgamma(ai);
    suma += ai;
  }
  double chi = 0.5 * (suma - sumb) + 0.25;
  double osc = 2.0 * pref * std::pow(x, 2.0 * chi - 1.0);

  AsymptoticResult out;
  double omitted = 0.0;
  size_t p = law.a.size();
  for (size_t i = 0; i < p; ++i) {
    double ai = law.a[i];
    for (size_t j = 0; j < p; ++j)
      if (j != i && near_integer(law.a[j] - ai))
        throw IntegerParameterError("ti_asymptotic: degenerate a difference");
    for (double bj : law.b) {
      double d = bj - ai;
      // gamma pole; a positive integer difference only truncates the branch
      if (near_integer(d) && d <= 1e-9)
        throw IntegerParameterError("ti_asymptotic: degenerate b - a");
    }
    double Di = std::tgamma(ai);
    for (size_t j = 0; j < p; ++j)
      if (j != i) Di *= std::tgamma(law.a[j] - ai);
    for (double bj : law.b) Di /= std::tgamma(bj - ai);

    double c = 1.0, prev = std::numeric_limits<double>::infinity();
    bool truncated = false;
    for (int m = 0; m < kmax; ++m) {
      double sgn = (m % 2) ? -1.0 : 1.0;
      double term = pref * Di * c * sgn * std::pow(x, -2.0 * (ai + m)) /
                    (ai + m);
      if (m > 0 && std::abs(term) >= prev) {
        omitted += std::abs(term);
        truncated = true;
        break;
      }
      out.value += term;
      prev = std::abs(term);
      ++out.terms_used;
      double num = (ai + m);
      for (double bj : law.b) num *= (1.0 + ai - bj + m);
      double den = m + 1.0;
      for (size_t j = 0; j < p; ++j)
        if (j != i) den *= (1.0 + ai - law.a[j] + m);
      c *= num / den;
    }
    if (!truncated) {
      double sgn = (kmax % 2) ? -1.0 : 1.0;
      omitted += std::abs(pref * Di * c * sgn *
                          std::pow(x, -2.0 * (ai + kmax)) / (ai + kmax));
    }
  }
  out.bound = omitted + osc;
  return out;
}

double asympt_forms(AsymKind kind, double x) {
  if (x < 5.0) throw std::domain_error("asympt_forms: valid for x >= 5");
  double sq = std::sqrt(kPi * x);
  double s2 = std::sqrt(2.0);
  double ph = 2.0 * x - kPi / 4;
  switch (kind) {
    case AsymKind::CJI:
      return (1.0 - 1.0 / (24 * x)) / sq - s2 * std::sin(ph) / (4 * x * sq);
    case AsymKind::CJI2:
      return (2.0 - 1.0 / (36 * x)) / sq -
             s2 * std::cos(ph) / (8 * x * x * sq);
    case AsymKind::CJI3:
      return (4.0 - 1.0 / (54 * x)) / sq +
             s2 * std::sin(ph) / (16 * x * x * x * sq);
    case AsymKind::CII:  // log of sqrt(2) e^{2x} (1 + 7/(8x)) / (8 x sqrt(pi x))
      return 2.0 * x + 0.5 * kLn2 - std::log(8.0 * x) - std::log(sq) +
             std::log1p(7.0 / (8.0 * x));
    case AsymKind::JI2: {
      // J0(x) sum_n (-1)^{n-1} 2^n n! 2^{n-1}(n-1)! (H_{n-1} + 1/(2n)) x^{-2n}
      // + J1(x) sum_n (-1)^{n-1} (2^n n!)^2 H_n x^{-2n-1}
      double s0 = 0.0, s1 = 0.0, H = 0.0;
      double A = 1.0, B = 0.5;  // A = 2^n n!, B = 2^{n-1}(n-1)! at n after update
      double prev = std::numeric_limits<double>::infinity();
      double x2 = x * x, xp = 1.0;
      for (int n = 1; n <= 8; ++n) {
        A *= 2.0 * n;
        B *= (n == 1) ? 2.0 : 2.0 * (n - 1);
        double Hm1 = H;
        H += 1.0 / n;
        xp *= x2;
        double sgn = (n % 2) ? -1.0 : 1.0;
        double t0 = sgn * A * B * (Hm1 + 0.5 / n) / xp;
        double t1 = sgn * A * A * H / (xp * x);
        if (std::abs(t1) >= prev) break;
        s0 += t0;
        s1 += t1;
        prev = std::abs(t1);
      }
      return bessel_j(0, x) * s0 + bessel_j(1, x) * s1;
    }
  }
  throw std::invalid_argument("asympt_forms: unknown kind");
}

double cji_series(int n, double x) {
  static const IntegralConstants ec = integration_constants(example_law(), 3);
  if (n < 1 || n > 3) throw std::invalid_argument("cji_series: n in 1..3");
  return ti_iter(example_law(), n, x, ec) / std::pow(2.0, n);
}

double cji_ci_repr(double x) {
  if (x <= 0.0) throw std::domain_error("cji_ci_repr: x must be positive");
  int panels = std::clamp((int)std::ceil(6.0 * x), 64, 20000);
  double avg = gl_composite(
      [x](double th) {
        double s = std::sin(0.5 * th);
        return cin_fn(2.0 * x * s * s);
      },
      0.0, kPi, panels);
  return -kEulerGamma - std::log(0.5 * x) + avg / kPi;
}

double ci_over_u_tail(double y) {
  if (y <= 0.0) throw std::domain_error("ci_over_u_tail: y must be positive");
  if (y >= 25.0)
    return -cosine_integral(y) * std::log(y) - log_tails(1, y).icos;
  const double q0 = kPi * kPi / 24 - 0.5 * kEulerGamma * kEulerGamma;
  double ly = std::log(y);
  return q0 + cin_over_u_int(y) - kEulerGamma * ly - 0.5 * ly * ly;
}

double cji2_ci_repr(double x) {
  if (x <= 0.0) throw std::domain_error("cji2_ci_repr: x must be positive");
  const double q0 = kPi * kPi / 24 - 0.5 * kEulerGamma * kEulerGamma;
  int panels = std::clamp((int)std::ceil(6.0 * x), 64, 20000);
  // smooth part G(y) = R(y) + gamma ln y + (ln y)^2 / 2
  double avg = gl_composite(
      [x, q0](double th) {
        double s = std::sin(0.5 * th);
        double y = 2.0 * x * s * s;
        if (y < 25.0) return q0 + cin_over_u_int(y);
        double ly = std::log(y);
        double R = -cosine_integral(y) * ly - log_tails(1, y).icos;
        return R + kEulerGamma * ly + 0.5 * ly * ly;
      },
      0.0, kPi, panels);
  double L = std::log(0.5 * x);
  return kEulerGamma * L + 0.5 * L * L + kPi * kPi / 6 - avg / kPi;
}

double cji_family(int n, double x) {
  if (n < 1 || n > 3) throw std::invalid_argument("cji_family: n in 1..3");
  if (x <= 0.0) throw std::domain_error("cji_family: x must be positive");
  if (x <= 14.0) return cji_series(n, x);
  if (n == 1) return cji_ci_repr(x);
  if (n == 2) return cji2_ci_repr(x);
  throw CancellationError(
      "cji_family: n = 3 beyond series range; use asympt_forms(CJI3, x)");
}

double cjin(double x) {
  if (x < 0.0) x = -x;
  if (x == 0.0) return 0.0;
  if (x <= 14.0) return 0.5 * tin_iter(example_law(), 1, x);
  double tail = (x <= 45.0) ? cji_ci_repr(x) : asympt_forms(AsymKind::CJI, x);
  return std::log(x) - kM1 + tail;
}

double ciin(const HypergeometricLaw& law, int n, double s) {
  law.validate();
  if (n < 1) throw std::invalid_argument("ciin: n must be >= 1");
  s = std::abs(s);
  if (s == 0.0) return 0.0;
  if (s > 350.0) throw std::overflow_error("ciin: argument too large");
  long double z = (long double)s * s;
  long double term = 1.0L, sum = 0.0L;
  for (int k = 1; k <= 10000; ++k) {
    long double r = z / k;
    for (double ai : law.a) r *= (long double)ai + (k - 1);
    for (double bj : law.b) r /= (long double)bj + (k - 1);
    term *= r;
    long double kn = 1.0L;
    for (int j = 0; j < n; ++j) kn *= 2.0L * k;
    sum += term / kn;
    if (k > (int)s && term / kn < 1e-18L * sum) return (double)sum;
  }
  throw NonConvergence("ciin: series did not converge");
}

double cii_family(int n, double s) { return ciin(example_law(), n, s); }

double tail_sin(int m, double z) {
  if (m < 1 || z <= 0.0) throw std::domain_error("tail_sin: bad arguments");
  std::vector<double> S, C;
  tails_sc(z, m, S, C);
  return S[m];
}

double tail_cos(int m, double z) {
  if (m < 1 || z <= 0.0) throw std::domain_error("tail_cos: bad arguments");
  std::vector<double> S, C;
  tails_sc(z, m, S, C);
  return C[m];
}

double tail_log_cos(int m, double z) { return log_tails(m, z).icos; }
double tail_log_sin(int m, double z) { return log_tails(m, z).isin; }

}  // namespace shotnoise
