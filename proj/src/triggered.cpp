#include "shotnoise/triggered.hpp"

#include "shotnoise/hyperint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shotnoise {

namespace {

constexpr double kGlX[4] = {0.18343464249564980494, 0.52553240991632898582,
                            0.79666647741362673959, 0.96028985649753623168};
constexpr double kGlW[4] = {0.36268378337836198297, 0.31370664587788728734,
                            0.22238103445337447054, 0.10122853629037625915};

double g_example(double s) { return std::cos(s) * bessel_j(0, s); }

bool is_example(const HypergeometricLaw& law) {
  const auto& e = example_law();
  return law.a == e.a && law.b == e.b;
}

double series_h(const std::vector<double>& c, double s) {
  double s2 = s * s, p = 1.0, sum = 0.0;
  for (size_t j = 0; j < c.size(); j += 2) {
    sum += c[j] * p;
    p *= s2;
  }
  return sum;
}

double series_dh(const std::vector<double>& c, double s) {
  double s2 = s * s, p = 1.0, sum = 0.0;
  for (size_t j = 2; j < c.size(); j += 2) {
    sum += (double)j * c[j] * s * p;
    p *= s2;
  }
  return sum;
}

// the recurrence only ever needs K_{2k}/(2k)! = (a)_k/((b)_k k!); computing
// that ratio directly avoids the (2k)! overflow past k ~ 54, which matters
// for the extended coefficient set
std::vector<double> extended_coefficients(const HypergeometricLaw& law,
                                          int N) {
  std::vector<double> kbar((size_t)N + 1, 0.0);
  kbar[0] = 1.0;
  for (int k = 1; k <= N; ++k) {
    double num = 1.0, den = 1.0;
    for (double ai : law.a) num *= pochhammer(ai, k);
    for (double bj : law.b) den *= pochhammer(bj, k);
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    kbar[(size_t)k] = num / (den * kfact);
  }
  std::vector<double> c(2 * (size_t)N + 1, 0.0);
  c[0] = 1.0;
  for (int n = 1; n <= N; ++n) {
    double sum = 0.0;
    double sign = (n % 2) ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      sum += sign * c[2 * (size_t)j] * kbar[(size_t)(n - j)];
      sign = -sign;
    }
    c[2 * (size_t)n] = sum / (4.0 * n * (n + 1.0));
  }
  return c;
}

}  // namespace

std::vector<double> amplitude_moments(const HypergeometricLaw& law, int nmax) {
  if (nmax < 1) throw std::invalid_argument("amplitude_moments: nmax >= 1");
  law.validate();
  std::vector<double> K(2 * nmax + 1, 0.0);
  K[0] = 1.0;
  for (int k = 1; k <= nmax; ++k) {
    double num = 1.0, den = 1.0;
    for (double ai : law.a) num *= pochhammer(ai, k);
    for (double bj : law.b) den *= pochhammer(bj, k);
    double fact = 1.0;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    K[2 * k] = fact * num / (den * kfact);
  }
  return K;
}

std::vector<double> series_coefficients(const std::vector<double>& K, int N) {
  if ((int)K.size() < 2 * N + 1)
    throw std::invalid_argument("series_coefficients: K too short");
  std::vector<double> c(2 * N + 1, 0.0);
  c[0] = 1.0;
  for (int n = 1; n <= N; ++n) {
    double sum = 0.0;
    double sign = (n % 2) ? -1.0 : 1.0;  // (-1)^{n-j} starting at j = 0
    for (int j = 0; j < n; ++j) {
      int d = n - j;
      double fact = 1.0;
      for (int i = 2; i <= 2 * d; ++i) fact *= i;
      sum += sign * c[2 * j] * K[2 * d] / fact;
      sign = -sign;
    }
    c[2 * n] = sum / (4.0 * n * (n + 1.0));
  }
  return c;
}

void matched_basis(double s, double& y1, double& y2, double& y1p, double& y2p) {
  double cji1 = asympt_forms(AsymKind::CJI, s);
  double cji2 = asympt_forms(AsymKind::CJI2, s);
  double cji3 = asympt_forms(AsymKind::CJI3, s);
  double lg = std::log(s) + kEulerGamma;
  y1 = 1.0 + cji2;
  y2 = lg * y1 + 2.0 * cji3;
  y1p = -cji1 / s;
  y2p = y1 / s + lg * y1p - 2.0 * cji2 / s;
}

std::pair<double, double> match_constants(const std::vector<double>& s,
                                          const std::vector<double>& Y,
                                          const std::vector<double>& Yp) {
  if (s.size() < 3 || s.size() != Y.size() || s.size() != Yp.size())
    throw std::invalid_argument("match_constants: need >= 3 sample points");
  std::vector<double> c1(s.size()), c2(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    double y1, y2, y1p, y2p;
    matched_basis(s[i], y1, y2, y1p, y2p);
    double det = y2 * y1p - y1 * y2p;
    double fro = y1 * y1 + y2 * y2 + y1p * y1p + y2p * y2p;
    if (!(std::abs(det) > 0.0) || fro / std::abs(det) > 1e8)
      throw IllConditioned("match_constants: basis system ill-conditioned");
    double C1 = (Y[i] * y1p - y1 * Yp[i]) / det;
    double D = (y2 * Yp[i] - Y[i] * y2p) / det;
    c1[i] = C1;
    c2[i] = C1 + D;
  }
  // per-point constants carry a (a + b ln s)/s defect; fit p0 + p1/s + p2 ln s/s
  auto extrapolate = [&](const std::vector<double>& v) {
    double A[3][3] = {};
    double rhs[3] = {};
    for (size_t i = 0; i < s.size(); ++i) {
      double phi[3] = {1.0, 1.0 / s[i], std::log(s[i]) / s[i]};
      for (int r = 0; r < 3; ++r) {
        rhs[r] += phi[r] * v[i];
        for (int q = 0; q < 3; ++q) A[r][q] += phi[r] * phi[q];
      }
    }
    // Gaussian elimination, 3x3
    for (int r = 0; r < 3; ++r) {
      int piv = r;
      for (int q = r + 1; q < 3; ++q)
        if (std::abs(A[q][r]) > std::abs(A[piv][r])) piv = q;
      std::swap(A[r], A[piv]);
      std::swap(rhs[r], rhs[piv]);
      for (int q = r + 1; q < 3; ++q) {
        double f = A[q][r] / A[r][r];
        for (int t = r; t < 3; ++t) A[q][t] -= f * A[r][t];
        rhs[q] -= f * rhs[r];
      }
    }
    double p[3];
    for (int r = 2; r >= 0; --r) {
      p[r] = rhs[r];
      for (int t = r + 1; t < 3; ++t) p[r] -= A[r][t] * p[t];
      p[r] /= A[r][r];
    }
    return p[0];
  };
  return {extrapolate(c1), extrapolate(c2)};
}

TriggeredModel make_triggered_model(const HypergeometricLaw& law, int N) {
  if (!is_example(law))
    throw std::invalid_argument(
        "make_triggered_model: matched asymptotic basis exists only for the "
        "cos*J0 law");
  if (N < 2) throw std::invalid_argument("make_triggered_model: N >= 2");
  TriggeredModel m;
  m.law = law;
  m.N = N;
  m.K = amplitude_moments(law, N + 1);
  m.c = series_coefficients(m.K, N);
  m.c_ext = extended_coefficients(law, 60);

  // outward RK4 of Y'' = -Y'/s + g Y/s^2, Y = s h2, from the series at s = 1
  m.table_lo = 1.0;
  m.table_hi = 2000.0;
  m.table_step = 0.005;
  size_t steps = (size_t)std::llround((m.table_hi - m.table_lo) / m.table_step);
  m.Y.resize(steps + 1);
  m.Yp.resize(steps + 1);
  double s = m.table_lo;
  double y = s * series_h(m.c_ext, s);
  double yp = series_h(m.c_ext, s) + s * series_dh(m.c_ext, s);
  m.Y[0] = y;
  m.Yp[0] = yp;
  auto acc = [](double ss, double yy, double vv) {
    return -vv / ss + g_example(ss) * yy / (ss * ss);
  };
  double h = m.table_step;
  for (size_t i = 1; i <= steps; ++i) {
    double k1y = yp, k1v = acc(s, y, yp);
    double k2y = yp + 0.5 * h * k1v,
           k2v = acc(s + 0.5 * h, y + 0.5 * h * k1y, yp + 0.5 * h * k1v);
    double k3y = yp + 0.5 * h * k2v,
           k3v = acc(s + 0.5 * h, y + 0.5 * h * k2y, yp + 0.5 * h * k2v);
    double k4y = yp + h * k3v, k4v = acc(s + h, y + h * k3y, yp + h * k3v);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    yp += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    s = m.table_lo + (double)i * h;
    m.Y[i] = y;
    m.Yp[i] = yp;
  }

  // matched constants from log-spaced points in the window
  std::vector<double> ms, mY, mYp;
  int npts = 48;
  for (int i = 0; i < npts; ++i) {
    double target = m.match_lo * std::pow(m.match_hi / m.match_lo,
                                          (double)i / (npts - 1));
    size_t idx = (size_t)std::llround((target - m.table_lo) / m.table_step);
    idx = std::min(idx, steps);
    ms.push_back(m.table_lo + (double)idx * m.table_step);
    mY.push_back(m.Y[idx]);
    mYp.push_back(m.Yp[idx]);
  }
  auto [C1, C2] = match_constants(ms, mY, mYp);
  m.C1 = C1;
  m.C2 = C2;
  return m;
}

double h2(const TriggeredModel& m, double s) {
  s = std::abs(s);
  if (s == 0.0) return 1.0;
  if (s < m.table_lo) return series_h(m.c_ext, s);
  if (s <= m.table_hi) {
    double u = (s - m.table_lo) / m.table_step;
    size_t i = std::min((size_t)u, m.Y.size() - 2);
    double w = u - (double)i;
    return (m.Y[i] * (1.0 - w) + m.Y[i + 1] * w) / s;
  }
  double y1, y2, y1p, y2p;
  matched_basis(s, y1, y2, y1p, y2p);
  return (m.C1 * y2 + (m.C2 - m.C1) * y1) / s;
}

double ode_residual(const TriggeredModel& m, double s) {
  // orders through 2N cancel exactly; first surviving order is 2N+2
  int n = m.N + 1;
  double sum = 0.0;
  double sign = (n % 2) ? -1.0 : 1.0;
  for (int j = 0; j < n; ++j) {
    int d = n - j;
    double fact = 1.0;
    for (int i = 2; i <= 2 * d; ++i) fact *= i;
    sum += sign * m.c[2 * j] * m.K[2 * d] / fact;
    sign = -sign;
  }
  return -sum * std::pow(s, 2 * n);
}

namespace {

double quad_cos(const TriggeredModel& m, double x, double T,
                bool sine_over_t) {
  // composite GL8, panel width 0.01
  double w = 0.01;
  size_t n = (size_t)std::ceil(T / w);
  double hw = T / (double)n;
  double sum = 0.0;
  for (size_t p = 0; p < n; ++p) {
    double c = ((double)p + 0.5) * hw;
    for (int i = 0; i < 4; ++i) {
      for (double t : {c - 0.5 * hw * kGlX[i], c + 0.5 * hw * kGlX[i]}) {
        double f = sine_over_t ? std::sin(x * t) * h2(m, t) / t
                               : std::cos(x * t) * h2(m, t);
        sum += 0.5 * hw * kGlW[i] * f;
      }
    }
  }
  return sum;
}

}  // namespace

double triggered_density(const TriggeredModel& m, double x, bool* tail_flag) {
  double ax = std::abs(x);
  if (ax * 0.01 > 0.3)
    throw std::domain_error("triggered_density: |x| too large for the t grid");
  // integrate over the whole table: the analytic log tail misses the
  // oscillatory O(t^{-3/2}) corrections of h2, which converge slowly near the
  // |x| = 2 resonance, so a short cutoff would distort the decay region
  double T = m.table_hi;
  double A = quad_cos(m, ax, T, false);
  double tail = 0.0;
  double z = ax * T;
  if (z >= 8.0) {
    tail = m.C1 * tail_log_cos(1, z) +
           (m.C1 * (kEulerGamma - std::log(ax)) + m.C2 - m.C1) *
               tail_cos(1, z);
  }
  double f = (A + tail) / kPi;
  if (tail_flag) *tail_flag = std::abs(tail) > 0.1 * std::abs(A + tail);
  return f;
}

double triggered_cdf(const TriggeredModel& m, double x) {
  if (x == 0.0) return 0.5;
  double ax = std::abs(x);
  if (ax * 0.01 > 0.3) return x > 0 ? 1.0 : 0.0;
  double T = m.table_hi;
  double S = quad_cos(m, ax, T, true);
  double z = ax * T;
  if (z >= 8.0) {
    S += ax * (m.C1 * tail_log_sin(2, z) +
               (m.C1 * (kEulerGamma - std::log(ax)) + m.C2 - m.C1) *
                   tail_sin(2, z));
  }
  double F = 0.5 + (x > 0 ? S : -S) / kPi;
  return std::clamp(F, 0.0, 1.0);
}

DensityGrid triggered_density_grid(const TriggeredModel& m,
                                   const std::vector<double>& xs) {
  DensityGrid g;
  g.method = "triggered-fourier";
  g.x2 = 100.0;
  g.step = 0.01;
  g.x = xs;
  g.f.resize(xs.size());
  bool flagged = false;
  for (size_t i = 0; i < xs.size(); ++i) {
    bool fl = false;
    g.f[i] = triggered_density(m, xs[i], &fl);
    flagged = flagged || fl;
  }
  // the density grows like -ln|x| near zero, so the trapezoid rule
  // overshoots in every cell close to the origin, not just the central one;
  // rewrite the node values in a small window so each cell reproduces the
  // cdf mass exactly, walking inward from the (accurate) window edges
  for (size_t i = 1; i + 1 < xs.size(); ++i) {
    if (std::abs(xs[i]) > 1e-9) continue;
    size_t w = std::min<size_t>(4, std::min(i, xs.size() - 1 - i));
    for (size_t k = w; k >= 2; --k) {
      size_t r = i + k;
      g.f[r - 1] = 2.0 *
                       (triggered_cdf(m, xs[r]) - triggered_cdf(m, xs[r - 1])) /
                       (xs[r] - xs[r - 1]) -
                   g.f[r];
      size_t l = i - k;
      g.f[l + 1] = 2.0 *
                       (triggered_cdf(m, xs[l + 1]) - triggered_cdf(m, xs[l])) /
                       (xs[l + 1] - xs[l]) -
                   g.f[l];
    }
    double dl = xs[i] - xs[i - 1], dr = xs[i + 1] - xs[i];
    double mass = triggered_cdf(m, xs[i + 1]) - triggered_cdf(m, xs[i - 1]);
    g.f[i] = (mass - 0.5 * dl * g.f[i - 1] - 0.5 * dr * g.f[i + 1]) * 2.0 /
             (dl + dr);
  }
  g.err_estimate = flagged ? 1e-2 : 1e-3;
  return g;
}

TriggeredCdfTable::TriggeredCdfTable(const TriggeredModel& m, double lo,
                                     double hi, int n)
    : lo_(lo), hi_(hi) {
  if (!(hi > lo) || n < 3)
    throw std::invalid_argument("TriggeredCdfTable: need hi > lo and n >= 3");
  step_ = (hi - lo) / (n - 1);
  F_.resize((size_t)n);
  for (int i = 0; i < n; ++i)
    F_[(size_t)i] = triggered_cdf(m, lo + step_ * (double)i);
  patch_ = 2.0 * step_;
  // h2 ~ C1 ln t / t makes f diverge like (ln x)^2; fit
  // (F(x) - 1/2)/x = b0 + b1 ln x + b2 ln^2 x through three nearby points
  double xs[3] = {patch_, 0.5 * patch_, 0.25 * patch_};
  double A[3][3], rhs[3];
  for (int i = 0; i < 3; ++i) {
    double lg = std::log(xs[i]);
    A[i][0] = 1.0;
    A[i][1] = lg;
    A[i][2] = lg * lg;
    rhs[i] = (triggered_cdf(m, xs[i]) - 0.5) / xs[i];
  }
  for (int r = 0; r < 3; ++r) {
    int piv = r;
    for (int q = r + 1; q < 3; ++q)
      if (std::abs(A[q][r]) > std::abs(A[piv][r])) piv = q;
    std::swap(A[r], A[piv]);
    std::swap(rhs[r], rhs[piv]);
    for (int q = r + 1; q < 3; ++q) {
      double fct = A[q][r] / A[r][r];
      for (int t = r; t < 3; ++t) A[q][t] -= fct * A[r][t];
      rhs[q] -= fct * rhs[r];
    }
  }
  for (int r = 2; r >= 0; --r) {
    b_[r] = rhs[r];
    for (int t = r + 1; t < 3; ++t) b_[r] -= A[r][t] * b_[t];
    b_[r] /= A[r][r];
  }
}

double TriggeredCdfTable::operator()(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  double ax = std::abs(x);
  if (ax < patch_) {
    if (ax == 0.0) return 0.5;
    double lg = std::log(ax);
    double half = ax * (b_[0] + b_[1] * lg + b_[2] * lg * lg);
    return x > 0 ? 0.5 + half : 0.5 - half;
  }
  double u = (x - lo_) / step_;
  size_t i = std::min((size_t)u, F_.size() - 2);
  double w = u - (double)i;
  return F_[i] * (1.0 - w) + F_[i + 1] * w;
}

}  // namespace shotnoise
