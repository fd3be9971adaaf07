#include "doctest.h"
#include "shotnoise/hyperint.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_bessel.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_psi.h>

#include <cmath>
#include <functional>

using namespace shotnoise;

namespace {

// adaptive GSL quadrature of an arbitrary callable on [lo, hi]
double quad(const std::function<double(double)>& fn, double lo, double hi,
            double tol = 1e-12) {
  auto shim = [](double x, void* p) {
    return (*(const std::function<double(double)>*)p)(x);
  };
  gsl_function F{shim, (void*)&fn};
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(4000);
  double val = 0.0, err = 0.0;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  gsl_integration_qag(&F, lo, hi, tol, tol, 4000, GSL_INTEG_GAUSS61, w, &val,
                      &err);
  gsl_set_error_handler(old);
  gsl_integration_workspace_free(w);
  return val;
}

const HypergeometricLaw kL1{{0.5}, {0.75, 1.25}};
const HypergeometricLaw kL3{{1.0 / 3, 0.6}, {0.75, 1.25, 7.0 / 6}};
const HypergeometricLaw kSignLaw{{0.5}, {2.5, 17.0 / 6}};
const HypergeometricLaw kBesselLaw{{}, {1.0}};

}  // namespace

TEST_CASE("integration constants of the example law") {
  auto c = integration_constants(example_law(), 3);
  CHECK(c.m[1] == doctest::Approx(std::log(2.0) - kEulerGamma).epsilon(1e-12));
  CHECK(c.m[2] == doctest::Approx(kPi * kPi / 8).epsilon(1e-12));
  CHECK(c.m[3] == doctest::Approx(5.0 * kZeta3 / 3).epsilon(1e-12));
  // cumulative recurrence
  CHECK(c.M[1] == doctest::Approx(c.m[1]).epsilon(1e-14));
  CHECK(c.M[2] == doctest::Approx(c.m[2] + c.m[1] * c.M[1]).epsilon(1e-14));
  // polygamma assembly against GSL for a generic law
  auto d = integration_constants(kL1, 2);
  double m1 = 0.5 * (gsl_sf_psi(1.0) - gsl_sf_psi(0.5) + gsl_sf_psi(0.75) +
                     gsl_sf_psi(1.25));
  double m2 = (gsl_sf_psi_1(1.0) + gsl_sf_psi_1(0.5) - gsl_sf_psi_1(0.75) -
               gsl_sf_psi_1(1.25)) /
              8.0;
  CHECK(d.m[1] == doctest::Approx(m1).epsilon(1e-12));
  CHECK(d.m[2] == doctest::Approx(m2).epsilon(1e-12));
}

TEST_CASE("tin_iter small-x leading term and quadrature oracle") {
  // leading term of the n = 2 series for the example law is (3/4) x^2
  double x = 1e-3;
  CHECK(tin_iter(example_law(), 2, x) ==
        doctest::Approx(0.75 * x * x).epsilon(1e-5));
  // tin(1, x) = 2 int_0^x (1 - cos xi J0 xi)/xi dxi for the example law
  for (double xx : {2.0, 8.0}) {
    double q = 2.0 * quad(
                         [](double xi) {
                           if (xi < 1e-8) return 0.0;
                           double g = std::cos(xi) * gsl_sf_bessel_J0(xi);
                           return (1.0 - g) / xi;
                         },
                         0.0, xx);
    CHECK(tin_iter(example_law(), 1, xx) == doctest::Approx(q).epsilon(1e-9));
  }
  CHECK_THROWS_AS(tin_iter(example_law(), 1, 25.0), CancellationError);
}

TEST_CASE("ti_iter against frozen oracle and derivative chain") {
  auto c1 = integration_constants(kL1, 3);
  // frozen: exact series + psi-constant identity, 40-digit arithmetic
  CHECK(ti_iter(kL1, 1, 5.0, c1) ==
        doctest::Approx(0.087135789831808265).epsilon(1e-11));
  CHECK(ti_iter(kL1, 1, 10.0, c1) ==
        doctest::Approx(0.051772869926006082).epsilon(1e-10));
  // d/dx ti(1, x) = -2 pFq(-x^2)/x
  for (double x : {0.7, 3.0, 9.0}) {
    double h = 1e-4 * x;
    double fd = (ti_iter(kL1, 1, x + h, c1) - ti_iter(kL1, 1, x - h, c1)) /
                (2 * h);
    CHECK(fd == doctest::Approx(-2.0 * pfq(kL1, -x * x) / x).epsilon(1e-7));
    // d/dx ti(n, x) = -2 ti(n-1, x)/x
    for (int n : {2, 3}) {
      double fdn =
          (ti_iter(kL1, n, x + h, c1) - ti_iter(kL1, n, x - h, c1)) / (2 * h);
      CHECK(fdn ==
            doctest::Approx(-2.0 * ti_iter(kL1, n - 1, x, c1) / x).epsilon(1e-7));
    }
  }
}

TEST_CASE("ti_asymptotic against frozen oracles") {
  // a = (1/2), b = (3/4, 5/4): oscillatory branch decays like x^-2 and
  // dominates the error
  auto r20 = ti_asymptotic(kL1, 20.0, 4);
  CHECK(std::abs(r20.value - 0.024450098497966511) <= r20.bound);
  CHECK(std::abs(r20.value - 0.024450098497966511) < 8e-4);
  auto r50 = ti_asymptotic(kL1, 50.0, 4);
  CHECK(std::abs(r50.value - 0.01012003469465755) <= r50.bound);
  CHECK(std::abs(r50.value - 0.01012003469465755) < 2e-4);
  CHECK(r50.bound < r20.bound);
  // two algebraic branches
  auto r3 = ti_asymptotic(kL3, 30.0, 4);
  CHECK(std::abs(r3.value - 0.28349202609447934) <= r3.bound);
  CHECK(std::abs(r3.value - 0.28349202609447934) < 2e-5);
  // large b: oscillation decays fast, so the m >= 1 terms must carry the
  // correct alternating sign to reach the floor
  auto s10 = ti_asymptotic(kSignLaw, 10.0, 3);
  CHECK(std::abs(s10.value - 0.38422977892825634) < 1e-5);
  auto s15 = ti_asymptotic(kSignLaw, 15.0, 3);
  CHECK(std::abs(s15.value - 0.25647101156511294) < 2e-6);
  CHECK(s10.terms_used >= 2);
}

TEST_CASE("ti_asymptotic parameter gates") {
  // example law has b3 = 1: gated as soon as kmax >= 1
  CHECK_THROWS_AS(ti_asymptotic(example_law(), 30.0, 1), IntegerParameterError);
  auto r0 = ti_asymptotic(example_law(), 30.0, 0);
  CHECK(r0.value == 0.0);
  CHECK(r0.bound > 0.0);
  CHECK(r0.terms_used == 0);
  HypergeometricLaw shape{{0.5}, {0.75}};
  CHECK_THROWS_AS(ti_asymptotic(shape, 30.0, 2), std::invalid_argument);
  HypergeometricLaw degen{{0.25, 1.25}, {0.5, 0.75, 1.1}};
  CHECK_THROWS_AS(ti_asymptotic(degen, 30.0, 2), IntegerParameterError);
}

TEST_CASE("cji representations agree") {
  for (double x : {0.5, 2.0, 5.0, 10.0, 14.0}) {
    CHECK(cji_series(1, x) == doctest::Approx(cji_ci_repr(x)).epsilon(1e-9));
  }
  for (double x : {3.0, 8.0, 12.0}) {
    CHECK(cji_series(2, x) == doctest::Approx(cji2_ci_repr(x)).epsilon(1e-9));
  }
  // difference identity CJi(x) - CJi(y) = int_x^y cos xi J0 xi / xi dxi,
  // spanning the series/representation switch at x = 14
  for (auto [x, y] : {std::pair{2.0, 10.0}, {10.0, 30.0}, {20.0, 45.0}}) {
    double q = quad(
        [](double xi) { return std::cos(xi) * gsl_sf_bessel_J0(xi) / xi; }, x,
        y);
    CHECK(cji_family(1, x) - cji_family(1, y) == doctest::Approx(q).epsilon(1e-8));
  }
}

TEST_CASE("cji derivative chain across representations") {
  // d/dx CJi2 = -CJi/x, d/dx CJi3 = -CJi2/x
  for (double x : {6.0, 25.0}) {
    double h = 1e-3;
    double fd2 = (cji_family(2, x + h) - cji_family(2, x - h)) / (2 * h);
    CHECK(fd2 == doctest::Approx(-cji_family(1, x) / x).epsilon(1e-6));
  }
  double x = 8.0, h = 1e-3;
  double fd3 = (cji_family(3, x + h) - cji_family(3, x - h)) / (2 * h);
  CHECK(fd3 == doctest::Approx(-cji_family(2, x) / x).epsilon(1e-6));
  CHECK_THROWS_AS(cji_family(3, 30.0), CancellationError);
}

TEST_CASE("closed small-x forms of cji2 and cji3") {
  // CJi2 = u^2/2 + pi^2/8 + eps, CJi3 = -u^3/6 - (pi^2/8) u + 5 zeta(3)/3 + eps
  // with u = gamma + ln(x/2); at x -> 0 the series part vanishes like x^2
  double x = 1e-4;
  double u = kEulerGamma + std::log(0.5 * x);
  CHECK(cji_series(2, x) ==
        doctest::Approx(0.5 * u * u + kPi * kPi / 8).epsilon(1e-7));
  CHECK(cji_series(3, x) ==
        doctest::Approx(-u * u * u / 6 - kPi * kPi / 8 * u + 5 * kZeta3 / 3)
            .epsilon(1e-7));
}

TEST_CASE("asymptotic overlap with the exact representations") {
  for (double x = 20.0; x <= 40.0; x += 1.0) {
    double tol = 5.0 * std::pow(x, -2.5);
    CHECK(std::abs(cji_family(1, x) - asympt_forms(AsymKind::CJI, x)) <= tol);
    CHECK(std::abs(cji_family(2, x) - asympt_forms(AsymKind::CJI2, x)) <=
          2.0 * tol);
  }
  // CJI3 via the derivative chain applied to the asymptotic forms
  for (double x : {25.0, 35.0}) {
    double h = 1e-3;
    double fd = (asympt_forms(AsymKind::CJI3, x + h) -
                 asympt_forms(AsymKind::CJI3, x - h)) /
                (2 * h);
    CHECK(fd == doctest::Approx(-asympt_forms(AsymKind::CJI2, x) / x)
                    .epsilon(2e-3));
  }
  CHECK_THROWS_AS(asympt_forms(AsymKind::CJI, 2.0), std::domain_error);
}

TEST_CASE("cii and its log-scaled asymptotic form") {
  // CIi(s) = int_0^s (cosh xi I0 xi - 1)/xi dxi for the example law
  for (double s : {1.0, 4.0}) {
    double q = quad(
        [](double xi) {
          if (xi < 1e-8) return 0.0;
          return (std::cosh(xi) * gsl_sf_bessel_I0(xi) - 1.0) / xi;
        },
        0.0, s);
    CHECK(cii_family(1, s) == doctest::Approx(q).epsilon(1e-10));
  }
  for (double s : {30.0, 60.0, 120.0}) {
    double rel_err = 1.0 / (s * s);  // next order of the expansion
    CHECK(std::log(cii_family(1, s)) ==
          doctest::Approx(asympt_forms(AsymKind::CII, s)).epsilon(3 * rel_err));
  }
  CHECK_THROWS_AS(cii_family(1, 400.0), std::overflow_error);
}

TEST_CASE("JI2 asymptotic form against the iterated-integral oracle") {
  // Ji2(x) = int_x^inf J0(eta) ln(eta/x)/eta deta equals ti(2, x/2)/4 for the
  // law with g(s) = J0(2s), evaluable to ~1e-13 in the series range
  auto c = integration_constants(kBesselLaw, 2);
  for (double x : {20.0, 26.0}) {
    double oracle = ti_iter(kBesselLaw, 2, 0.5 * x, c) / 4.0;
    CHECK(asympt_forms(AsymKind::JI2, x) ==
          doctest::Approx(oracle).epsilon(5e-6));
  }
}

TEST_CASE("cjin spans all scales") {
  CHECK(cjin(0.0) == 0.0);
  auto seg = [](double lo, double hi) {
    return quad(
        [](double xi) {
          return (1.0 - std::cos(xi) * gsl_sf_bessel_J0(xi)) / xi;
        },
        lo, hi);
  };
  // increments straddling the series/representation/asymptotic seams
  CHECK(cjin(14.2) - cjin(13.8) == doctest::Approx(seg(13.8, 14.2)).epsilon(1e-7));
  CHECK(cjin(45.2) - cjin(44.8) == doctest::Approx(seg(44.8, 45.2)).epsilon(1e-5));
  CHECK(cjin(150.0) - cjin(10.0) ==
        doctest::Approx(seg(10.0, 150.0)).epsilon(1e-5));
  // derivative: d/dx CJin = (1 - cos x J0 x)/x
  for (double x : {0.8, 6.0, 20.0}) {
    double h = 1e-4;
    double fd = (cjin(x + h) - cjin(x - h)) / (2 * h);
    double rhs = (1.0 - std::cos(x) * gsl_sf_bessel_J0(x)) / x;
    CHECK(fd == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("oscillatory tail primitives by difference against quadrature") {
  CHECK(tail_sin(1, 3.0) ==
        doctest::Approx(kPi / 2 - gsl_sf_Si(3.0)).epsilon(1e-12));
  CHECK(tail_cos(1, 3.0) == doctest::Approx(-gsl_sf_Ci(3.0)).epsilon(1e-12));
  for (int m : {2, 3, 5}) {
    double q = quad([m](double u) { return std::sin(u) / std::pow(u, m); }, 8.0,
                    40.0);
    CHECK(tail_sin(m, 8.0) - tail_sin(m, 40.0) ==
          doctest::Approx(q).epsilon(1e-10));
    double qc = quad([m](double u) { return std::cos(u) / std::pow(u, m); },
                     8.0, 40.0);
    CHECK(tail_cos(m, 8.0) - tail_cos(m, 40.0) ==
          doctest::Approx(qc).epsilon(1e-10));
  }
  double ql = quad([](double u) { return std::log(u) * std::cos(u) / u; }, 30.0,
                   80.0);
  CHECK(tail_log_cos(1, 30.0) - tail_log_cos(1, 80.0) ==
        doctest::Approx(ql).epsilon(1e-8));
  double ql2 = quad(
      [](double u) { return std::log(u) * std::sin(u) / (u * u); }, 30.0, 60.0);
  CHECK(tail_log_sin(2, 30.0) - tail_log_sin(2, 60.0) ==
        doctest::Approx(ql2).epsilon(1e-7));
  // semiconvergent accuracy floor at moderate z: ~1e-5 near z = 12
  double ql3 = quad(
      [](double u) { return std::log(u) * std::sin(u) / (u * u); }, 12.0, 60.0);
  CHECK(std::abs(tail_log_sin(2, 12.0) - tail_log_sin(2, 60.0) - ql3) < 5e-5);
}

TEST_CASE("ci_over_u_tail across the series seam") {
  double q = quad([](double u) { return gsl_sf_Ci(u) / u; }, 5.0, 40.0);
  CHECK(ci_over_u_tail(5.0) - ci_over_u_tail(40.0) ==
        doctest::Approx(q).epsilon(1e-8));
  double qs = quad([](double u) { return gsl_sf_Ci(u) / u; }, 24.0, 26.0);
  CHECK(ci_over_u_tail(24.0) - ci_over_u_tail(26.0) ==
        doctest::Approx(qs).epsilon(1e-8));
}

TEST_CASE("semiconvergence of the algebraic expansion") {
  // for fixed x the error first shrinks with kmax, then the expansion
  // truncates itself at the smallest term
  double target = 0.25647101156511294;  // sign-law oracle at x = 15
  double e1 = std::abs(ti_asymptotic(kSignLaw, 15.0, 1).value - target);
  double e3 = std::abs(ti_asymptotic(kSignLaw, 15.0, 3).value - target);
  CHECK(e3 < e1);
  auto big = ti_asymptotic(kSignLaw, 15.0, 40);
  auto small = ti_asymptotic(kSignLaw, 15.0, 3);
  CHECK(big.value == doctest::Approx(small.value).epsilon(1e-9));
}
