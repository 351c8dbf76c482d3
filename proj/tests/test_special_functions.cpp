#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levyprem/errors.hpp"
#include "levyprem/special_functions.hpp"
#include "oracles.hpp"

using namespace levyprem;
using doctest::Approx;

TEST_CASE("integral oracle reproduces high-precision K1 values") {
  CHECK(static_cast<double>(oracle::bessel_k(1, 1.0)) == Approx(0.601907230197234574737).epsilon(1e-15));
  CHECK(static_cast<double>(oracle::bessel_k(1, 10.0)) == Approx(1.86487734538255846e-5).epsilon(1e-15));
  CHECK(static_cast<double>(oracle::bessel_k(1, 1e-6)) == Approx(999999.999992784278963).epsilon(1e-15));
}

TEST_CASE("bessel_k1 reference values") {
  CHECK(bessel_k1(1.0) == Approx(0.6019072301972346).epsilon(1e-14));
  CHECK(bessel_k1(10.0) == Approx(1.8648773453825585e-5).epsilon(1e-14));
  CHECK(bessel_k1(2.0) == Approx(0.139865881816522427).epsilon(1e-14));
  CHECK(bessel_k1(0.3) == Approx(3.05599203345732497885).epsilon(1e-14));
  CHECK(bessel_k1(600.0) == Approx(1.35695791811280608685e-262).epsilon(1e-13));
}

TEST_CASE("bessel_k1 within 1e-10 of the integral oracle on [1e-8, 700]") {
  double worst = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double x = 1e-8 * std::pow(700.0 / 1e-8, k / 400.0);
    const long double ref = oracle::bessel_k_scaled(1, x);
    const double rel = std::abs(static_cast<long double>(bessel_k1_scaled(x)) / ref - 1.0L);
    worst = std::max(worst, rel);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("bessel_k1 large-argument behaviour") {
  const double x = 1e5;
  CHECK(bessel_k1_scaled(x) * std::sqrt(x) == Approx(std::sqrt(std::numbers::pi / 2)).epsilon(1e-5));
  CHECK(bessel_k1(800.0) >= 0.0);
  CHECK(bessel_k1(800.0) < std::numeric_limits<double>::min());
}

TEST_CASE("bessel_k1 is positive and strictly decreasing") {
  double previous = bessel_k1(1e-3);
  for (double x = 2e-3; x < 700.0; x *= 1.01) {
    const double v = bessel_k1(x);
    CHECK(v > 0.0);
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("recurrence K2 = K0 + (2/x) K1 with oracle K0, K2") {
  for (double x : {0.01, 0.5, 1.0, 3.0, 17.0, 150.0}) {
    const long double k0 = oracle::bessel_k_scaled(0, x);
    const long double k2 = oracle::bessel_k_scaled(2, x);
    const double rhs = static_cast<double>(k0) + 2.0 / x * bessel_k1_scaled(x);
    CHECK(rhs == Approx(static_cast<double>(k2)).epsilon(1e-8));
  }
}

TEST_CASE("bessel_k0_scaled within 1e-12 of the integral oracle") {
  double worst = 0.0;
  for (double x = 1e-6; x <= 700.0; x *= 1.07) {
    const long double ref = oracle::bessel_k_scaled(0, x);
    worst = std::max(worst, static_cast<double>(std::abs(static_cast<long double>(bessel_k0_scaled(x)) / ref - 1.0L)));
  }
  CHECK(worst <= 1e-12);
  CHECK(bessel_k0_scaled(1.0) * std::exp(-1.0) == Approx(0.421024438240708333).epsilon(1e-14));
  CHECK(bessel_k0_scaled(2.0) * std::exp(-2.0) == Approx(0.113893872749533435).epsilon(1e-14));
  CHECK_THROWS_AS(bessel_k0_scaled(0.0), DomainError);
}

TEST_CASE("log_bessel_k1") {
  CHECK(log_bessel_k1(1.0) == Approx(std::log(0.6019072301972346)).epsilon(1e-14));
  CHECK(log_bessel_k1(1000.0) == Approx(-1003.22771147418248916).epsilon(1e-12));
  CHECK(log_bessel_k1(1e6) == Approx(-1000006.68196355133759).epsilon(1e-12));
  const double x = 1000.0;
  const double asymptotic =
      -x + 0.5 * std::log(std::numbers::pi / (2 * x)) + std::log1p(3.0 / (8 * x) - 15.0 / (128 * x * x));
  CHECK(log_bessel_k1(x) == Approx(asymptotic).epsilon(1e-12));
  for (double y = 0.1; y <= 500.0; y *= 1.2) {
    CHECK(std::exp(log_bessel_k1(y)) == Approx(bessel_k1(y)).epsilon(1e-9));
  }
}

TEST_CASE("bessel functions reject non-positive or non-finite arguments") {
  for (double bad : {0.0, -1.0, std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::infinity()}) {
    CHECK_THROWS_AS(bessel_k1(bad), DomainError);
    CHECK_THROWS_AS(log_bessel_k1(bad), DomainError);
  }
}

TEST_CASE("std_normal_cdf") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(1.96) == Approx(0.9750021048517795).epsilon(1e-14));
  CHECK(std::abs(std_normal_cdf(-3.0) - 0.0013498980316300933) < 1e-15);
  CHECK(std_normal_cdf(-8.0) == Approx(6.22096057427174e-16).epsilon(1e-10));
  for (double x = -10.0; x <= 10.0; x += 0.37) {
    CHECK(std::abs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0) < 1e-15);
  }
  // Simpson integral of the density as an independent reference.
  for (double x : {-2.5, -0.7, 0.4, 1.9}) {
    const double ref = oracle::simpson([](double t) { return oracle::normal_pdf(0, 1, t); }, -14.0, x, 40000);
    CHECK(std::abs(std_normal_cdf(x) - ref) < 1e-12);
  }
}

TEST_CASE("std_normal_quantile inverts the cdf") {
  CHECK(std_normal_quantile(0.975) == Approx(1.959963984540054).epsilon(1e-13));
  CHECK(std_normal_quantile(1e-10) == Approx(-6.361340902404056).epsilon(1e-12));
  for (double p = 0.001; p < 1.0; p += 0.0137) {
    CHECK(std_normal_cdf(std_normal_quantile(p)) == Approx(p).epsilon(1e-13));
  }
  CHECK_THROWS_AS(std_normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(1.0), DomainError);
}

TEST_CASE("chi_square_sf reference values") {
  CHECK(chi_square_sf(3.841458820694124, 1) == Approx(0.05).epsilon(1e-12));
  CHECK(chi_square_sf(9.487729036781154, 4) == Approx(0.05).epsilon(1e-12));
  CHECK(chi_square_sf(7.0, 3) == Approx(0.07189777249646509).epsilon(1e-12));
  CHECK(chi_square_sf(0.5, 2) == Approx(0.7788007830714049).epsilon(1e-12));
  CHECK(chi_square_sf(12.3, 5) == Approx(0.03090046463546092).epsilon(1e-12));
  CHECK(chi_square_sf(1e-3, 1) == Approx(0.9747728793699604).epsilon(1e-12));
  CHECK(chi_square_sf(0.0, 4) == 1.0);
}

TEST_CASE("kolmogorov_sf reference values") {
  CHECK(kolmogorov_sf(0.3) == Approx(0.9999906941986655).epsilon(1e-12));
  CHECK(kolmogorov_sf(0.5) == Approx(0.9639452436648751).epsilon(1e-12));
  CHECK(kolmogorov_sf(1.0) == Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(kolmogorov_sf(1.36) == Approx(0.049485876755377876).epsilon(1e-12));
  CHECK(kolmogorov_sf(2.0) == Approx(0.0006709252557796953).epsilon(1e-11));
  CHECK(kolmogorov_sf(3.0) == Approx(3.045995948942526e-08).epsilon(1e-10));
  CHECK(kolmogorov_sf(0.0) == 1.0);
}
