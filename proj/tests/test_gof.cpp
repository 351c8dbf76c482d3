#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "levyprem/errors.hpp"
#include "levyprem/estimation.hpp"
#include "levyprem/gof.hpp"
#include "levyprem/levy_models.hpp"

using namespace levyprem;
using doctest::Approx;

namespace {

const NigParams kTable1(0.002351, 38.437308, -5.194172, 0.006590);

std::vector<double> equispaced(std::size_t n) {
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return u;
}

std::vector<double> uniforms(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u(n);
  for (auto& v : u) v = unif(rng);
  return u;
}

}  // namespace

TEST_CASE("PIT") {
  const std::vector<double> u = {0.1, 0.7, 0.3};
  CHECK(pit(u, [](double x) { return x; }).values() == u);
  const std::vector<double> flat(5, 2.0);
  const PitSample s = pit(flat, [](double x) { return 1.0 - std::exp(-x); });
  CHECK(std::all_of(s.values().begin(), s.values().end(), [&](double v) { return v == s.values()[0]; }));
  try {
    pit(u, [](double x) { return x + 1.0; });
    FAIL("expected a range error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("CDF returned value outside [0,1]") != std::string::npos);
  }
  CHECK_THROWS_AS(PitSample({0.5, 1.5}), InvalidParameter);
}

TEST_CASE("Kolmogorov-Smirnov") {
  for (std::size_t n : {50, 200}) {
    const TestReport r = ks_test_uniform(PitSample(equispaced(n)));
    CHECK(r.statistic == Approx(0.5 / static_cast<double>(n)).epsilon(1e-12));
    CHECK(r.p_value > 0.99);
    CHECK(r.n == n);
    CHECK(r.method == GofMethod::ks);
    CHECK(ks_test_uniform(PitSample(std::vector<double>(n, 0.5))).p_value < 1e-6);
  }
  CHECK_THROWS_AS(ks_test_uniform(PitSample(std::vector<double>(7, 0.5))), InvalidParameter);
  CHECK(to_string(GofMethod::ks) == "KS");
}

TEST_CASE("Neyman smooth test") {
  std::vector<double> sym;
  for (double u : uniforms(500, 1)) {
    sym.push_back(u);
    sym.push_back(1.0 - u);
  }
  CHECK(neyman_smooth_test(PitSample(sym), 1).statistic == Approx(0.0).scale(1.0).epsilon(1e-20));

  // Over 1000 seeds the order-4 statistic averages 4 (chi-square mean).
  double sum = 0.0, sum2 = 0.0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) {
    const double t = neyman_smooth_test(PitSample(uniforms(10000, 500 + s))).statistic;
    sum += t;
    sum2 += t * t;
  }
  const double mean = sum / seeds;
  const double se = std::sqrt((sum2 / seeds - mean * mean) / seeds);
  CHECK(std::abs(mean - 4.0) <= 3.0 * se);

  const std::size_t n = 1000;
  std::vector<double> trend(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double base = static_cast<double>(i + 1) / static_cast<double>(n + 1);
    trend[i] = std::clamp(base + 0.1 * std::sin(2.0 * std::numbers::pi * base), 0.0, 1.0);
  }
  CHECK(neyman_smooth_test(PitSample(trend)).p_value < 0.05);
  CHECK(to_string(GofMethod::neyman) == "Neyman");
}

TEST_CASE("Frosini test") {
  const std::size_t n = 64;
  CHECK(frosini_test(PitSample(equispaced(n))).statistic == Approx(0.0).scale(1.0).epsilon(1e-15));
  const TestReport ones = frosini_test(PitSample(std::vector<double>(n, 1.0)));
  CHECK(ones.statistic == Approx(std::sqrt(static_cast<double>(n)) / 2.0).epsilon(1e-12));
  CHECK(ones.p_value < 1e-4);
  const TestReport good = frosini_test(PitSample(uniforms(n, 3)));
  CHECK(good.p_value > 0.0);
  CHECK(good.p_value <= 1.0);
  CHECK(frosini_test(PitSample(uniforms(n, 3))).p_value == good.p_value);
  CHECK(to_string(GofMethod::frosini) == "Frosini");
}

TEST_CASE("statistics are invariant under permutation") {
  std::vector<double> u = uniforms(300, 9);
  const PitSample a(u);
  std::reverse(u.begin(), u.end());
  std::rotate(u.begin(), u.begin() + 77, u.end());
  const PitSample b(u);
  CHECK(ks_test_uniform(a).statistic == ks_test_uniform(b).statistic);
  CHECK(neyman_smooth_test(a).statistic == Approx(neyman_smooth_test(b).statistic).epsilon(1e-12));
  CHECK(frosini_test(a).statistic == Approx(frosini_test(b).statistic).epsilon(1e-12));
}

TEST_CASE("PIT histogram") {
  const PitSample s({0.0, 0.04, 0.05, 0.5, 0.99, 1.0});
  const std::vector<std::size_t> h = pit_histogram(s, 20);
  REQUIRE(h.size() == 20);
  CHECK(h[0] == 2);
  CHECK(h[1] == 1);
  CHECK(h[10] == 1);
  CHECK(h[19] == 2);
  std::size_t total = 0;
  for (std::size_t c : pit_histogram(PitSample(uniforms(1000, 2)), 7)) total += c;
  CHECK(total == 1000);
}

TEST_CASE("Q-Q and P-P data") {
  const std::vector<double> u = equispaced(100);
  const auto identity = [](double x) { return x; };
  const PlotData plot = qq_pp_data(u, identity, identity);
  REQUIRE(plot.qq.size() == 100);
  for (const auto& pt : plot.qq) CHECK(pt[0] == Approx(pt[1]).epsilon(1e-14));
  for (const auto& pt : plot.pp) CHECK(pt[0] == Approx(pt[1]).epsilon(1e-14));
  CHECK(max_pp_deviation(plot) < 1e-14);
}

TEST_CASE("PIT of model draws through the model's own CDF") {
  const std::vector<double> x = nig_sample(kTable1, 100'000, 21);
  const ModelDistribution dist = model_distribution(kTable1, x);
  const PitSample s = pit(x, dist.cdf);
  CHECK(ks_test_uniform(s).p_value > 0.01);
  CHECK(neyman_smooth_test(s).p_value > 0.01);

  const std::vector<double> small(x.begin(), x.begin() + 1000);
  const double coarse = max_pp_deviation(qq_pp_data(small, dist.cdf, dist.quantile));
  const double fine = max_pp_deviation(qq_pp_data(x, dist.cdf, dist.quantile));
  CHECK(fine < coarse);
  CHECK(dist.quantile(dist.cdf(0.01)) == Approx(0.01).epsilon(1e-6));
}

TEST_CASE("normal fit deviates more than NIG on heavy-tailed data") {
  const std::vector<double> x = nig_sample(kTable1, 10000, 22);
  const ModelParams normal = fit_normal_mle(x).params;
  const ModelParams nig = fit_nig_mle(x).params;
  const ModelDistribution dn = model_distribution(normal, x);
  const ModelDistribution dg = model_distribution(nig, x);
  const double normal_dev = max_pp_deviation(qq_pp_data(x, dn.cdf, dn.quantile));
  const double nig_dev = max_pp_deviation(qq_pp_data(x, dg.cdf, dg.quantile));
  CHECK(normal_dev > nig_dev);
  CHECK(ks_test_uniform(pit(x, dn.cdf)).p_value < ks_test_uniform(pit(x, dg.cdf)).p_value);
}
