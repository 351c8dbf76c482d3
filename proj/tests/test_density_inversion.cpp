#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "levyprem/density_inversion.hpp"
#include "levyprem/errors.hpp"
#include "levyprem/levy_models.hpp"
#include "oracles.hpp"

using namespace levyprem;
using doctest::Approx;

namespace {

const NigParams kTable1(0.002351, 38.437308, -5.194172, 0.006590);
const NcigParams kTable2(195.903, 0.261, 0.08, 3.472);

std::complex<double> std_normal_chf(double t) { return std::exp(-0.5 * t * t); }

GriddedDensity std_normal_density(std::size_t n, double half_width = 18.0) {
  return invert_chf(std_normal_chf, InversionGrid(n, -half_width, half_width));
}

void check_invariants(const GriddedDensity& d) {
  CHECK(d.total_mass == Approx(1.0).epsilon(1e-4));
  for (double v : d.pdf_values) CHECK_UNARY(v >= 0.0);
  CHECK(std::is_sorted(d.cdf_values.begin(), d.cdf_values.end()));
  CHECK(d.cdf_values.back() <= 1.0);
  CHECK(d.cdf_values.back() >= 1.0 - 1e-4);
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(InversionGrid(1000, -1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(InversionGrid(512, -1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(InversionGrid(1024, 1.0, 1.0), InvalidParameter);
  const InversionGrid g(1024, -2.0, 2.0);
  CHECK(g.spacing() == 4.0 / 1024);
  CHECK(g.node(1024) == Approx(2.0));
}

TEST_CASE("standard normal inversion") {
  const GriddedDensity d = std_normal_density(std::size_t{1} << 14);
  check_invariants(d);
  double sup = 0.0;
  for (std::size_t j = 0; j < d.grid.n_points(); ++j) {
    const double x = d.grid.node(j);
    if (std::abs(x) <= 8.0) sup = std::max(sup, std::abs(d.pdf_values[j] - oracle::normal_pdf(0.0, 1.0, x)));
  }
  CHECK(sup <= 1e-8);
  CHECK(d.cdf_at(0.0) == Approx(0.5).epsilon(1e-6));
  CHECK(d.cdf_at(-100.0) == 0.0);
  CHECK(d.cdf_at(100.0) == 1.0);
  for (double x : {-2.0, -0.5, 0.3, 1.7}) CHECK(d.quantile(d.cdf_at(x)) == Approx(x).epsilon(1e-8));
  CHECK(d.quantile(0.975) == Approx(1.959963984540054).epsilon(1e-5));
}

TEST_CASE("interpolation error shrinks as the grid is refined") {
  double previous = 1.0;
  for (std::size_t n = std::size_t{1} << 10; n <= (std::size_t{1} << 15); n <<= 1) {
    const GriddedDensity d = std_normal_density(n, 12.0);
    double sup = 0.0;
    for (double x = -8.0; x <= 8.0; x += 0.01237) {
      sup = std::max(sup, std::abs(d.pdf_at(x) - oracle::normal_pdf(0.0, 1.0, x)));
    }
    CHECK(sup <= previous / 2.0 + 1e-13);
    previous = sup;
  }
}

TEST_CASE("NIG inversion matches the closed-form density") {
  const GriddedDensity d = invert_chf([](double t) { return nig_chf(kTable1, t); }, default_grid(nig_moments(kTable1)));
  check_invariants(d);
  double sup = 0.0;
  for (std::size_t j = 0; j < d.grid.n_points(); ++j) {
    sup = std::max(sup, std::abs(d.pdf_values[j] - nig_pdf(kTable1, d.grid.node(j))));
  }
  CHECK(sup <= 1e-6);
}

TEST_CASE("NCIG inversion has unit mass and matches sampled data") {
  const GriddedDensity d = invert_chf([](double t) { return ncig_chf(kTable2, t); }, default_grid(ncig_moments(kTable2)));
  check_invariants(d);
  const std::vector<double> z = ncig_sample(kTable2, 1'000'000, 77);
  const double ks = oracle::ks_distance(z, [&](double x) { return d.cdf_at(x); });
  CHECK(std::sqrt(1e6) * ks < oracle::kKsCritical1);
}

TEST_CASE("inversion errors") {
  try {
    std_normal_density(1024, 0.1);
    FAIL("expected a narrow-support error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("support too narrow") != std::string::npos);
  }
  try {
    invert_chf([](double t) { return std::complex<double>(std::exp(-std::abs(t))); }, InversionGrid(1024, -1000.0, 1000.0));
    FAIL("expected a slow-decay error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("chf decay too slow") != std::string::npos);
  }
}

TEST_CASE("log-likelihood from a grid") {
  const GriddedDensity d = std_normal_density(std::size_t{1} << 14);
  std::vector<double> at_nodes;
  double expected = 0.0;
  for (std::size_t j = 4000; j < 12000; j += 97) {
    at_nodes.push_back(d.grid.node(j));
    expected += std::log(std::max(d.pdf_values[j], 1e-300));
  }
  CHECK(log_likelihood_from_grid(d, at_nodes) == Approx(expected).epsilon(1e-14));

  // Linear interpolation error is about h^2/8 * f''/f, so pointwise checks
  // use a 2^16 grid; on the default 2^14 grid the errors average out.
  const std::vector<double> x = normal_sample(NormalParams(0.0, 1.0), 1000, 3);
  const GriddedDensity fine = std_normal_density(std::size_t{1} << 16);
  double exact = 0.0;
  for (double v : x) {
    const double one[] = {v};
    CHECK(std::abs(log_likelihood_from_grid(fine, one) - std::log(oracle::normal_pdf(0.0, 1.0, v))) <= 1e-6);
    exact += std::log(oracle::normal_pdf(0.0, 1.0, v));
  }
  CHECK(std::abs(log_likelihood_from_grid(d, x) - exact) / 1000.0 <= 1e-6);

  const auto nig_chf_t1 = [](double t) { return nig_chf(kTable1, t); };
  const GriddedDensity nig = invert_chf(nig_chf_t1, default_grid(nig_moments(kTable1)));
  const GriddedDensity nig_fine = invert_chf(nig_chf_t1, default_grid(nig_moments(kTable1), std::size_t{1} << 16));
  const std::vector<double> y = nig_sample(kTable1, 1000, 4);
  double nig_exact = 0.0;
  for (double v : y) {
    const double one[] = {v};
    CHECK(std::abs(log_likelihood_from_grid(nig_fine, one) - nig_log_pdf(kTable1, v)) <= 1e-5);
    nig_exact += nig_log_pdf(kTable1, v);
  }
  CHECK(std::abs(log_likelihood_from_grid(nig, y) - nig_exact) / 1000.0 <= 1e-5);

  const std::vector<double> outside = {0.0, 50.0, -60.0};
  try {
    log_likelihood_from_grid(d, outside);
    FAIL("expected an out-of-grid error");
  } catch (const DomainError& e) {
    const std::string what = e.what();
    CHECK(what.find("datum outside grid") != std::string::npos);
    CHECK(what.find("50") != std::string::npos);
    CHECK(what.find("-60") != std::string::npos);
  }
}

TEST_CASE("default grids") {
  const InversionGrid g = default_grid(Moments{0.0, 1.0, 0.0, 0.0});
  CHECK(g.x_min() <= -12.0);
  CHECK(g.x_max() >= 12.0);
  CHECK(g.n_points() == kDefaultGridPoints);

  const InversionGrid nig = default_grid(nig_moments(kTable1));
  const auto pdf = [](double x) { return oracle::nig_pdf(0.002351, 38.437308, -5.194172, 0.006590, x); };
  const double outside = oracle::simpson(pdf, nig.x_max(), nig.x_max() + 3.0, 200000) +
                         oracle::simpson(pdf, nig.x_min() - 3.0, nig.x_min(), 200000);
  CHECK(outside <= 1e-10);

  const std::vector<double> data = {-3.0, 0.0, 40.0};
  const InversionGrid c = covering_grid(Moments{0.0, 1.0, 0.0, 0.0}, data);
  CHECK(c.x_min() < -3.0);
  CHECK(c.x_max() > 40.0);
}
