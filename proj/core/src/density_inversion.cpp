#include "levyprem/density_inversion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "levyprem/errors.hpp"
#include "levyprem/fft.hpp"

namespace levyprem {

InversionGrid::InversionGrid(std::size_t n_points, double x_min, double x_max)
    : n_points_(n_points), x_min_(x_min), x_max_(x_max) {
  if (n_points < (std::size_t{1} << 10) || !is_power_of_two(n_points)) {
    throw InvalidParameter("InversionGrid: n_points must be a power of two >= 1024");
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw InvalidParameter("InversionGrid: require finite x_min < x_max");
  }
  spacing_ = (x_max - x_min) / static_cast<double>(n_points);
}

double GriddedDensity::pdf_at(double x) const {
  if (x < grid.x_min() || x > grid.x_max()) return 0.0;
  const double pos = (x - grid.x_min()) / grid.spacing();
  const auto n = grid.n_points();
  auto j = static_cast<std::size_t>(pos);
  if (j >= n) j = n - 1;
  const double frac = pos - static_cast<double>(j);
  const double right = j + 1 < n ? pdf_values[j + 1] : pdf_values[0];
  return pdf_values[j] + frac * (right - pdf_values[j]);
}

double GriddedDensity::cdf_at(double x) const {
  if (x <= grid.x_min()) return 0.0;
  if (x >= grid.x_max()) return 1.0;
  const double pos = (x - grid.x_min()) / grid.spacing();
  const auto n = grid.n_points();
  auto j = static_cast<std::size_t>(pos);
  if (j >= n - 1) {
    const double frac = (x - grid.node(n - 1)) / grid.spacing();
    return std::min(1.0, cdf_values[n - 1] + frac * (1.0 - cdf_values[n - 1]));
  }
  const double frac = pos - static_cast<double>(j);
  return cdf_values[j] + frac * (cdf_values[j + 1] - cdf_values[j]);
}

double GriddedDensity::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0,1)");
  const auto it = std::lower_bound(cdf_values.begin(), cdf_values.end(), p);
  if (it == cdf_values.begin()) return grid.x_min();
  if (it == cdf_values.end()) {
    const double last = cdf_values.back();
    const double frac = last < 1.0 ? (p - last) / (1.0 - last) : 0.0;
    return grid.node(grid.n_points() - 1) + frac * grid.spacing();
  }
  const auto j = static_cast<std::size_t>(it - cdf_values.begin());
  const double lo = cdf_values[j - 1];
  const double hi = cdf_values[j];
  const double frac = hi > lo ? (p - lo) / (hi - lo) : 0.0;
  return grid.node(j - 1) + frac * grid.spacing();
}

GriddedDensity invert_chf(const CharacteristicFunction& chf, const InversionGrid& grid) {
  const std::size_t n = grid.n_points();
  const double dx = grid.spacing();
  const double du = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  const double half = static_cast<double>(n / 2);

  const double nyquist = std::abs(chf(-half * du));
  if (nyquist > 1e-8) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "chf decay too slow: |chf| = %.3g at the Nyquist frequency %.6g", nyquist,
                  half * du);
    throw DomainError(buf);
  }

  // f(x_j) = du/(2 pi) Re sum_k chf(u_k) exp(-i u_k x_j), u_k = (k - n/2) du.
  // Taking the real part lets the k = 0 (u = -Nyquist) term stand in for
  // both trapezoid endpoints, since chf(-u) = conj(chf(u)).
  std::vector<std::complex<double>> buffer(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = (static_cast<double>(k) - half) * du;
    buffer[k] = chf(u) * std::polar(1.0, -u * grid.x_min());
  }
  fft_forward(buffer);

  GriddedDensity out{grid, std::vector<double>(n), std::vector<double>(n), 0.0, 0.0};
  const double scale = du / (2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    double value = scale * sign * buffer[j].real();
    if (value < 0.0) {
      out.clipped_mass += -value * dx;
      value = 0.0;
    }
    out.pdf_values[j] = value;
  }

  double cumulative = 0.0;
  out.cdf_values[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    cumulative += 0.5 * (out.pdf_values[j - 1] + out.pdf_values[j]) * dx;
    out.cdf_values[j] = std::min(1.0, cumulative);
  }
  out.total_mass = cumulative;

  // The periodic grid folds mass from outside the support back in, so the
  // trapezoid mass alone stays near 1. Density left at the edges marks the
  // folded part; discount it over the grid length.
  const double edge = 0.5 * (out.pdf_values.front() + out.pdf_values.back());
  const double recovered = out.total_mass - edge * (grid.x_max() - grid.x_min());
  if (std::abs(1.0 - out.total_mass) > 1e-3 || std::abs(1.0 - recovered) > 1e-3) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "support too narrow: recovered mass %.6g on [%.6g, %.6g]",
                  recovered, grid.x_min(), grid.x_max());
    throw DomainError(buf);
  }
  return out;
}

double log_likelihood_from_grid(const GriddedDensity& density, std::span<const double> data) {
  std::vector<double> outside;
  double total = 0.0;
  for (double x : data) {
    if (!(x >= density.grid.x_min() && x <= density.grid.x_max())) {
      outside.push_back(x);
      continue;
    }
    total += std::log(std::max(density.pdf_at(x), 1e-300));
  }
  if (!outside.empty()) {
    std::string msg = "datum outside grid [" + std::to_string(density.grid.x_min()) + ", " +
                      std::to_string(density.grid.x_max()) + "]:";
    const std::size_t shown = std::min<std::size_t>(outside.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) msg += " " + std::to_string(outside[i]);
    if (outside.size() > shown) msg += " ... (" + std::to_string(outside.size()) + " total)";
    throw DomainError(msg);
  }
  return total;
}

InversionGrid default_grid(const Moments& summary, std::size_t n_points, double width) {
  if (!(summary.variance > 0.0)) throw InvalidParameter("default_grid: variance must be > 0");
  const double kurt = std::max(summary.excess_kurtosis, 0.0);
  const double half = width * std::sqrt(summary.variance) * std::sqrt(1.0 + kurt / 3.0);
  return InversionGrid(n_points, summary.mean - half, summary.mean + half);
}

InversionGrid covering_grid(const Moments& summary, std::span<const double> data,
                            std::size_t n_points) {
  const InversionGrid base = default_grid(summary, n_points);
  if (data.empty()) return base;
  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  const double margin = 0.05 * (*hi_it - *lo_it);
  const double lo = std::min(base.x_min(), *lo_it - margin);
  const double hi = std::max(base.x_max(), *hi_it + margin);
  return InversionGrid(n_points, lo, hi);
}

}  // namespace levyprem
