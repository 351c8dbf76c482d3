#pragma once

// Recovery of pdf, cdf and quantiles from a characteristic function by
// discrete Fourier inversion on a uniform grid.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "levyprem/levy_models.hpp"

namespace levyprem {

using CharacteristicFunction = std::function<std::complex<double>(double)>;

/// Uniform periodic grid x_j = x_min + j * spacing, j = 0..n-1, with
/// spacing = (x_max - x_min) / n. n must be a power of two >= 2^10.
class InversionGrid {
 public:
  InversionGrid(std::size_t n_points, double x_min, double x_max);

  std::size_t n_points() const { return n_points_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double spacing() const { return spacing_; }
  double node(std::size_t j) const { return x_min_ + static_cast<double>(j) * spacing_; }

 private:
  std::size_t n_points_;
  double x_min_;
  double x_max_;
  double spacing_;
};

struct GriddedDensity {
  InversionGrid grid;
  std::vector<double> pdf_values;
  std::vector<double> cdf_values;
  /// Trapezoid mass of the clipped pdf.
  double total_mass = 0.0;
  /// Mass removed by clipping negative ringing to zero.
  double clipped_mass = 0.0;

  /// Linear interpolation; the segment past the last node wraps to x_min.
  double pdf_at(double x) const;
  /// 0 below x_min, 1 above x_max, linear in between.
  double cdf_at(double x) const;
  /// Inverse of cdf_at by bisection over the cdf nodes.
  double quantile(double p) const;
};

/// Throws DomainError("chf decay too slow") if |chf| at the Nyquist
/// frequency exceeds 1e-8 and DomainError("support too narrow") if the
/// recovered mass, net of the edge density times the grid length, is off
/// by more than 1e-3.
GriddedDensity invert_chf(const CharacteristicFunction& chf, const InversionGrid& grid);

/// Sum of ln pdf (floored at 1e-300) at each datum. Throws DomainError
/// ("datum outside grid") listing offending values.
double log_likelihood_from_grid(const GriddedDensity& density, std::span<const double> data);

inline constexpr std::size_t kDefaultGridPoints = std::size_t{1} << 14;

/// Support mean +- width * sd * sqrt(1 + max(excess kurtosis, 0) / 3).
InversionGrid default_grid(const Moments& summary, std::size_t n_points = kDefaultGridPoints,
                           double width = 18.0);

/// default_grid widened, if needed, to cover every datum with a margin of
/// 5% of the data range.
InversionGrid covering_grid(const Moments& summary, std::span<const double> data,
                            std::size_t n_points = kDefaultGridPoints);

}  // namespace levyprem
