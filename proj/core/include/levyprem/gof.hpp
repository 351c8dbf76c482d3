#pragma once

// Probability integral transform, uniformity tests and plot data.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "levyprem/estimation.hpp"

namespace levyprem {

using CdfHandle = std::function<double(double)>;
using QuantileHandle = std::function<double(double)>;

/// Values in [0, 1].
class PitSample {
 public:
  explicit PitSample(std::vector<double> values);
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

enum class GofMethod { ks, neyman, frosini };
std::string to_string(GofMethod method);

struct TestReport {
  double statistic = 0.0;
  double p_value = 1.0;
  GofMethod method = GofMethod::ks;
  std::size_t n = 0;
};

inline constexpr std::uint64_t kGofSeed = 20190601;
inline constexpr int kMonteCarloReplicates = 100000;

/// Throws DomainError("CDF returned value outside [0,1]").
PitSample pit(std::span<const double> data, const CdfHandle& cdf);

/// Asymptotic Kolmogorov p-value (Stephens' finite-n scaling) for n > 100,
/// Monte-Carlo otherwise.
TestReport ks_test_uniform(const PitSample& s);

/// Legendre smooth test; p-value from chi-square with `order` dof.
TestReport neyman_smooth_test(const PitSample& s, int order = 4);

/// Mean absolute discrepancy of the order statistics; Monte-Carlo p-value.
TestReport frosini_test(const PitSample& s);

struct PlotData {
  /// (theoretical quantile at (i - 0.5)/n, sorted datum)
  std::vector<std::array<double, 2>> qq;
  /// ((i - 0.5)/n, cdf(sorted datum))
  std::vector<std::array<double, 2>> pp;
};

PlotData qq_pp_data(std::span<const double> data, const CdfHandle& cdf,
                    const QuantileHandle& quantile);

/// Equal-width bins on [0, 1]; a value of exactly 1 lands in the last bin.
std::vector<std::size_t> pit_histogram(const PitSample& s, std::size_t bins = 20);

/// Largest |pp[i][1] - pp[i][0]|.
double max_pp_deviation(const PlotData& plot);

struct ModelDistribution {
  CdfHandle cdf;
  QuantileHandle quantile;
};

/// Closed form for the normal model; FFT-inverted grid covering `data`
/// for NIG and NCIG.
ModelDistribution model_distribution(const ModelParams& params, std::span<const double> data);

}  // namespace levyprem
