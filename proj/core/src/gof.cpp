#include "levyprem/gof.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "levyprem/errors.hpp"
#include "levyprem/special_functions.hpp"

namespace levyprem {
namespace {

void require_min_size(const PitSample& s, const char* fn) {
  if (s.size() < 8) {
    throw InvalidParameter(std::string(fn) + ": need at least 8 values, got " +
                           std::to_string(s.size()));
  }
}

std::vector<double> sorted_copy(const PitSample& s) {
  std::vector<double> u = s.values();
  std::sort(u.begin(), u.end());
  return u;
}

double ks_statistic(std::span<const double> sorted) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double u = sorted[i];
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - u, u - static_cast<double>(i) / n});
  }
  return d;
}

double frosini_statistic(std::span<const double> sorted) {
  const double n = static_cast<double>(sorted.size());
  double total = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    total += std::abs(sorted[i] - (static_cast<double>(i) + 0.5) / n);
  }
  return total / std::sqrt(n);
}

// Sorted uniforms from normalised exponential spacings.
void sorted_uniforms(std::mt19937_64& rng, std::vector<double>& out) {
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (auto& x : out) {
    total += expo(rng);
    x = total;
  }
  total += expo(rng);
  for (auto& x : out) x /= total;
}

using Statistic = double (*)(std::span<const double>);

// Sorted null replicates of a statistic, cached per (statistic, n).
class NullCache {
 public:
  const std::vector<double>& get(Statistic stat, std::size_t n) {
    std::lock_guard lock(mutex_);
    auto& slot = cache_[{reinterpret_cast<std::uintptr_t>(stat), n}];
    if (!slot) {
      auto values = std::make_unique<std::vector<double>>(kMonteCarloReplicates);
      std::mt19937_64 rng(kGofSeed ^ static_cast<std::uint64_t>(n));
      std::vector<double> u(n);
      for (auto& v : *values) {
        sorted_uniforms(rng, u);
        v = stat(u);
      }
      std::sort(values->begin(), values->end());
      slot = std::move(values);
    }
    return *slot;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::uintptr_t, std::size_t>, std::unique_ptr<std::vector<double>>> cache_;
};

NullCache& null_cache() {
  static NullCache cache;
  return cache;
}

// Fraction of null replicates at least as large as the observed value.
double monte_carlo_p(Statistic stat, std::size_t n, double observed) {
  const auto& null = null_cache().get(stat, n);
  const auto first = std::lower_bound(null.begin(), null.end(), observed);
  return static_cast<double>(null.end() - first) / static_cast<double>(null.size());
}

}  // namespace

PitSample::PitSample(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidParameter("PitSample: value outside [0,1]");
  }
}

std::string to_string(GofMethod method) {
  switch (method) {
    case GofMethod::ks: return "KS";
    case GofMethod::neyman: return "Neyman";
    case GofMethod::frosini: return "Frosini";
  }
  return "unknown";
}

PitSample pit(std::span<const double> data, const CdfHandle& cdf) {
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double u = cdf(data[i]);
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("CDF returned value outside [0,1]");
    out[i] = u;
  }
  return PitSample(std::move(out));
}

TestReport ks_test_uniform(const PitSample& s) {
  require_min_size(s, "ks_test_uniform");
  const std::vector<double> u = sorted_copy(s);
  const std::size_t n = u.size();
  const double d = ks_statistic(u);
  double p;
  if (n > 100) {
    const double rn = std::sqrt(static_cast<double>(n));
    p = kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d);
  } else {
    p = monte_carlo_p(&ks_statistic, n, d);
  }
  return {d, std::clamp(p, 0.0, 1.0), GofMethod::ks, n};
}

TestReport neyman_smooth_test(const PitSample& s, int order) {
  require_min_size(s, "neyman_smooth_test");
  if (order < 1) throw InvalidParameter("neyman_smooth_test: order must be >= 1");
  const std::size_t n = s.size();
  std::vector<double> sums(static_cast<std::size_t>(order), 0.0);
  for (double u : s.values()) {
    const double x = 2.0 * u - 1.0;
    double p_prev = 1.0;
    double p_curr = x;
    for (int j = 1; j <= order; ++j) {
      if (j > 1) {
        const double p_next = ((2.0 * j - 1.0) * x * p_curr - (j - 1.0) * p_prev) / j;
        p_prev = p_curr;
        p_curr = p_next;
      }
      sums[static_cast<std::size_t>(j - 1)] += std::sqrt(2.0 * j + 1.0) * p_curr;
    }
  }
  double stat = 0.0;
  for (double v : sums) stat += v * v;
  stat /= static_cast<double>(n);
  return {stat, std::clamp(chi_square_sf(stat, order), 0.0, 1.0), GofMethod::neyman, n};
}

TestReport frosini_test(const PitSample& s) {
  require_min_size(s, "frosini_test");
  const std::vector<double> u = sorted_copy(s);
  const double b = frosini_statistic(u);
  return {b, monte_carlo_p(&frosini_statistic, u.size(), b), GofMethod::frosini, u.size()};
}

PlotData qq_pp_data(std::span<const double> data, const CdfHandle& cdf,
                    const QuantileHandle& quantile) {
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  PlotData plot;
  plot.qq.reserve(sorted.size());
  plot.pp.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / n;
    plot.qq.push_back({quantile(p), sorted[i]});
    plot.pp.push_back({p, cdf(sorted[i])});
  }
  return plot;
}

std::vector<std::size_t> pit_histogram(const PitSample& s, std::size_t bins) {
  if (bins == 0) throw InvalidParameter("pit_histogram: bins must be positive");
  std::vector<std::size_t> counts(bins, 0);
  for (double u : s.values()) {
    const auto k = static_cast<std::size_t>(u * static_cast<double>(bins));
    ++counts[std::min(k, bins - 1)];
  }
  return counts;
}

double max_pp_deviation(const PlotData& plot) {
  double d = 0.0;
  for (const auto& point : plot.pp) d = std::max(d, std::abs(point[1] - point[0]));
  return d;
}

ModelDistribution model_distribution(const ModelParams& params, std::span<const double> data) {
  if (const auto* normal = std::get_if<NormalParams>(&params)) {
    const NormalParams p = *normal;
    return {[p](double x) { return normal_cdf(p, x); },
            [p](double q) { return p.mu() + p.sigma() * std_normal_quantile(q); }};
  }
  std::shared_ptr<const GriddedDensity> density;
  if (const auto* nig = std::get_if<NigParams>(&params)) {
    const NigParams p = *nig;
    density = std::make_shared<GriddedDensity>(invert_chf(
        [p](double u) { return nig_chf(p, u); }, covering_grid(nig_moments(p), data)));
  } else {
    const NcigParams p = std::get<NcigParams>(params);
    density = std::make_shared<GriddedDensity>(invert_chf(
        [p](double u) { return ncig_chf(p, u); }, covering_grid(ncig_moments(p), data)));
  }
  return {[density](double x) { return density->cdf_at(x); },
          [density](double q) { return density->quantile(q); }};
}

}  // namespace levyprem
