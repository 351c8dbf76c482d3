#include <cmath>
#include <random>

#include "levyprem/levy_models.hpp"

namespace levyprem {
namespace {

using Engine = std::mt19937_64;

// Michael, Schucany & Haas transformation with rejection: one normal, one
// uniform, and a choice between the two roots x and mu^2/x.
double draw_ig(Engine& rng, std::normal_distribution<double>& normal,
               std::uniform_real_distribution<double>& uniform, double lambda, double mu) {
  const double z = normal(rng);
  const double w = mu * z * z / (2.0 * lambda);
  // Smaller root mu (1 + w - sqrt(w (2 + w))), written as a reciprocal.
  const double x = mu / (1.0 + w + std::sqrt(w * (2.0 + w)));
  const double u = uniform(rng);
  return u <= mu / (mu + x) ? x : mu * mu / x;
}

struct Streams {
  explicit Streams(std::uint64_t seed) : rng(seed) {}
  Engine rng;
  std::normal_distribution<double> normal{0.0, 1.0};
  std::uniform_real_distribution<double> uniform{0.0, 1.0};

  double ig(double lambda, double mu) { return draw_ig(rng, normal, uniform, lambda, mu); }

  // T(U(1)): given U(1) = v the outer IG Levy process at time v is
  // IG(lambda_T v^2, mu_T v).
  double double_ig(const DoubleIgParams& p) {
    const double v = ig(p.inner.lambda(), p.inner.mu());
    return ig(p.outer.lambda() * v * v, p.outer.mu() * v);
  }
};

}  // namespace

std::vector<double> ig_sample(const IgParams& p, std::size_t n, std::uint64_t seed) {
  Streams s(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = s.ig(p.lambda(), p.mu());
  return out;
}

std::vector<double> double_ig_sample(const DoubleIgParams& p, std::size_t n, std::uint64_t seed) {
  Streams s(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = s.double_ig(p);
  return out;
}

std::vector<double> normal_sample(const NormalParams& p, std::size_t n, std::uint64_t seed) {
  Streams s(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = p.mu() + p.sigma() * s.normal(s.rng);
  return out;
}

std::vector<double> nig_sample(const NigParams& p, std::size_t n, std::uint64_t seed) {
  // X = mu + beta Z + sqrt(Z) N with Z ~ IG(shape delta^2, mean delta/gamma).
  Streams s(seed);
  const double shape = p.delta() * p.delta();
  const double mean = p.delta() / p.gamma();
  std::vector<double> out(n);
  for (auto& x : out) {
    const double z = s.ig(shape, mean);
    x = p.mu() + p.beta() * z + std::sqrt(z) * s.normal(s.rng);
  }
  return out;
}

std::vector<double> ncig_sample(const NcigParams& p, std::size_t n, std::uint64_t seed) {
  Streams s(seed);
  const DoubleIgParams clock = p.clock();
  const double sigma = std::sqrt(p.sigma2());
  std::vector<double> out(n);
  for (auto& x : out) {
    const double v = s.double_ig(clock);
    x = p.nu() * v + sigma * std::sqrt(v) * s.normal(s.rng);
  }
  return out;
}

}  // namespace levyprem
