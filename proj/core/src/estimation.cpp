#include "levyprem/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "levyprem/errors.hpp"
#include "levyprem/nelder_mead.hpp"
#include "levyprem/special_functions.hpp"

namespace levyprem {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_size(std::span<const double> data, std::size_t minimum, const char* fn) {
  if (data.size() < minimum) {
    throw InvalidParameter(std::string(fn) + ": need at least " + std::to_string(minimum) +
                           " observations, got " + std::to_string(data.size()));
  }
  for (double x : data) {
    if (!std::isfinite(x)) throw InvalidParameter(std::string(fn) + ": non-finite observation");
  }
}

// Normal law as a NIG with negligible excess kurtosis (3e-6).
NigParams normal_limit_start(const Moments& m) {
  const double sd = std::sqrt(m.variance);
  const double alpha = 1e3 / sd;
  return NigParams(m.mean, alpha, 0.0, m.variance * alpha);
}

// NIG coordinates: (mu/sd, ln(alpha sd), atanh(beta/alpha), ln(delta/sd)).
struct NigCoordinates {
  double sd;

  std::vector<double> encode(const NigParams& p) const {
    return {p.mu() / sd, std::log(p.alpha() * sd), std::atanh(p.beta() / p.alpha()),
            std::log(p.delta() / sd)};
  }

  NigParams decode(std::span<const double> t) const {
    const double alpha = std::exp(t[1]) / sd;
    return NigParams(t[0] * sd, alpha, alpha * std::tanh(t[2]), std::exp(t[3]) * sd);
  }
};

// NCIG coordinates aligned with what the data identify to leading order
// (variance sigma2 mu^2, excess kurtosis 3(1 + mu)/lambda):
// (ln(lambda/(1+mu)), ln mu, nu mu^2 / sd, ln(sigma2 mu^2 / sd^2)).
struct NcigCoordinates {
  double sd;

  std::vector<double> encode(const NcigParams& p) const {
    const double mu2 = p.mu() * p.mu();
    return {std::log(p.lambda() / (1.0 + p.mu())), std::log(p.mu()), p.nu() * mu2 / sd,
            std::log(p.sigma2() * mu2 / (sd * sd))};
  }

  NcigParams decode(std::span<const double> t) const {
    const double mu = std::exp(t[1]);
    const double mu2 = mu * mu;
    return NcigParams(std::exp(t[0]) * (1.0 + mu), mu, t[2] * sd / mu2,
                      std::exp(t[3]) * sd * sd / mu2);
  }
};

NelderMeadOptions to_nm_options(const FitOptions& options) {
  NelderMeadOptions nm;
  nm.max_iterations = options.max_iterations;
  nm.tolerance = options.tolerance;
  nm.initial_step = options.initial_step;
  return nm;
}

double ecf_distance(const NcigParams& p, const EmpiricalChf& ecf) {
  const auto& u = ecf.config().u_grid();
  const auto& w = ecf.config().weights();
  const auto& values = ecf.values();
  double total = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    total += w[j] * std::norm(values[j] - ncig_chf(p, u[j]));
  }
  return total;
}

}  // namespace

Moments sample_moments(std::span<const double> data) { return to_moments(sample_cumulants(data)); }

Cumulants sample_cumulants(std::span<const double> data) {
  if (data.empty()) throw InvalidParameter("sample_cumulants: empty data");
  const double n = static_cast<double>(data.size());
  double mean = 0.0;
  for (double x : data) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : data) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  return {mean, m2, m3, m4 - 3.0 * m2 * m2};
}

std::vector<double> to_vector(const ModelParams& p) {
  return std::visit(
      [](const auto& q) -> std::vector<double> {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, NormalParams>) {
          return {q.mu(), q.sigma()};
        } else if constexpr (std::is_same_v<T, NigParams>) {
          return {q.mu(), q.alpha(), q.beta(), q.delta()};
        } else {
          return {q.lambda(), q.mu(), q.nu(), q.sigma2()};
        }
      },
      p);
}

// ---- normal -------------------------------------------------------------------

double normal_log_likelihood(const NormalParams& p, std::span<const double> data) {
  double total = 0.0;
  for (double x : data) total += normal_log_pdf(p, x);
  return total;
}

FitResult fit_normal_mle(std::span<const double> data) {
  require_size(data, 2, "fit_normal_mle");
  const Cumulants c = sample_cumulants(data);
  if (!(c.k2 > 0.0)) throw DomainError("fit_normal_mle: degenerate data (all points equal)");
  const NormalParams p(c.k1, std::sqrt(c.k2));
  const double n = static_cast<double>(data.size());
  FitResult r{p, 0.0, ObjectiveKind::log_likelihood, true, 0, p, 0.0, false, {}};
  // At the MLE the log-likelihood has the closed form -n/2 ln(2 pi s^2) - n/2.
  r.objective = -0.5 * n * std::log(2.0 * std::numbers::pi * c.k2) - 0.5 * n;
  r.log_likelihood = r.objective;
  return r;
}

// ---- NIG ----------------------------------------------------------------------

double nig_log_likelihood(const NigParams& p, std::span<const double> data) {
  const double alpha = p.alpha();
  const double beta = p.beta();
  const double delta = p.delta();
  const double constant = std::log(alpha * delta / std::numbers::pi) -
                          delta * beta * beta / (alpha + p.gamma());
  double total = 0.0;
  for (double x : data) {
    const double d = x - p.mu();
    const double r = std::sqrt(delta * delta + d * d);
    total += -std::log(r) + log_bessel_k1_scaled(alpha * r) - alpha * d * d / (delta + r) +
             beta * d;
  }
  return total + constant * static_cast<double>(data.size());
}

namespace {

// Log-likelihood, score and outer product of per-point scores in
// NigCoordinates. With R = K0/K1 + 1/q at q = alpha r, the per-point
// derivatives in (mu, alpha, beta, delta) are
//   -beta + d/r^2 + alpha R d/r,  1/alpha + delta alpha/gamma - R r,
//   d - delta beta/gamma,  1/delta + gamma - delta/r^2 - alpha R delta/r.
struct NigScore {
  double log_likelihood = 0.0;
  std::array<double, 4> gradient{};
  std::array<double, 16> outer{};
};

NigScore nig_score(const NigParams& p, const NigCoordinates& coords, std::span<const double> data) {
  const double alpha = p.alpha();
  const double beta = p.beta();
  const double delta = p.delta();
  const double gamma = p.gamma();
  const double rho = beta / alpha;
  const std::array<double, 4> jacobian = {coords.sd, alpha, alpha * (1.0 - rho * rho), delta};
  NigScore s;
  for (double x : data) {
    const double d = x - p.mu();
    const double r = std::sqrt(delta * delta + d * d);
    const double q = alpha * r;
    const double k1 = bessel_k1_scaled(q);
    const double ratio = bessel_k0_scaled(q) / k1 + 1.0 / q;
    s.log_likelihood += -std::log(r) + std::log(k1) - alpha * d * d / (delta + r) + beta * d;
    const double g_mu = -beta + d / (r * r) + alpha * ratio * d / r;
    const double g_alpha = 1.0 / alpha + delta * alpha / gamma - ratio * r;
    const double g_beta = d - delta * beta / gamma;
    const double g_delta = 1.0 / delta + gamma - delta / (r * r) - alpha * ratio * delta / r;
    const std::array<double, 4> g = {jacobian[0] * g_mu, jacobian[1] * g_alpha + beta * g_beta,
                                     jacobian[2] * g_beta, jacobian[3] * g_delta};
    for (int i = 0; i < 4; ++i) {
      s.gradient[i] += g[i];
      for (int j = 0; j <= i; ++j) s.outer[4 * i + j] += g[i] * g[j];
    }
  }
  s.log_likelihood += (std::log(alpha * delta / std::numbers::pi) - delta * beta * beta / (alpha + gamma)) *
                      static_cast<double>(data.size());
  return s;
}

// Solves the symmetric positive definite system (lower triangle of a) x = b
// by Cholesky after diagonal scaling; false if a is not positive definite.
bool solve_spd4(std::array<double, 16> a, std::array<double, 4> b, std::array<double, 4>& x) {
  std::array<double, 4> scale{};
  for (int i = 0; i < 4; ++i) {
    if (!(a[5 * i] > 0.0) || !std::isfinite(a[5 * i])) return false;
    scale[i] = 1.0 / std::sqrt(a[5 * i]);
  }
  for (int i = 0; i < 4; ++i) {
    b[i] *= scale[i];
    for (int j = 0; j <= i; ++j) a[4 * i + j] *= scale[i] * scale[j];
  }
  for (int j = 0; j < 4; ++j) {
    double diag = a[5 * j];
    for (int k = 0; k < j; ++k) diag -= a[4 * j + k] * a[4 * j + k];
    if (!(diag > 1e-14)) return false;
    a[5 * j] = std::sqrt(diag);
    for (int i = j + 1; i < 4; ++i) {
      double v = a[4 * i + j];
      for (int k = 0; k < j; ++k) v -= a[4 * i + k] * a[4 * j + k];
      a[4 * i + j] = v / a[5 * j];
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < i; ++k) b[i] -= a[4 * i + k] * b[k];
    b[i] /= a[5 * i];
  }
  for (int i = 3; i >= 0; --i) {
    for (int k = i + 1; k < 4; ++k) b[i] -= a[4 * k + i] * b[k];
    b[i] /= a[5 * i];
  }
  for (int i = 0; i < 4; ++i) x[i] = b[i] * scale[i];
  return true;
}

struct AscentResult {
  NigParams params;
  double log_likelihood;
  int iterations;
  bool converged;
};

// BHHH ascent with step halving. Converged once the predicted gain
// g' B^-1 g falls below the tolerance.
AscentResult nig_bhhh(const NigParams& start, const NigCoordinates& coords, std::span<const double> data,
                      int max_iterations, double tolerance) {
  std::vector<double> t = coords.encode(start);
  NigParams p = start;
  NigScore s;
  try {
    s = nig_score(p, coords, data);
  } catch (const Error&) {
    return {start, -kInf, 0, false};
  }
  if (!std::isfinite(s.log_likelihood)) return {start, -kInf, 0, false};
  for (int it = 0; it < max_iterations; ++it) {
    std::array<double, 4> step{};
    if (!solve_spd4(s.outer, s.gradient, step)) return {p, s.log_likelihood, it, false};
    double gain = 0.0;
    for (int i = 0; i < 4; ++i) gain += s.gradient[i] * step[i];
    if (!(gain >= 0.0) || !std::isfinite(gain)) return {p, s.log_likelihood, it, false};
    if (gain <= tolerance) return {p, s.log_likelihood, it, true};
    bool moved = false;
    for (double length = 1.0; length > 1e-6; length *= 0.5) {
      std::vector<double> trial = t;
      for (int i = 0; i < 4; ++i) trial[i] += length * step[i];
      try {
        const NigParams q = coords.decode(trial);
        const NigScore sq = nig_score(q, coords, data);
        if (std::isfinite(sq.log_likelihood) && sq.log_likelihood >= s.log_likelihood) {
          t = std::move(trial);
          p = q;
          s = sq;
          moved = true;
          break;
        }
      } catch (const Error&) {
      }
    }
    if (!moved) return {p, s.log_likelihood, it + 1, false};
  }
  return {p, s.log_likelihood, max_iterations, false};
}

}  // namespace

NigParams nig_params_from_moments(const Moments& m) {
  const double skew2 = m.skewness * m.skewness;
  if (!(m.variance > 0.0) || !(m.excess_kurtosis > 5.0 / 3.0 * skew2)) {
    throw FeasibilityError("moment init infeasible: NIG needs excess kurtosis > (5/3) skewness^2 (" +
                           std::to_string(m.excess_kurtosis) + " vs " +
                           std::to_string(5.0 / 3.0 * skew2) + ")");
  }
  // With zeta = delta*gamma and rho = beta/alpha:
  //   kurt = 3(1 + 4 rho^2)/zeta, skew^2 = 9 rho^2/zeta.
  const double zeta = 3.0 / (m.excess_kurtosis - 4.0 / 3.0 * skew2);
  const double rho = std::copysign(std::sqrt(skew2 * zeta / 9.0), m.skewness);
  const double one_minus = 1.0 - rho * rho;
  const double alpha = std::sqrt(zeta / m.variance) / one_minus;
  const double beta = rho * alpha;
  const double gamma = alpha * std::sqrt(one_minus);
  const double delta = zeta / gamma;
  return NigParams(m.mean - delta * beta / gamma, alpha, beta, delta);
}

NigParams moment_init_nig(std::span<const double> data) {
  return nig_params_from_moments(sample_moments(data));
}

FitResult fit_nig_mle(std::span<const double> data, std::optional<NigParams> init,
                      const FitOptions& options) {
  require_size(data, 8, "fit_nig_mle");
  const Moments m = sample_moments(data);
  if (!(m.variance > 0.0)) throw DomainError("fit_nig_mle: degenerate data (all points equal)");
  const NigCoordinates coords{std::sqrt(m.variance)};

  std::string note;
  NigParams start = normal_limit_start(m);
  if (init) {
    start = *init;
  } else {
    try {
      start = moment_init_nig(data);
    } catch (const FeasibilityError&) {
      note = "moment init infeasible; started from the normal limit";
    }
  }

  const Objective negative_ll = [&](std::span<const double> t) {
    try {
      return -nig_log_likelihood(coords.decode(t), data);
    } catch (const Error&) {
      return kInf;
    }
  };

  // BHHH from the start; if it fails, Nelder-Mead followed by a BHHH polish.
  const int ascent_limit = std::min(options.max_iterations, 200);
  auto run = [&](const NigParams& from) {
    const AscentResult direct = nig_bhhh(from, coords, data, ascent_limit, options.tolerance);
    if (direct.converged) {
      const double ll = nig_log_likelihood(direct.params, data);
      return FitResult{direct.params, ll, ObjectiveKind::log_likelihood, true, direct.iterations, from, ll,
                       false, note};
    }
    const NelderMeadResult nm =
        nelder_mead_minimize(negative_ll, coords.encode(from), to_nm_options(options));
    FitResult r{coords.decode(nm.x), -nm.value, ObjectiveKind::log_likelihood, nm.converged,
                direct.iterations + nm.iterations, from, -nm.value, false, note};
    const AscentResult polish = nig_bhhh(std::get<NigParams>(r.params), coords, data, ascent_limit,
                                         options.tolerance);
    r.iterations += polish.iterations;
    if (polish.log_likelihood >= r.log_likelihood) {
      r.params = polish.params;
      r.objective = r.log_likelihood = nig_log_likelihood(polish.params, data);
      r.converged = r.converged || polish.converged;
    }
    if (!r.converged) r.note += (r.note.empty() ? "" : "; ") + std::string("optimizer stalled");
    return r;
  };

  FitResult result = run(start);
  // The normal law is a limit of the NIG family, so a fit that ends below
  // the normal likelihood is retried from the normal limit.
  const double normal_ll = fit_normal_mle(data).log_likelihood;
  if (result.log_likelihood < normal_ll) {
    FitResult retry = run(normal_limit_start(m));
    retry.iterations += result.iterations;
    if (retry.log_likelihood > result.log_likelihood) {
      retry.note += (retry.note.empty() ? "" : "; ") + std::string("restarted from the normal limit");
      result = retry;
    }
  }
  return result;
}

// ---- ECF ----------------------------------------------------------------------

EcfObjectiveConfig::EcfObjectiveConfig(std::vector<double> u_grid, std::vector<double> weights)
    : u_grid_(std::move(u_grid)), weights_(std::move(weights)) {
  const std::size_t n = u_grid_.size();
  if (n == 0 || weights_.size() != n) {
    throw InvalidParameter("EcfObjectiveConfig: u_grid and weights must be non-empty and equal length");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(u_grid_[j]) || u_grid_[j] == 0.0) {
      throw InvalidParameter("EcfObjectiveConfig: nodes must be finite and non-zero");
    }
    if (j > 0 && !(u_grid_[j] > u_grid_[j - 1])) {
      throw InvalidParameter("EcfObjectiveConfig: u_grid must be strictly increasing");
    }
    const double mirror = u_grid_[n - 1 - j];
    if (std::abs(u_grid_[j] + mirror) > 1e-12 * std::abs(u_grid_[j])) {
      throw InvalidParameter("EcfObjectiveConfig: u_grid must be symmetric about 0");
    }
    if (!std::isfinite(weights_[j]) || !(weights_[j] > 0.0)) {
      throw InvalidParameter("EcfObjectiveConfig: weights must be positive and finite");
    }
  }
}

complex empirical_chf(std::span<const double> data, double u) {
  complex sum = 0.0;
  for (double x : data) sum += std::polar(1.0, u * x);
  return sum / static_cast<double>(data.size());
}

EcfObjectiveConfig EcfObjectiveConfig::for_data(std::span<const double> data, std::size_t nodes) {
  require_size(data, 2, "EcfObjectiveConfig::for_data");
  if (nodes < 1) throw InvalidParameter("EcfObjectiveConfig::for_data: need at least one node");
  const double sd = std::sqrt(sample_cumulants(data).k2);
  if (!(sd > 0.0)) throw DomainError("EcfObjectiveConfig::for_data: degenerate data");

  // First crossing of |ECF| = 0.1: scan, then bisect.
  constexpr double kLevel = 0.1;
  const double guess = std::sqrt(2.0 * std::log(10.0)) / sd;
  const double step = guess / 20.0;
  double lo = 0.0;
  double hi = 0.0;
  for (int k = 1; k <= 2000; ++k) {
    const double u = k * step;
    if (std::abs(empirical_chf(data, u)) <= kLevel) {
      hi = u;
      break;
    }
    lo = u;
  }
  if (hi == 0.0) hi = lo;  // ECF never decays (lattice-like data): use the scan range
  else {
    for (int it = 0; it < 30; ++it) {
      const double mid = 0.5 * (lo + hi);
      (std::abs(empirical_chf(data, mid)) <= kLevel ? hi : lo) = mid;
    }
  }
  const double u_max = hi;
  const std::size_t half = nodes;
  std::vector<double> u(2 * nodes), w(2 * nodes);
  for (std::size_t j = 0; j < half; ++j) {
    const double value = u_max * static_cast<double>(j + 1) / static_cast<double>(half);
    const double weight = std::exp(-(value / u_max) * (value / u_max));
    u[half + j] = value;
    u[half - 1 - j] = -value;
    w[half + j] = weight;
    w[half - 1 - j] = weight;
  }
  return EcfObjectiveConfig(std::move(u), std::move(w));
}

EmpiricalChf::EmpiricalChf(std::span<const double> data, const EcfObjectiveConfig& config)
    : config_(config), values_(config.u_grid().size()) {
  if (data.empty()) throw InvalidParameter("EmpiricalChf: empty data");
  const auto& u = config_.u_grid();
  const std::size_t n = u.size();
  const std::size_t half = n / 2;
  const double inv_n = 1.0 / static_cast<double>(data.size());

  // Fast path: positive nodes j*du for j = 1..half, computed by powers of
  // exp(i du x); the negative half is the complex conjugate.
  bool lattice = n % 2 == 0;
  const double du = lattice ? u[half] : 0.0;
  for (std::size_t j = 0; lattice && j < half; ++j) {
    lattice = std::abs(u[half + j] - du * static_cast<double>(j + 1)) <= 1e-12 * u.back();
  }
  if (lattice) {
    std::vector<complex> acc(half, 0.0);
    for (double x : data) {
      const complex base = std::polar(1.0, du * x);
      complex power = base;
      for (std::size_t j = 0; j < half; ++j) {
        acc[j] += power;
        power *= base;
      }
    }
    for (std::size_t j = 0; j < half; ++j) {
      values_[half + j] = acc[j] * inv_n;
      values_[half - 1 - j] = std::conj(values_[half + j]);
    }
    return;
  }
  for (std::size_t j = 0; j < n; ++j) values_[j] = empirical_chf(data, u[j]);
}

double ecf_objective(const CharacteristicFunction& model, const EmpiricalChf& ecf) {
  const auto& u = ecf.config().u_grid();
  const auto& w = ecf.config().weights();
  double total = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) total += w[j] * std::norm(ecf.values()[j] - model(u[j]));
  return total;
}

double ecf_objective(const CharacteristicFunction& model, std::span<const double> data,
                     const EcfObjectiveConfig& config) {
  return ecf_objective(model, EmpiricalChf(data, config));
}

// ---- NCIG ---------------------------------------------------------------------

namespace {

// Levenberg-Marquardt on standardised cumulant residuals.
std::optional<NcigParams> solve_from_guess(const Cumulants& target, double mu_guess) {
  const double sd = std::sqrt(target.k2);
  const double exkurt = target.k4 / (target.k2 * target.k2);
  if (!(exkurt > 0.0)) return std::nullopt;

  const std::array<double, 4> goal = {target.k1 / sd, 1.0, target.k3 / (sd * sd * sd),
                                      target.k4 / (target.k2 * target.k2)};
  const NcigCoordinates coords{sd};

  auto residual = [&](std::span<const double> t, std::array<double, 4>& r) {
    try {
      const Cumulants c = ncig_cumulants(coords.decode(t));
      r = {c.k1 / sd - goal[0], c.k2 / target.k2 - goal[1], c.k3 / (sd * sd * sd) - goal[2],
           c.k4 / (target.k2 * target.k2) - goal[3]};
      for (double v : r) {
        if (!std::isfinite(v)) return false;
      }
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  auto norm2 = [](const std::array<double, 4>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
  };

  // Leading-order guess with nu ~ 0: var = sigma2 mu^2, exkurt = 3(1+mu)/lambda.
  std::vector<double> theta = coords.encode(NcigParams(3.0 * (1.0 + mu_guess) / exkurt, mu_guess,
                                                       target.k1 / (mu_guess * mu_guess),
                                                       target.k2 / (mu_guess * mu_guess)));
  std::array<double, 4> r{};
  if (!residual(theta, r)) return std::nullopt;
  double damping = 1e-3;
  constexpr double kStep = 1e-4;
  for (int iter = 0; iter < 300; ++iter) {
    if (std::sqrt(norm2(r)) < 1e-11) return coords.decode(theta);
    std::array<std::array<double, 4>, 4> jac{};  // jac[i][k] = d r_i / d theta_k
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<double> plus = theta, minus = theta;
      plus[k] += kStep;
      minus[k] -= kStep;
      std::array<double, 4> rp{}, rm{};
      if (!residual(plus, rp) || !residual(minus, rm)) return std::nullopt;
      for (std::size_t i = 0; i < 4; ++i) jac[i][k] = (rp[i] - rm[i]) / (2.0 * kStep);
    }
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      // (J^T J + damping diag) step = -J^T r, solved by Gaussian elimination.
      std::array<std::array<double, 5>, 4> a{};
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
          double s = 0.0;
          for (std::size_t m = 0; m < 4; ++m) s += jac[m][i] * jac[m][k];
          a[i][k] = s;
        }
        a[i][i] *= 1.0 + damping;
        a[i][i] += 1e-300;
        double g = 0.0;
        for (std::size_t m = 0; m < 4; ++m) g += jac[m][i] * r[m];
        a[i][4] = -g;
      }
      bool singular = false;
      for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < 4; ++row) {
          if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        }
        if (a[pivot][col] == 0.0) {
          singular = true;
          break;
        }
        std::swap(a[pivot], a[col]);
        for (std::size_t row = 0; row < 4; ++row) {
          if (row == col) continue;
          const double factor = a[row][col] / a[col][col];
          for (std::size_t k = col; k < 5; ++k) a[row][k] -= factor * a[col][k];
        }
      }
      if (singular) {
        damping *= 10.0;
        continue;
      }
      std::vector<double> trial = theta;
      for (std::size_t k = 0; k < 4; ++k) trial[k] += a[k][4] / a[k][k];
      std::array<double, 4> rt{};
      if (residual(trial, rt) && norm2(rt) < norm2(r)) {
        theta = std::move(trial);
        r = rt;
        damping = std::max(damping / 10.0, 1e-12);
        improved = true;
      } else {
        damping *= 10.0;
      }
    }
    if (!improved) break;
  }
  if (std::sqrt(norm2(r)) < 1e-9) return coords.decode(theta);
  return std::nullopt;
}

}  // namespace

std::optional<NcigParams> ncig_params_from_cumulants(const Cumulants& c) {
  if (!(c.k2 > 0.0)) return std::nullopt;
  for (double mu_guess : {0.25, 0.1, 0.5, 1.0, 2.0}) {
    if (auto solved = solve_from_guess(c, mu_guess)) return solved;
  }
  return std::nullopt;
}

NcigMomentInit moment_init_ncig_detailed(std::span<const double> data) {
  require_size(data, 16, "moment_init_ncig");
  const Cumulants c = sample_cumulants(data);
  if (!(c.k2 > 0.0)) throw DomainError("moment_init_ncig: degenerate data (all points equal)");
  if (auto solved = ncig_params_from_cumulants(c)) return {*solved, true};
  // Fallback: lambda = 100, mu = 0.25; nu and sigma2 rescaled by the clock
  // mean E[V] = mu^2 so that the mean and variance match.
  constexpr double kLambda = 100.0;
  constexpr double kMu = 0.25;
  const double clock_mean = kMu * kMu;
  return {NcigParams(kLambda, kMu, c.k1 / clock_mean, c.k2 / clock_mean), false};
}

NcigParams moment_init_ncig(std::span<const double> data) {
  return moment_init_ncig_detailed(data).params;
}

double ncig_fft_log_likelihood(const NcigParams& p, std::span<const double> data) {
  const InversionGrid grid = covering_grid(ncig_moments(p), data);
  const GriddedDensity density =
      invert_chf([&p](double u) { return ncig_chf(p, u); }, grid);
  return log_likelihood_from_grid(density, data);
}

FitResult fit_ncig_ecf(std::span<const double> data, std::optional<NcigParams> init,
                       const EcfObjectiveConfig& config, const FitOptions& options) {
  require_size(data, 16, "fit_ncig_ecf");
  std::string note;
  NcigParams start = init ? *init : [&] {
    const NcigMomentInit mi = moment_init_ncig_detailed(data);
    if (!mi.solved) note = "cumulant solve failed; fallback start";
    return mi.params;
  }();

  const EmpiricalChf ecf(data, config);
  const double sd = std::sqrt(sample_cumulants(data).k2);
  const NcigCoordinates coords{sd};

  // The ECF barely constrains mu near the normal limit; without a box the
  // simplex drifts to mu ~ 1e-14, nu ~ 1e25. Search is confined to
  // mu in [1e-3, 1e3] and lambda / (1 + mu) <= 1e8.
  const double log_mu_lo = std::log(1e-3), log_mu_hi = std::log(1e3), log_shape_hi = std::log(1e8);
  const auto in_box = [&](std::span<const double> t) {
    return t[1] >= log_mu_lo && t[1] <= log_mu_hi && t[0] <= log_shape_hi;
  };
  std::vector<double> t0 = coords.encode(start);
  if (!in_box(t0)) {
    t0[1] = std::clamp(t0[1], log_mu_lo, log_mu_hi);
    t0[0] = std::min(t0[0], log_shape_hi);
    // nu mu^2 and sigma2 mu^2 are coordinates, so mean and variance stay put
    start = coords.decode(t0);
    note += (note.empty() ? "" : "; ") + std::string("start moved into the search box");
  }

  const Objective distance = [&](std::span<const double> t) {
    if (!in_box(t)) return kInf;
    try {
      return ecf_distance(coords.decode(t), ecf);
    } catch (const Error&) {
      return kInf;
    }
  };
  const NelderMeadResult nm = nelder_mead_minimize(distance, t0, to_nm_options(options));
  const NcigParams best = coords.decode(nm.x);

  FitResult r{best, nm.value, ObjectiveKind::ecf_distance, nm.converged, nm.iterations,
              start, -kInf, false, note};
  if (!nm.converged) r.note += (r.note.empty() ? "" : "; ") + std::string("optimizer stalled");
  try {
    r.log_likelihood = ncig_fft_log_likelihood(best, data);
  } catch (const Error& e) {
    r.note += (r.note.empty() ? "" : "; ") + std::string("FFT likelihood failed: ") + e.what();
  }
  return r;
}

std::size_t select_highest_likelihood(std::span<const FitResult> fits) {
  if (fits.empty()) throw InvalidParameter("select_highest_likelihood: no fits");
  std::size_t best = 0;
  for (std::size_t i = 1; i < fits.size(); ++i) {
    if (fits[i].log_likelihood > fits[best].log_likelihood) best = i;
  }
  return best;
}

NcigSelection fit_ncig_multistart(std::span<const double> data, const EcfObjectiveConfig& config,
                                  double nig_log_likelihood, int starts,
                                  const FitOptions& options) {
  if (starts < 1) throw InvalidParameter("fit_ncig_multistart: need at least one start");
  const NcigParams base = moment_init_ncig(data);
  NcigSelection selection;
  selection.nig_log_likelihood = nig_log_likelihood;
  for (int k = 0; k < starts; ++k) {
    NcigParams start = base;
    if (k > 0) {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k));
      std::normal_distribution<double> z(0.0, 1.0);
      const double mu = base.mu() * std::exp(0.3 * z(rng));
      // Keep the clock-mean scaling of nu and sigma2 so mean and variance stay put.
      const double rescale = (base.mu() * base.mu()) / (mu * mu);
      const double lambda = base.lambda() * std::exp(0.5 * z(rng));
      const double sigma2 = base.sigma2() * rescale * std::exp(0.1 * z(rng));
      const double nu = base.nu() * rescale + 0.25 * std::abs(base.nu()) * z(rng);
      start = NcigParams(lambda, mu, nu, sigma2);
    }
    selection.starts.push_back(fit_ncig_ecf(data, start, config, options));
  }
  selection.best = select_highest_likelihood(selection.starts);
  selection.accepted = selection.starts[selection.best].log_likelihood > nig_log_likelihood;
  for (auto& fit : selection.starts) fit.below_nig_baseline = !(fit.log_likelihood > nig_log_likelihood);
  return selection;
}

// ---- bootstrap ----------------------------------------------------------------

std::vector<double> bootstrap_standard_errors(std::span<const double> data,
                                              const Estimator& estimator, int resamples,
                                              std::uint64_t seed) {
  if (resamples < 2) throw InvalidParameter("bootstrap_standard_errors: need >= 2 resamples");
  if (data.empty()) throw InvalidParameter("bootstrap_standard_errors: empty data");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  std::vector<double> resample(data.size());
  std::vector<double> sum, sum_sq;
  for (int b = 0; b < resamples; ++b) {
    for (auto& x : resample) x = data[pick(rng)];
    const std::vector<double> est = estimator(resample);
    if (sum.empty()) {
      sum.assign(est.size(), 0.0);
      sum_sq.assign(est.size(), 0.0);
    }
    for (std::size_t i = 0; i < est.size(); ++i) {
      sum[i] += est[i];
      sum_sq[i] += est[i] * est[i];
    }
  }
  std::vector<double> se(sum.size());
  const double r = static_cast<double>(resamples);
  for (std::size_t i = 0; i < se.size(); ++i) {
    const double mean = sum[i] / r;
    se[i] = std::sqrt(std::max(0.0, (sum_sq[i] - r * mean * mean) / (r - 1.0)));
  }
  return se;
}

}  // namespace levyprem
