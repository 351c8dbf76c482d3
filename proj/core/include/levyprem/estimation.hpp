#pragma once

// Parameter estimation: closed-form normal MLE, NIG maximum likelihood by
// simplex search, method-of-moments starts, and empirical characteristic
// function (ECF) fitting of the NCIG model with FFT-based likelihoods.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "levyprem/density_inversion.hpp"
#include "levyprem/levy_models.hpp"

namespace levyprem {

using ModelParams = std::variant<NormalParams, NigParams, NcigParams>;

enum class ObjectiveKind {
  log_likelihood,  // higher is better
  ecf_distance,    // lower is better
};

struct FitResult {
  ModelParams params;
  /// Log-likelihood or ECF distance, per objective_kind.
  double objective = 0.0;
  ObjectiveKind objective_kind = ObjectiveKind::log_likelihood;
  bool converged = false;
  int iterations = 0;
  ModelParams init;
  /// Log-likelihood of the fitted model; FFT-based for NCIG.
  double log_likelihood = 0.0;
  /// Set by the NCIG selection rule when the likelihood does not beat NIG.
  bool below_nig_baseline = false;
  std::string note;
};

struct FitOptions {
  int max_iterations = 5000;
  double tolerance = 1e-8;
  double initial_step = 0.1;
};

Moments sample_moments(std::span<const double> data);
Cumulants sample_cumulants(std::span<const double> data);

// ---- normal ---------------------------------------------------------------

FitResult fit_normal_mle(std::span<const double> data);
double normal_log_likelihood(const NormalParams& p, std::span<const double> data);

// ---- NIG ------------------------------------------------------------------

double nig_log_likelihood(const NigParams& p, std::span<const double> data);

/// NIG parameters whose analytic moments equal `m`. Throws FeasibilityError
/// unless excess kurtosis > (5/3) skewness^2.
NigParams nig_params_from_moments(const Moments& m);
NigParams moment_init_nig(std::span<const double> data);

FitResult fit_nig_mle(std::span<const double> data, std::optional<NigParams> init = std::nullopt,
                      const FitOptions& options = {});

// ---- ECF ------------------------------------------------------------------

/// Frequencies u_j (strictly increasing, symmetric about 0, 0 excluded) and
/// positive finite weights.
class EcfObjectiveConfig {
 public:
  EcfObjectiveConfig(std::vector<double> u_grid, std::vector<double> weights);

  /// `nodes` equally spaced frequencies in (0, u_max] mirrored to the
  /// negatives, with |ECF(u_max)| ~ 0.1 and weights exp(-(u/u_max)^2).
  static EcfObjectiveConfig for_data(std::span<const double> data, std::size_t nodes = 40);

  const std::vector<double>& u_grid() const { return u_grid_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> u_grid_;
  std::vector<double> weights_;
};

/// (1/n) sum_k exp(i u x_k) at every node of a config.
class EmpiricalChf {
 public:
  EmpiricalChf(std::span<const double> data, const EcfObjectiveConfig& config);

  const EcfObjectiveConfig& config() const { return config_; }
  const std::vector<complex>& values() const { return values_; }

 private:
  EcfObjectiveConfig config_;
  std::vector<complex> values_;
};

complex empirical_chf(std::span<const double> data, double u);

/// sum_j w_j |ECF(u_j) - chf(u_j)|^2
double ecf_objective(const CharacteristicFunction& model, std::span<const double> data,
                     const EcfObjectiveConfig& config);
double ecf_objective(const CharacteristicFunction& model, const EmpiricalChf& ecf);

// ---- NCIG -----------------------------------------------------------------

struct NcigMomentInit {
  NcigParams params;
  /// False when the cumulant solve failed and the fallback start was used.
  bool solved = false;
};

/// Parameters whose cumulants match c (Levenberg-Marquardt from several
/// starts); nullopt when no start converges.
std::optional<NcigParams> ncig_params_from_cumulants(const Cumulants& c);

NcigMomentInit moment_init_ncig_detailed(std::span<const double> data);
NcigParams moment_init_ncig(std::span<const double> data);

/// FFT log-likelihood of an NCIG model on a grid covering the data.
double ncig_fft_log_likelihood(const NcigParams& p, std::span<const double> data);

/// The simplex search is confined to mu in [1e-3, 1e3] and
/// lambda / (1 + mu) <= 1e8; starts outside are moved onto the box.
FitResult fit_ncig_ecf(std::span<const double> data, std::optional<NcigParams> init,
                       const EcfObjectiveConfig& config, const FitOptions& options = {});

struct NcigSelection {
  std::vector<FitResult> starts;
  std::size_t best = 0;
  double nig_log_likelihood = 0.0;
  /// The best start's likelihood exceeds the NIG baseline.
  bool accepted = false;
};

/// Index of the fit with the largest log_likelihood; ties go to the lower index.
std::size_t select_highest_likelihood(std::span<const FitResult> fits);

/// Multi-start ECF fitting: start 0 is the moment init, the rest are
/// deterministic jitters of it. The start with the largest FFT likelihood
/// wins and is accepted only if it beats `nig_log_likelihood`.
NcigSelection fit_ncig_multistart(std::span<const double> data, const EcfObjectiveConfig& config,
                                  double nig_log_likelihood, int starts = 8,
                                  const FitOptions& options = {});

// ---- bootstrap --------------------------------------------------------------

using Estimator = std::function<std::vector<double>(std::span<const double>)>;

/// Standard deviation of each estimator component over `resamples`
/// with-replacement resamples of `data`.
std::vector<double> bootstrap_standard_errors(std::span<const double> data,
                                              const Estimator& estimator, int resamples = 200,
                                              std::uint64_t seed = 2024);

std::vector<double> to_vector(const ModelParams& p);

}  // namespace levyprem
