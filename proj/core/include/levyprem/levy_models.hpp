#pragma once

// Heavy-tailed Levy models for log growth rates: the inverse Gaussian (IG)
// subordinator, the normal inverse Gaussian (NIG) law, the doubly
// subordinated IG clock V = T(U(t)) and the normal compound inverse
// Gaussian (NCIG) law Z = B(V).
//
// Parameter types validate on construction and are immutable afterwards;
// every free function below assumes validated parameters.

#include <complex>
#include <cstdint>
#include <vector>

namespace levyprem {

using complex = std::complex<double>;

struct Moments {
  double mean = 0.0;
  double variance = 1.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

/// First four cumulants; `to_moments` standardises them.
struct Cumulants {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
};
Moments to_moments(const Cumulants& c);

class NormalParams {
 public:
  NormalParams(double mu, double sigma);
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }

 private:
  double mu_;
  double sigma_;
};

/// NIG(mu, alpha, beta, delta) with alpha^2 > beta^2 and delta > 0.
class NigParams {
 public:
  NigParams(double mu, double alpha, double beta, double delta);
  double mu() const { return mu_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double delta() const { return delta_; }
  /// sqrt(alpha^2 - beta^2)
  double gamma() const { return gamma_; }

 private:
  double mu_;
  double alpha_;
  double beta_;
  double delta_;
  double gamma_;
};

/// IG law with shape lambda and mean mu.
class IgParams {
 public:
  IgParams(double lambda, double mu);
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }

 private:
  double lambda_;
  double mu_;
};

/// V(1) = T(U(1)) for independent IG subordinators T (outer) and U (inner).
struct DoubleIgParams {
  IgParams outer;
  IgParams inner;
};

/// NCIG(lambda, mu, nu, sigma2): Brownian motion with drift nu and
/// variance sigma2 run on the clock T(U(t)) with T(1), U(1) ~ IG(lambda, mu).
class NcigParams {
 public:
  NcigParams(double lambda, double mu, double nu, double sigma2);
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double nu() const { return nu_; }
  double sigma2() const { return sigma2_; }
  DoubleIgParams clock() const { return {IgParams(lambda_, mu_), IgParams(lambda_, mu_)}; }

 private:
  double lambda_;
  double mu_;
  double nu_;
  double sigma2_;
};

// ---- normal -------------------------------------------------------------

double normal_log_pdf(const NormalParams& p, double x);
double normal_cdf(const NormalParams& p, double x);
complex normal_chf(const NormalParams& p, double t);
Moments normal_moments(const NormalParams& p);

// ---- NIG ----------------------------------------------------------------

double nig_log_pdf(const NigParams& p, double x);
double nig_pdf(const NigParams& p, double x);
complex nig_chf(const NigParams& p, double t);
/// ln E[e^{sX}]; FeasibilityError when (beta + s)^2 >= alpha^2.
double nig_mgf_log(const NigParams& p, double s);
Moments nig_moments(const NigParams& p);

// ---- IG and the doubly subordinated clock ------------------------------

double ig_pdf(const IgParams& p, double x);
/// -ln E[e^{-s T(1)}], s >= 0.
double ig_laplace_exponent(const IgParams& p, double s);
/// Complex extension of the Laplace exponent (principal branch), used for
/// subordination: psi_{B(T)}(u) = phi_T(psi_B(u)).
complex ig_laplace_exponent(const IgParams& p, complex s);
Cumulants ig_cumulants(const IgParams& p);

/// ln E[e^{v V(1)}]; FeasibilityError naming the nested radicand that went
/// negative ("inner" or "outer").
double double_ig_mgf_log(const DoubleIgParams& p, double v);
/// phi_V(s) = phi_U(phi_T(s)), the Laplace exponent of V(1).
complex double_ig_laplace_exponent(const DoubleIgParams& p, complex s);
/// Density of V(1) by adaptive quadrature over the inner clock value.
/// Slow; meant as an oracle. Throws ConvergenceError if 1e-8 absolute
/// accuracy is not reached.
double double_ig_pdf(const DoubleIgParams& p, double x);
Cumulants double_ig_cumulants(const DoubleIgParams& p);

// ---- NCIG ---------------------------------------------------------------

/// psi_Z(u) = -ln E[e^{iuZ(1)}].
complex ncig_levy_exponent(const NcigParams& p, double u);
complex ncig_chf(const NcigParams& p, double u);
/// ln E[e^{sZ(1)}]; FeasibilityError naming the violated radicand level.
double ncig_mgf_log(const NcigParams& p, double s);
Cumulants ncig_cumulants(const NcigParams& p);
Moments ncig_moments(const NcigParams& p);

// ---- samplers -------------------------------------------------------------
// Deterministic for a given seed; each call owns its generator.

std::vector<double> ig_sample(const IgParams& p, std::size_t n, std::uint64_t seed);
std::vector<double> double_ig_sample(const DoubleIgParams& p, std::size_t n, std::uint64_t seed);
std::vector<double> normal_sample(const NormalParams& p, std::size_t n, std::uint64_t seed);
std::vector<double> nig_sample(const NigParams& p, std::size_t n, std::uint64_t seed);
std::vector<double> ncig_sample(const NcigParams& p, std::size_t n, std::uint64_t seed);

}  // namespace levyprem
