#include "levyprem/levy_models.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "levyprem/errors.hpp"
#include "levyprem/quadrature.hpp"
#include "levyprem/special_functions.hpp"

namespace levyprem {
namespace {

bool finite_all(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

// Truncated power series c[0] + c[1] s + ... + c[4] s^4.
using Series = std::array<double, 5>;

Series multiply(const Series& a, const Series& b) {
  Series out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// outer(inner(s)) for an inner series with zero constant term.
Series compose(const Series& outer, const Series& inner) {
  Series out{};
  out[0] = outer[0];
  Series power{};
  power[0] = 1.0;
  for (std::size_t k = 1; k < outer.size(); ++k) {
    power = multiply(power, inner);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += outer[k] * power[j];
  }
  return out;
}

// Cumulant generating function of IG(lambda, mu) around 0.
Series ig_cgf_series(const IgParams& p) {
  const double c = 2.0 * p.mu() * p.mu() / p.lambda();
  const double scale = p.lambda() / p.mu();
  // 1 - sqrt(1 - y) = y/2 + y^2/8 + y^3/16 + 5 y^4/128
  return {0.0, scale * c / 2.0, scale * c * c / 8.0, scale * c * c * c / 16.0,
          scale * 5.0 * c * c * c * c / 128.0};
}

Cumulants cumulants_from_cgf(const Series& s) {
  return {s[1], 2.0 * s[2], 6.0 * s[3], 24.0 * s[4]};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// (lambda/mu)(1 - sqrt(1 - 2 mu^2 v / lambda)), the IG log-MGF, written
// without cancellation. Sets radicand to the value under the root.
double ig_mgf_log_stable(double lambda, double mu, double v, double& radicand) {
  const double c = 2.0 * mu * mu / lambda;
  radicand = 1.0 - c * v;
  if (radicand < 0.0) return std::nan("");
  return 2.0 * mu * v / (1.0 + std::sqrt(radicand));
}

}  // namespace

Moments to_moments(const Cumulants& c) {
  Moments m;
  m.mean = c.k1;
  m.variance = c.k2;
  m.skewness = c.k3 / std::pow(c.k2, 1.5);
  m.excess_kurtosis = c.k4 / (c.k2 * c.k2);
  return m;
}

NormalParams::NormalParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!finite_all({mu, sigma}) || !(sigma > 0.0)) {
    throw InvalidParameter("NormalParams: require finite mu and sigma > 0 (mu=" + fmt(mu) +
                           ", sigma=" + fmt(sigma) + ")");
  }
}

NigParams::NigParams(double mu, double alpha, double beta, double delta)
    : mu_(mu), alpha_(alpha), beta_(beta), delta_(delta) {
  if (!finite_all({mu, alpha, beta, delta}) || !(delta > 0.0) ||
      !(alpha * alpha > beta * beta)) {
    throw InvalidParameter("NigParams: require alpha^2 > beta^2 and delta > 0 (mu=" + fmt(mu) +
                           ", alpha=" + fmt(alpha) + ", beta=" + fmt(beta) +
                           ", delta=" + fmt(delta) + ")");
  }
  gamma_ = std::sqrt((alpha - beta) * (alpha + beta));
}

IgParams::IgParams(double lambda, double mu) : lambda_(lambda), mu_(mu) {
  if (!finite_all({lambda, mu}) || !(lambda > 0.0) || !(mu > 0.0)) {
    throw InvalidParameter("IgParams: require lambda > 0 and mu > 0 (lambda=" + fmt(lambda) +
                           ", mu=" + fmt(mu) + ")");
  }
}

NcigParams::NcigParams(double lambda, double mu, double nu, double sigma2)
    : lambda_(lambda), mu_(mu), nu_(nu), sigma2_(sigma2) {
  if (!finite_all({lambda, mu, nu, sigma2}) || !(lambda > 0.0) || !(mu > 0.0) ||
      !(sigma2 > 0.0)) {
    throw InvalidParameter("NcigParams: require lambda > 0, mu > 0, sigma2 > 0 (lambda=" +
                           fmt(lambda) + ", mu=" + fmt(mu) + ", nu=" + fmt(nu) +
                           ", sigma2=" + fmt(sigma2) + ")");
  }
}

// ---- normal -------------------------------------------------------------

double normal_log_pdf(const NormalParams& p, double x) {
  const double z = (x - p.mu()) / p.sigma();
  return -0.5 * z * z - std::log(p.sigma()) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double normal_cdf(const NormalParams& p, double x) {
  return std_normal_cdf((x - p.mu()) / p.sigma());
}

complex normal_chf(const NormalParams& p, double t) {
  const double s = p.sigma();
  return std::exp(complex(-0.5 * s * s * t * t, p.mu() * t));
}

Moments normal_moments(const NormalParams& p) {
  return {p.mu(), p.sigma() * p.sigma(), 0.0, 0.0};
}

// ---- NIG ----------------------------------------------------------------

double nig_log_pdf(const NigParams& p, double x) {
  const double d = x - p.mu();
  const double delta = p.delta();
  const double alpha = p.alpha();
  const double r = std::hypot(delta, d);
  // delta*gamma + beta*d - alpha*r, rearranged to avoid cancellation when
  // alpha*r and delta*gamma are both large.
  const double exponent = -delta * p.beta() * p.beta() / (alpha + p.gamma()) -
                          alpha * d * d / (delta + r) + p.beta() * d;
  return std::log(alpha * delta / std::numbers::pi) - std::log(r) +
         log_bessel_k1_scaled(alpha * r) + exponent;
}

double nig_pdf(const NigParams& p, double x) { return std::exp(nig_log_pdf(p, x)); }

complex nig_chf(const NigParams& p, double t) {
  const complex shifted(p.beta(), t);
  const complex root = std::sqrt(p.alpha() * p.alpha() - shifted * shifted);
  return std::exp(complex(0.0, p.mu() * t) + p.delta() * (p.gamma() - root));
}

double nig_mgf_log(const NigParams& p, double s) {
  const double shifted = p.beta() + s;
  const double radicand = (p.alpha() - shifted) * (p.alpha() + shifted);
  if (!(radicand > 0.0)) {
    throw FeasibilityError("MGF argument outside NIG feasibility region: s=" + fmt(s) +
                           " gives alpha^2 - (beta+s)^2 = " + fmt(radicand));
  }
  // gamma - sqrt(alpha^2 - (beta+s)^2) = s (2 beta + s) / (gamma + root)
  const double root = std::sqrt(radicand);
  return p.mu() * s + p.delta() * s * (2.0 * p.beta() + s) / (p.gamma() + root);
}

Moments nig_moments(const NigParams& p) {
  const double alpha = p.alpha();
  const double beta = p.beta();
  const double delta = p.delta();
  const double gamma = p.gamma();
  Moments m;
  m.mean = p.mu() + delta * beta / gamma;
  m.variance = delta * alpha * alpha / (gamma * gamma * gamma);
  m.skewness = 3.0 * beta / (alpha * std::sqrt(delta * gamma));
  m.excess_kurtosis = 3.0 * (1.0 + 4.0 * beta * beta / (alpha * alpha)) / (delta * gamma);
  return m;
}

// ---- IG -------------------------------------------------------------------

double ig_pdf(const IgParams& p, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("ig_pdf: x must be finite and > 0, got " + fmt(x));
  }
  const double lambda = p.lambda();
  const double mu = p.mu();
  const double dev = x - mu;
  return std::sqrt(lambda / (2.0 * std::numbers::pi * x * x * x)) *
         std::exp(-lambda * dev * dev / (2.0 * mu * mu * x));
}

double ig_laplace_exponent(const IgParams& p, double s) {
  const double radicand = 1.0 + 2.0 * p.mu() * p.mu() * s / p.lambda();
  if (!(radicand >= 0.0)) {
    throw DomainError("ig_laplace_exponent: 1 + 2 mu^2 s / lambda < 0 at s=" + fmt(s));
  }
  return 2.0 * p.mu() * s / (1.0 + std::sqrt(radicand));
}

complex ig_laplace_exponent(const IgParams& p, complex s) {
  const complex radicand = 1.0 + 2.0 * p.mu() * p.mu() * s / p.lambda();
  return 2.0 * p.mu() * s / (1.0 + std::sqrt(radicand));
}

Cumulants ig_cumulants(const IgParams& p) { return cumulants_from_cgf(ig_cgf_series(p)); }

double double_ig_mgf_log(const DoubleIgParams& p, double v) {
  double inner_radicand = 0.0;
  const double outer_arg =
      ig_mgf_log_stable(p.outer.lambda(), p.outer.mu(), v, inner_radicand);
  if (inner_radicand < 0.0) {
    throw FeasibilityError("nested radicand negative at inner level: 1 - 2 muT^2 v / lambdaT = " +
                           fmt(inner_radicand) + " at v=" + fmt(v));
  }
  double outer_radicand = 0.0;
  const double result =
      ig_mgf_log_stable(p.inner.lambda(), p.inner.mu(), outer_arg, outer_radicand);
  if (outer_radicand < 0.0) {
    throw FeasibilityError("nested radicand negative at outer level: radicand = " +
                           fmt(outer_radicand) + " at v=" + fmt(v));
  }
  return result;
}

complex double_ig_laplace_exponent(const DoubleIgParams& p, complex s) {
  return ig_laplace_exponent(p.inner, ig_laplace_exponent(p.outer, s));
}

double double_ig_pdf(const DoubleIgParams& p, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("double_ig_pdf: x must be finite and > 0, got " + fmt(x));
  }
  const double lt = p.outer.lambda();
  const double mt = p.outer.mu();
  const double lu = p.inner.lambda();
  const double mu_u = p.inner.mu();
  // Given U(1) = u the outer clock is IG(lt u^2, mt u), whose density
  // carries a factor u; combined with the IG density of U this leaves
  // u^{-1/2} under the integral.
  const double prefactor = std::sqrt(lt * lu / (x * x * x)) / (2.0 * std::numbers::pi);
  auto integrand = [&](double y) {
    const double u = mu_u * y;
    if (u <= 0.0) return 0.0;
    const double a = x - mt * u;
    const double b = u - mu_u;
    const double expo = -lt * a * a / (2.0 * mt * mt * x) - lu * b * b / (2.0 * mu_u * mu_u * u);
    return mu_u / std::sqrt(u) * std::exp(expo);
  };
  const double abs_tol = 1e-9 / prefactor;
  const QuadratureResult q = integrate_to_infinity(integrand, 0.0, abs_tol, 1e-12, 20000);
  const double value = prefactor * q.value;
  if (!q.converged && prefactor * q.error_estimate > 1e-8) {
    throw ConvergenceError("double_ig_pdf: quadrature did not reach 1e-8 at x=" + fmt(x));
  }
  return value;
}

Cumulants double_ig_cumulants(const DoubleIgParams& p) {
  return cumulants_from_cgf(compose(ig_cgf_series(p.inner), ig_cgf_series(p.outer)));
}

// ---- NCIG -------------------------------------------------------------------

complex ncig_levy_exponent(const NcigParams& p, double u) {
  const double lambda = p.lambda();
  const double mu = p.mu();
  const double c = 2.0 * mu * mu / lambda;
  const complex w(-0.5 * p.sigma2() * u * u, u * p.nu());  // iu nu - sigma2 u^2 / 2
  const complex inner = 1.0 - c * w;
  // 1 - sqrt(inner) and 1 - sqrt(outer) in cancellation-free form.
  const complex q = c * w / (1.0 + std::sqrt(inner));
  const complex outer = 1.0 - 2.0 * mu * q;
  return -2.0 * lambda * q / (1.0 + std::sqrt(outer));
}

complex ncig_chf(const NcigParams& p, double u) { return std::exp(-ncig_levy_exponent(p, u)); }

double ncig_mgf_log(const NcigParams& p, double s) {
  const double lambda = p.lambda();
  const double mu = p.mu();
  const double v = s * p.nu() + 0.5 * p.sigma2() * s * s;
  const double c = 2.0 * mu * mu / lambda;
  const double inner = 1.0 - c * v;
  if (inner < 0.0) {
    throw FeasibilityError("NCIG MGF: inner radicand 1 - (2 mu^2/lambda)(s nu + sigma2 s^2/2) = " +
                           fmt(inner) + " < 0 at s=" + fmt(s));
  }
  const double q = c * v / (1.0 + std::sqrt(inner));
  const double outer = 1.0 - 2.0 * mu * q;
  if (outer < 0.0) {
    throw FeasibilityError("NCIG MGF: outer radicand 1 - 2 mu (1 - sqrt(inner)) = " + fmt(outer) +
                           " < 0 at s=" + fmt(s));
  }
  return 2.0 * lambda * q / (1.0 + std::sqrt(outer));
}

Cumulants ncig_cumulants(const NcigParams& p) {
  const IgParams ig(p.lambda(), p.mu());
  const Series clock = compose(ig_cgf_series(ig), ig_cgf_series(ig));
  const Series brownian{0.0, p.nu(), 0.5 * p.sigma2(), 0.0, 0.0};
  return cumulants_from_cgf(compose(clock, brownian));
}

Moments ncig_moments(const NcigParams& p) { return to_moments(ncig_cumulants(p)); }

}  // namespace levyprem
