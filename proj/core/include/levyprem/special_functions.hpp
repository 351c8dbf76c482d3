#pragma once

// Scalar special functions used by the NIG density, the normal model and
// the goodness-of-fit p-values. All functions are pure and reentrant.

namespace levyprem {

/// Modified Bessel function of the second kind, order 1. Throws DomainError
/// for x <= 0 or non-finite x. Underflows to 0 beyond x ~ 745.
double bessel_k1(double x);

/// e^x * K1(x); finite for every positive x.
double bessel_k1_scaled(double x);

/// e^x * K0(x) for x > 0.
double bessel_k0_scaled(double x);

/// ln(e^x K1(x)); the NIG log-density works with this form.
double log_bessel_k1_scaled(double x);

/// ln K1(x) without intermediate underflow (x up to 1e6 and beyond).
double log_bessel_k1(double x);

double std_normal_pdf(double x);
double std_normal_cdf(double x);

/// Inverse of std_normal_cdf on (0,1); throws DomainError outside.
double std_normal_quantile(double p);

/// Upper tail P(X > x) of a chi-square variable with integer dof >= 1.
double chi_square_sf(double x, int dof);

/// Limiting Kolmogorov distribution tail P(K > lambda).
double kolmogorov_sf(double lambda);

}  // namespace levyprem
