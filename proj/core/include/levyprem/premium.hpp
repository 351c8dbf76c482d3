#pragma once

// Expected gross equity return, risk-free return and log equity premium
// under log-normal, log-NIG and log-NCIG consumption growth, plus CRRA
// calibration. All quantities are per period of the model parameters.

#include <limits>

#include "levyprem/estimation.hpp"

namespace levyprem {

struct PremiumInputs {
  /// Discount factor in (0, 1).
  double b = 0.99;
  /// CRRA, >= 0.
  double a = 0.0;
  ModelParams model;
};

struct PremiumResult {
  double expected_return = 1.0;
  double risk_free = 1.0;
  double log_premium = 0.0;
};

PremiumResult premium_lognormal(double b, double a, const NormalParams& p);

/// Throws FeasibilityError("CRRA outside NIG feasibility region: ...").
PremiumResult premium_nig(double b, double a, const NigParams& p);

/// Throws FeasibilityError("CRRA outside NCIG feasibility region: ...").
PremiumResult premium_ncig(double b, double a, const NcigParams& p);

PremiumResult premium(const PremiumInputs& inputs);

/// Log premium as kappa(1) - kappa(1 - a) + kappa(-a) with kappa the
/// model's log-MGF. Diagnostic counterpart of the closed forms.
double mgf_composition_premium(double a, const ModelParams& model);

/// alpha (alpha - sqrt(alpha^2 - a^2) - sqrt(alpha^2 - 1) + sqrt(alpha^2 - (1-a)^2)) / a,
/// the NIG-to-normal premium ratio with beta = 0 and delta = alpha sigma^2.
double ratio_r(double a, double alpha);

struct FeasibleCrra {
  /// Largest feasible CRRA; infinity for the normal model.
  double a_max = std::numeric_limits<double>::infinity();
  /// Log premium at a_max (infinity when unbounded).
  double max_log_premium = std::numeric_limits<double>::infinity();
};

/// Boundary of the feasible CRRA interval, located by geometric expansion
/// and bisection on the feasibility errors.
FeasibleCrra feasible_crra(double b, const ModelParams& model);

/// The a >= 0 with log premium equal to target, to 1e-10 in a.
/// Throws FeasibilityError("target premium unattainable ...") and
/// DomainError("premium not monotone in bracket").
double calibrate_crra(double target_log_premium, double b, const ModelParams& model);

}  // namespace levyprem
