#include "levyprem/premium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "levyprem/errors.hpp"

namespace levyprem {
namespace {

void check_inputs(double b, double a) {
  if (!(b > 0.0 && b < 1.0)) throw InvalidParameter("discount factor b must lie in (0,1)");
  if (!(a >= 0.0) || !std::isfinite(a)) throw InvalidParameter("CRRA a must be finite and >= 0");
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

PremiumResult assemble(double b, double k_one, double k_one_minus_a, double k_minus_a,
                       double log_premium) {
  PremiumResult r;
  r.expected_return = std::exp(k_one - k_one_minus_a) / b;
  r.risk_free = 1.0 / (b * std::exp(k_minus_a));
  r.log_premium = log_premium;
  return r;
}

// NIG: gamma - sqrt(alpha^2 - (beta+s)^2) = s (2 beta + s) / (gamma + sqrt(...)).
struct NigTerms {
  const NigParams& p;

  double radicand(double s) const {
    const double bs = p.beta() + s;
    return (p.alpha() - bs) * (p.alpha() + bs);
  }
  double drop(double s) const {
    return s * (2.0 * p.beta() + s) / (p.gamma() + std::sqrt(radicand(s)));
  }
  double kappa(double s) const { return p.mu() * s + p.delta() * drop(s); }
};

// NCIG: A(s) = sqrt(1 - 2 mu (1 - sqrt(1 - (2 mu^2 / lambda) w(s)))),
// w(s) = s nu + sigma2 s^2 / 2; returns 1 - A(s) in cancellation-free form.
double ncig_one_minus_a(const NcigParams& p, double s, const char* label) {
  const double w = s * p.nu() + 0.5 * p.sigma2() * s * s;
  const double c = 2.0 * p.mu() * p.mu() / p.lambda();
  const double inner = 1.0 - c * w;
  if (inner < 0.0) {
    throw FeasibilityError(std::string("CRRA outside NCIG feasibility region: inner radicand 1 - (2mu^2/lambda) w = ") +
                           num(inner) + " < 0 at MGF argument " + label + " = " + num(s));
  }
  const double q = c * w / (1.0 + std::sqrt(inner));  // 1 - sqrt(inner)
  const double outer = 1.0 - 2.0 * p.mu() * q;
  if (outer < 0.0) {
    throw FeasibilityError(std::string("CRRA outside NCIG feasibility region: outer radicand 1 - 2mu(1 - sqrt(...)) = ") +
                           num(outer) + " < 0 at MGF argument " + label + " = " + num(s));
  }
  return 2.0 * p.mu() * q / (1.0 + std::sqrt(outer));
}

double log_premium_of(double b, double a, const ModelParams& model) {
  return premium(PremiumInputs{b, a, model}).log_premium;
}

bool feasible_at(double b, double a, const ModelParams& model, double* value = nullptr) {
  try {
    const double v = log_premium_of(b, a, model);
    if (value) *value = v;
    return std::isfinite(v);
  } catch (const FeasibilityError&) {
    return false;
  }
}

}  // namespace

PremiumResult premium_lognormal(double b, double a, const NormalParams& p) {
  check_inputs(b, a);
  const double s2 = p.sigma() * p.sigma();
  const auto kappa = [&](double s) { return p.mu() * s + 0.5 * s2 * s * s; };
  return assemble(b, kappa(1.0), kappa(1.0 - a), kappa(-a), a * s2);
}

PremiumResult premium_nig(double b, double a, const NigParams& p) {
  check_inputs(b, a);
  const NigTerms t{p};
  const struct {
    double s;
    const char* name;
  } arguments[] = {{1.0, "alpha^2 - (beta+1)^2"},
                   {1.0 - a, "alpha^2 - (beta+1-a)^2"},
                   {-a, "alpha^2 - (beta-a)^2"}};
  for (const auto& arg : arguments) {
    const double r = t.radicand(arg.s);
    if (!(r > 0.0)) {
      throw FeasibilityError("CRRA outside NIG feasibility region: " + std::string(arg.name) +
                             " = " + num(r) + " <= 0 at a = " + num(a));
    }
  }
  // delta (gamma - sqrt(a^2-(b-a)^2) - sqrt(a^2-(b+1)^2) + sqrt(a^2-(b+1-a)^2))
  const double log_premium = p.delta() * (t.drop(-a) + t.drop(1.0) - t.drop(1.0 - a));
  return assemble(b, t.kappa(1.0), t.kappa(1.0 - a), t.kappa(-a), log_premium);
}

PremiumResult premium_ncig(double b, double a, const NcigParams& p) {
  check_inputs(b, a);
  const double one_minus_a1 = ncig_one_minus_a(p, 1.0 - a, "1-a");
  const double one_minus_a2 = ncig_one_minus_a(p, -a, "-a");
  const double one_minus_a3 = ncig_one_minus_a(p, 1.0, "1");
  const double scale = p.lambda() / p.mu();
  // (lambda/mu)(1 + A1 - A2 - A3)
  const double log_premium = scale * (one_minus_a2 + one_minus_a3 - one_minus_a1);
  return assemble(b, scale * one_minus_a3, scale * one_minus_a1, scale * one_minus_a2,
                  log_premium);
}

PremiumResult premium(const PremiumInputs& inputs) {
  return std::visit(
      [&](const auto& p) -> PremiumResult {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, NormalParams>) {
          return premium_lognormal(inputs.b, inputs.a, p);
        } else if constexpr (std::is_same_v<T, NigParams>) {
          return premium_nig(inputs.b, inputs.a, p);
        } else {
          return premium_ncig(inputs.b, inputs.a, p);
        }
      },
      inputs.model);
}

double mgf_composition_premium(double a, const ModelParams& model) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, NormalParams>) {
          const double s2 = p.sigma() * p.sigma();
          const auto kappa = [&](double s) { return p.mu() * s + 0.5 * s2 * s * s; };
          return kappa(1.0) - kappa(1.0 - a) + kappa(-a);
        } else if constexpr (std::is_same_v<T, NigParams>) {
          return nig_mgf_log(p, 1.0) - nig_mgf_log(p, 1.0 - a) + nig_mgf_log(p, -a);
        } else {
          return ncig_mgf_log(p, 1.0) - ncig_mgf_log(p, 1.0 - a) + ncig_mgf_log(p, -a);
        }
      },
      model);
}

double ratio_r(double a, double alpha) {
  if (!(a > 0.0) || !(alpha > 0.0)) throw InvalidParameter("ratio_r: a and alpha must be positive");
  const double alpha2 = alpha * alpha;
  const double worst = std::max({a * a, 1.0, (1.0 - a) * (1.0 - a)});
  if (!(alpha2 > worst)) {
    throw DomainError("ratio_r: alpha^2 = " + num(alpha2) + " must exceed max(a^2, 1, (1-a)^2) = " +
                      num(worst));
  }
  // alpha - sqrt(alpha^2 - x^2) = x^2 / (alpha + sqrt(alpha^2 - x^2))
  const auto drop = [&](double x) { return x * x / (alpha + std::sqrt(alpha2 - x * x)); };
  return alpha * (drop(a) + drop(1.0) - drop(1.0 - a)) / a;
}

FeasibleCrra feasible_crra(double b, const ModelParams& model) {
  check_inputs(b, 0.0);
  FeasibleCrra out;
  if (std::holds_alternative<NormalParams>(model)) return out;
  double ok = 0.0;
  double value = 0.0;
  if (!feasible_at(b, 0.0, model, &value)) {
    throw FeasibilityError("model has no feasible CRRA: the MGF at 1 does not exist");
  }
  double probe = 1.0;
  while (feasible_at(b, probe, model)) {
    ok = probe;
    probe *= 2.0;
    if (probe > 1e15) return out;
  }
  double bad = probe;
  for (int it = 0; it < 200 && bad - ok > 1e-15 * bad; ++it) {
    const double mid = 0.5 * (ok + bad);
    (feasible_at(b, mid, model) ? ok : bad) = mid;
  }
  feasible_at(b, ok, model, &value);
  out.a_max = ok;
  out.max_log_premium = value;
  return out;
}

double calibrate_crra(double target, double b, const ModelParams& model) {
  check_inputs(b, 0.0);
  if (!std::isfinite(target) || target < 0.0) {
    throw InvalidParameter("target log premium must be finite and >= 0");
  }
  if (target == 0.0) return 0.0;

  const auto f = [&](double a) { return log_premium_of(b, a, model); };

  // Bracket [lo, hi] with f(lo) < target <= f(hi).
  double lo = 0.0;
  double hi = 1.0;
  double f_hi = 0.0;
  for (;;) {
    if (!feasible_at(b, hi, model, &f_hi)) {
      const FeasibleCrra boundary = feasible_crra(b, model);
      hi = boundary.a_max;
      f_hi = boundary.max_log_premium;
      if (f_hi < target) {
        throw FeasibilityError("target premium unattainable: target " + num(target) +
                               " exceeds the maximum feasible premium " + num(f_hi) +
                               " at a = " + num(hi));
      }
      break;
    }
    if (f_hi >= target) break;
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) {
      throw FeasibilityError("target premium unattainable: premium stays below " + num(target) +
                             " for a up to 1e15");
    }
  }
  if (!(f(lo) < target && f_hi >= target)) {
    throw DomainError("premium not monotone in bracket [" + num(lo) + ", " + num(hi) + "]");
  }
  // Monotonicity is verified on a grid rather than assumed.
  constexpr int kGrid = 64;
  double previous = f(lo);
  for (int k = 1; k <= kGrid; ++k) {
    const double a = lo + (hi - lo) * k / kGrid;
    const double v = f(a);
    if (v < previous - 1e-14 * std::abs(previous)) {
      throw DomainError("premium not monotone in bracket [" + num(lo) + ", " + num(hi) +
                        "]: decreases near a = " + num(a));
    }
    previous = v;
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace levyprem
