// Evaluation of zeta, its derivatives, digamma, log-gamma, the
// Riemann-Siegel theta function and Hardy's Z-function.
//
// All evaluators are pure functions of (point, budget). Each returns the
// value together with an absolute error ceiling that is at most the budget's
// target on success; otherwise they throw zetalab::Error.

#pragma once

#include <array>

#include "zetalab/error.hpp"
#include "zetalab/real.hpp"

namespace zetalab {

struct PrecisionBudget {
  int mantissa_bits = 128;
  double target_abs_error = 1e-30;
  int escalation_factor = 32;

  /// Throws Error(config) unless bits >= 64 and target >= 2^(8 - bits).
  void validate() const;
  PrecisionBudget escalated() const;
  /// Same target, twice the mantissa.
  PrecisionBudget doubled_bits() const;

  /// Cheap budget used for sign and phase tracking.
  static PrecisionBudget coarse();
};

struct EvalResult {
  Complex value;
  double abs_error_bound = 0.0;
  bool heuristic = false;
};

EvalResult eval_zeta(const Complex& s, const PrecisionBudget& budget);
EvalResult eval_zeta_prime(const Complex& s, const PrecisionBudget& budget);
EvalResult eval_zeta_second(const Complex& s, const PrecisionBudget& budget);

/// zeta^(k)(s) for k = 0..order from one Euler-Maclaurin pass; entries past
/// `order` are left empty.
std::array<EvalResult, 3> eval_zeta_derivatives(const Complex& s, int order, const PrecisionBudget& budget);

/// zeta'(s)/zeta(s). Refuses with near_zero_denominator when
/// |zeta(s)| <= 10 * target. Escalates mantissa bits (up to four times) when
/// the quotient bound would otherwise exceed the target.
EvalResult eval_zeta_log_deriv(const Complex& s, const PrecisionBudget& budget);

/// Gamma'(s)/Gamma(s).
EvalResult eval_digamma(const Complex& s, const PrecisionBudget& budget);

/// Continuous log Gamma(s) for Re s > 0 (principal log-gamma elsewhere off
/// the real axis).
EvalResult eval_log_gamma(const Complex& s, const PrecisionBudget& budget);

/// theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi, with theta(0) = 0.
EvalResult riemann_siegel_theta(const Real& t, const PrecisionBudget& budget);

/// exp(i theta(t)) zeta(1/2 + it); the imaginary part vanishes up to the bound.
EvalResult hardy_z(const Real& t, const PrecisionBudget& budget);

/// B_{2k} as a double (k >= 1), from the exact rational table.
double bernoulli_b2k(int k);
/// Largest k for which B_{2k} is tabulated.
int bernoulli_table_size();

/// |LHS - RHS| of pi^{-s/2} Gamma(s/2) zeta(s) = pi^{-(1-s)/2} Gamma((1-s)/2) zeta(1-s),
/// together with the combined error bound of both sides.
struct FunctionalEquationResidual {
  double residual = 0.0;
  double combined_bound = 0.0;
  double magnitude = 0.0;
};
FunctionalEquationResidual functional_equation_residual(const Complex& s, const PrecisionBudget& budget);

}  // namespace zetalab
