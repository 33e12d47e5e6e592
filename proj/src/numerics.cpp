#include "zetalab/numerics.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace zetalab {

namespace {

constexpr int kBernoulliCount = 400;
constexpr int kGuardBits = 24;
constexpr double kInf = std::numeric_limits<double>::infinity();

// B_{2k}, k = 0..kBernoulliCount, via tangent numbers (integer recurrence).
const std::vector<mpq_class>& bernoulli_rationals() {
  static const std::vector<mpq_class> table = [] {
    const int n = kBernoulliCount;
    std::vector<mpz_class> tangent(n + 1);
    tangent[1] = 1;
    for (int k = 2; k <= n; ++k) tangent[k] = (k - 1) * tangent[k - 1];
    for (int k = 2; k <= n; ++k) {
      for (int j = k; j <= n; ++j) tangent[j] = (j - k) * tangent[j - 1] + (j - k + 2) * tangent[j];
    }
    std::vector<mpq_class> b(n + 1);
    b[0] = 1;
    for (int k = 1; k <= n; ++k) {
      mpz_class four_k;
      mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
      mpq_class v(2 * k * tangent[k], four_k * (four_k - 1));
      v.canonicalize();
      b[k] = (k % 2 == 1) ? v : mpq_class(-v);
    }
    return b;
  }();
  return table;
}

// log(|B_{2k}| / (2k)!), used in the tail bounds.
const std::vector<double>& bernoulli_log_coefficients() {
  static const std::vector<double> table = [] {
    const auto& b = bernoulli_rationals();
    std::vector<double> out(b.size());
    for (size_t k = 1; k < b.size(); ++k) {
      mpfr_t x;
      mpfr_init2(x, 64);
      mpfr_set_q(x, b[k].get_mpq_t(), MPFR_RNDN);
      mpfr_abs(x, x, MPFR_RNDN);
      mpfr_log(x, x, MPFR_RNDN);
      out[k] = mpfr_get_d(x, MPFR_RNDN) - std::lgamma(2.0 * static_cast<double>(k) + 1.0);
      mpfr_clear(x);
    }
    return out;
  }();
  return table;
}

// Per-thread caches keyed by precision. Pure memoization of constants.
const Real& bernoulli_real(int k) {
  thread_local std::map<mpfr_prec_t, std::vector<Real>> cache;
  auto& v = cache[working_precision()];
  while (static_cast<int>(v.size()) <= k) {
    Real r;
    mpfr_set_q(r.get(), bernoulli_rationals()[v.size()].get_mpq_t(), MPFR_RNDN);
    v.push_back(std::move(r));
  }
  return v[static_cast<size_t>(k)];
}

const std::vector<Real>& log_table(int n) {
  thread_local std::map<mpfr_prec_t, std::vector<Real>> cache;
  auto& v = cache[working_precision()];
  if (v.empty()) v.emplace_back(0.0);  // index 0 unused
  while (static_cast<int>(v.size()) <= n) v.push_back(log_ui(static_cast<unsigned long>(v.size())));
  return v;
}

const std::vector<int>& smallest_prime_factor(int n) {
  thread_local std::vector<int> spf;
  if (static_cast<int>(spf.size()) <= n) {
    const int size = std::max(n + 1, 2 * static_cast<int>(spf.size()));
    spf.assign(static_cast<size_t>(size), 0);
    for (int i = 2; i < size; ++i) {
      if (spf[i] != 0) continue;
      for (int j = i; j < size; j += i) {
        if (spf[j] == 0) spf[j] = i;
      }
    }
  }
  return spf;
}

bool is_exactly(const Complex& s, double re, double im) {
  return mpfr_cmp_d(s.re().get(), re) == 0 && mpfr_cmp_d(s.im().get(), im) == 0;
}

void require_finite(const Complex& s) {
  if (!s.is_finite()) throw Error(ErrorKind::domain, "evaluation point is not finite");
}

int guard_precision(int bits, int extra) { return bits + kGuardBits + extra; }

// Evaluators aim for the finest error the mantissa supports, so a run with
// more bits is never less accurate than one with fewer.
double effective_target(double target, int bits) {
  return std::min(target, std::max(std::ldexp(1.0, 8 - bits), 1e-290));
}

struct EulerMaclaurin {
  std::array<Complex, 3> value;
  std::array<double, 3> bound{};
};

// zeta^(j)(s), j <= order, by Euler-Maclaurin summation with cutoff
// N = max(ceil(|t|/2), 10) + ceil(bits/4). The correction depth grows until
// the rigorous remainder bound drops below target/4. Derivative remainders
// are bounded with Cauchy's estimate on a circle of radius r around s.
EulerMaclaurin euler_maclaurin(const Complex& s, int order, double target, int bits) {
  require_finite(s);
  if (is_exactly(s, 1.0, 0.0)) throw Error(ErrorKind::pole, "zeta has a pole at s = 1");
  const double requested = target;
  target = effective_target(target, bits);

  const double sigma = s.re().to_double();
  const double t = s.im().to_double();
  const int cutoff = std::max(static_cast<int>(std::ceil(std::fabs(t) / 2.0)), 10) + (bits + 3) / 4;
  const int log2_cutoff = static_cast<int>(std::bit_width(static_cast<unsigned>(cutoff)));
  PrecisionScope scope(guard_precision(bits, log2_cutoff));

  const auto& logs = log_table(cutoff);
  const auto& spf = smallest_prime_factor(cutoff);
  const Complex minus_s = -s;

  // n^{-s}; composite n reuse the powers of their factors.
  std::vector<Complex> power(static_cast<size_t>(cutoff) + 1);
  power[1] = Complex(1.0, 0.0);
  for (int n = 2; n <= cutoff; ++n) {
    const int p = spf[n];
    if (p == n) {
      power[n] = exp(minus_s * logs[n]);
    } else {
      power[n] = power[p] * power[n / p];
    }
  }

  EulerMaclaurin out;
  for (int j = 0; j <= order; ++j) out.value[j] = Complex(0.0, 0.0);
  for (int n = 1; n < cutoff; ++n) {
    out.value[0] += power[n];
    if (order >= 1) {
      Complex w = power[n] * logs[n];
      out.value[1] -= w;
      if (order >= 2) out.value[2] += w * logs[n];
    }
  }

  const Real& log_n = logs[cutoff];
  const Complex& pw_n = power[cutoff];
  const Real n_real(cutoff);

  // N^{1-s}/(s-1) and N^{-s}/2 with their derivatives.
  {
    const Complex e = pw_n * n_real;
    const Complex g0 = inverse(s - Complex(1.0, 0.0));
    const Complex g1 = -(g0 * g0);
    out.value[0] += e * g0;
    out.value[0] += pw_n / 2.0;
    if (order >= 1) {
      out.value[1] += e * (g1 - g0 * log_n);
      out.value[1] -= pw_n * log_n / 2.0;
    }
    if (order >= 2) {
      const Complex g2 = -2.0 * (g0 * g1);
      out.value[2] += e * (g2 - 2.0 * (g1 * log_n) + g0 * (log_n * log_n));
      out.value[2] += pw_n * (log_n * log_n) / 2.0;
    }
  }

  // Bernoulli corrections B_{2k} q_k(s) N^{-s} with q_k = prod_{j<2k-1}(s+j) / ((2k)! N^{2k-1}).
  Complex q = s / (2.0 * cutoff);
  Complex q1(Real(1.0) / Real(2 * cutoff), Real(0.0));
  Complex q2(0.0, 0.0);
  const double ln_n = std::log(static_cast<double>(cutoff));
  const double radius = std::min(0.5, 1.0 / ln_n);
  const auto& log_coef = bernoulli_log_coefficients();
  const auto abs_shift = [&](int i) { return std::hypot(sigma + i, t); };

  // log prod_{i=0}^{2M} (|s+i| + r) for r = 0 and r = radius.
  double log_prod_exact = std::log(abs_shift(0));
  double log_prod_wide = std::log(abs_shift(0) + radius);

  std::array<double, 3> best{kInf, kInf, kInf};
  int rising = 0;
  bool converged = false;
  const double n_sq = static_cast<double>(cutoff) * static_cast<double>(cutoff);
  for (int k = 1; k < kBernoulliCount; ++k) {
    const Real& b = bernoulli_real(k);
    out.value[0] += (q * pw_n) * b;
    if (order >= 1) out.value[1] += ((q1 - q * log_n) * pw_n) * b;
    if (order >= 2) out.value[2] += ((q2 - 2.0 * (q1 * log_n) + q * (log_n * log_n)) * pw_n) * b;

    // Remainder after M = k corrections.
    const int m = k;
    for (int i = 2 * m - 1; i <= 2 * m; ++i) {
      log_prod_exact += std::log(abs_shift(i));
      log_prod_wide += std::log(abs_shift(i) + radius);
    }
    std::array<double, 3> tail{kInf, kInf, kInf};
    const double a = 2.0 * m + 1.0;
    for (int j = 0; j <= order; ++j) {
      const double r = j == 0 ? 0.0 : radius;
      const double denom = sigma - r + a;
      if (denom <= 0.0) continue;
      const double front = (abs_shift(2 * m + 1) + r) / denom;
      double lb = std::log(front) + log_coef[m + 1] + (j == 0 ? log_prod_exact : log_prod_wide) +
                  (-sigma + r - a) * ln_n;
      if (j > 0) lb += std::lgamma(j + 1.0) - j * std::log(r);
      tail[j] = std::exp(lb);
    }
    double worst = 0.0;
    for (int j = 0; j <= order; ++j) worst = std::max(worst, tail[j]);
    double previous = 0.0;
    for (int j = 0; j <= order; ++j) previous = std::max(previous, best[j]);
    rising = worst > previous ? rising + 1 : 0;
    for (int j = 0; j <= order; ++j) best[j] = std::min(best[j], tail[j]);
    if (worst <= target / 4.0) {
      out.bound = tail;
      converged = true;
      break;
    }
    if (rising >= 3) break;

    const Complex w = (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    const Complex w1 = 2.0 * s + (4.0 * k - 1.0);
    const double d = (2.0 * k + 1.0) * (2.0 * k + 2.0) * n_sq;
    Complex q2n = q2 * w + 2.0 * (q1 * w1) + 2.0 * q;
    Complex q1n = q1 * w + q * w1;
    q = (q * w) / d;
    q1 = q1n / d;
    q2 = q2n / d;
  }
  if (!converged) {
    throw Error(ErrorKind::budget_infeasible,
                "Euler-Maclaurin remainder cannot reach " + std::to_string(requested) + " at " +
                    std::to_string(bits) + " bits");
  }

  // Rounding: every term carries O(log2 N) roundings relative to its size.
  const double ulp = std::ldexp(1.0, -static_cast<int>(working_precision()));
  const double term_mass = cutoff * std::max(1.0, std::pow(static_cast<double>(cutoff), -sigma));
  for (int j = 0; j <= order; ++j) {
    const double rounding = 128.0 * log2_cutoff * ulp * term_mass * std::pow(std::max(1.0, ln_n), j);
    out.bound[j] += rounding;
    if (out.bound[j] > requested) {
      throw Error(ErrorKind::budget_infeasible,
                  "rounding error exceeds target at " + std::to_string(bits) + " bits");
    }
  }
  return out;
}

int bits_for_target(double target, int at_least) {
  const int needed = static_cast<int>(std::ceil(-std::log2(target))) + 16;
  return std::max(at_least, needed);
}

double abs_of(const Complex& z) { return z.abs_d(); }

struct Asymptotic {
  Complex value;
  double bound = 0.0;
};

// Shift point for the Stirling-type series: e^{-2 pi |z|} stays well below target.
double asymptotic_radius(double target) {
  return std::max(10.0, std::log(16.0 / target) / (2.0 * M_PI) + 3.0);
}

void reject_gamma_pole(const Complex& s) {
  require_finite(s);
  if (s.im().is_zero() && s.re() <= Real(0.0) && mpfr_integer_p(s.re().get())) {
    throw Error(ErrorKind::pole, "gamma has a pole at a nonpositive integer");
  }
}

}  // namespace

void PrecisionBudget::validate() const {
  if (mantissa_bits < 64) throw Error(ErrorKind::config, "mantissa_bits must be >= 64");
  if (!(target_abs_error > 0.0) || !std::isfinite(target_abs_error)) {
    throw Error(ErrorKind::config, "target_abs_error must be positive");
  }
  if (target_abs_error < std::ldexp(1.0, 8 - mantissa_bits)) {
    throw Error(ErrorKind::config, "target_abs_error below 2^(8 - mantissa_bits)");
  }
  if (escalation_factor <= 0) throw Error(ErrorKind::config, "escalation_factor must be positive");
}

PrecisionBudget PrecisionBudget::escalated() const {
  PrecisionBudget b = *this;
  b.mantissa_bits += escalation_factor;
  return b;
}

PrecisionBudget PrecisionBudget::doubled_bits() const {
  PrecisionBudget b = *this;
  b.mantissa_bits *= 2;
  return b;
}

PrecisionBudget PrecisionBudget::coarse() { return PrecisionBudget{64, 1e-12, 32}; }

double bernoulli_b2k(int k) {
  if (k < 0 || k > kBernoulliCount) throw Error(ErrorKind::domain, "Bernoulli index out of range");
  return bernoulli_rationals()[static_cast<size_t>(k)].get_d();
}

int bernoulli_table_size() { return kBernoulliCount; }

std::array<EvalResult, 3> eval_zeta_derivatives(const Complex& s, int order, const PrecisionBudget& budget) {
  budget.validate();
  if (order < 0 || order > 2) throw Error(ErrorKind::domain, "derivative order must be 0, 1 or 2");
  auto em = euler_maclaurin(s, order, budget.target_abs_error, budget.mantissa_bits);
  std::array<EvalResult, 3> out;
  for (int j = 0; j <= order; ++j) {
    out[j].value = std::move(em.value[j]);
    out[j].abs_error_bound = em.bound[j];
    out[j].heuristic = false;
  }
  return out;
}

EvalResult eval_zeta(const Complex& s, const PrecisionBudget& budget) {
  return std::move(eval_zeta_derivatives(s, 0, budget)[0]);
}

EvalResult eval_zeta_prime(const Complex& s, const PrecisionBudget& budget) {
  return std::move(eval_zeta_derivatives(s, 1, budget)[1]);
}

EvalResult eval_zeta_second(const Complex& s, const PrecisionBudget& budget) {
  return std::move(eval_zeta_derivatives(s, 2, budget)[2]);
}

EvalResult eval_zeta_log_deriv(const Complex& s, const PrecisionBudget& budget) {
  budget.validate();
  double inner_target = budget.target_abs_error;
  int bits = budget.mantissa_bits;
  for (int attempt = 0; attempt <= 4; ++attempt) {
    auto em = euler_maclaurin(s, 1, inner_target, bits);
    PrecisionScope scope(em.value[0].re().precision());
    const double den = abs_of(em.value[0]);
    if (den <= 10.0 * budget.target_abs_error) {
      throw Error(ErrorKind::near_zero_denominator,
                  "|zeta(s)| = " + std::to_string(den) + " is within 10*target of zero");
    }
    Complex q = em.value[1] / em.value[0];
    const double qa = abs_of(q);
    const double e0 = em.bound[0];
    const double e1 = em.bound[1];
    const double bound = (e1 + qa * e0) / (den - e0) + 8.0 * qa * std::ldexp(1.0, -bits);
    if (bound <= budget.target_abs_error) return EvalResult{std::move(q), bound, false};
    inner_target = std::min(inner_target / 2.0, budget.target_abs_error * (den - e0) / (4.0 * (1.0 + qa)));
    bits = bits_for_target(inner_target, bits + budget.escalation_factor);
  }
  throw Error(ErrorKind::budget_infeasible, "zeta'/zeta bound does not meet the target");
}

namespace {

// Shifts s right by n steps until Re z >= R, returning z and n.
int shift_count(const Complex& s, double radius) {
  const double re = s.re().to_double();
  return re >= radius ? 0 : static_cast<int>(std::ceil(radius - re));
}

}  // namespace

EvalResult eval_digamma(const Complex& s, const PrecisionBudget& budget) {
  budget.validate();
  reject_gamma_pole(s);
  const double target = effective_target(budget.target_abs_error, budget.mantissa_bits);
  PrecisionScope scope(guard_precision(budget.mantissa_bits, 8));

  const int shift = shift_count(s, asymptotic_radius(target));
  Complex correction(0.0, 0.0);
  Complex z = s;
  for (int j = 0; j < shift; ++j) {
    correction += inverse(z);
    z = z + 1.0;
  }
  const Complex inv = inverse(z);
  const Complex inv_sq = inv * inv;
  Complex value = log(z) - inv / 2.0;
  Complex power = inv_sq;
  double omitted = kInf;
  double last = kInf;
  for (int k = 1; k < kBernoulliCount; ++k) {
    const Complex term = power * bernoulli_real(k) / (2.0 * k);
    const double mag = abs_of(term);
    if (mag < target / 16.0) {
      omitted = mag;
      break;
    }
    if (mag > last) break;
    last = mag;
    value -= term;
    power *= inv_sq;
  }
  if (!std::isfinite(omitted)) throw Error(ErrorKind::budget_infeasible, "digamma series did not converge");
  value -= correction;
  const double rounding = 64.0 * (shift + 32) * std::ldexp(1.0, -static_cast<int>(working_precision())) *
                          (abs_of(value) + abs_of(correction) + 1.0);
  return EvalResult{std::move(value), 2.0 * omitted + rounding, true};
}

EvalResult eval_log_gamma(const Complex& s, const PrecisionBudget& budget) {
  budget.validate();
  reject_gamma_pole(s);
  const double target = effective_target(budget.target_abs_error, budget.mantissa_bits);
  const double magnitude = abs_of(s) + 2.0;
  PrecisionScope scope(guard_precision(budget.mantissa_bits, static_cast<int>(std::log2(magnitude * std::log(magnitude))) + 8));

  const int shift = shift_count(s, asymptotic_radius(target));
  Complex correction(0.0, 0.0);
  Complex z = s;
  for (int j = 0; j < shift; ++j) {
    correction += log(z);
    z = z + 1.0;
  }
  const Complex inv = inverse(z);
  const Complex inv_sq = inv * inv;
  Complex value = (z - Complex(0.5, 0.0)) * log(z) - z + log(2.0 * pi()) / 2.0;
  Complex power = inv;
  double omitted = kInf;
  double last = kInf;
  for (int k = 1; k < kBernoulliCount; ++k) {
    const Complex term = power * bernoulli_real(k) / (2.0 * k * (2.0 * k - 1.0));
    const double mag = abs_of(term);
    if (mag < target / 16.0) {
      omitted = mag;
      break;
    }
    if (mag > last) break;
    last = mag;
    value += term;
    power *= inv_sq;
  }
  if (!std::isfinite(omitted)) throw Error(ErrorKind::budget_infeasible, "log-gamma series did not converge");
  value -= correction;
  const double rounding = 64.0 * (shift + 32) * std::ldexp(1.0, -static_cast<int>(working_precision())) *
                          (abs_of(value) + abs_of(correction) + 1.0);
  return EvalResult{std::move(value), 2.0 * omitted + rounding, true};
}

EvalResult riemann_siegel_theta(const Real& t, const PrecisionBudget& budget) {
  budget.validate();
  if (!t.is_finite() || t.sign() < 0) throw Error(ErrorKind::domain, "theta requires finite t >= 0");
  if (t.is_zero()) return EvalResult{Complex(0.0, 0.0), 0.0, false};

  const double target = effective_target(budget.target_abs_error, budget.mantissa_bits);
  const double td = t.to_double();
  const int extra = static_cast<int>(std::log2(td * std::log(td + 2.0) + 2.0)) + 4;

  // The asymptotic series omits a term of size arctan(e^{-pi t})/2, so it is
  // used only where that term and the smallest series term are below target.
  if (td >= 10.0 && std::exp(-M_PI * td) < target / 16.0) {
    PrecisionScope scope(guard_precision(budget.mantissa_bits, extra));
    const Real inv = 1.0 / t;
    const Real inv_sq = inv * inv;
    Real power = inv;
    Real sum(0.0);
    double last = kInf;
    bool ok = false;
    double omitted = 0.0;
    for (int k = 1; k < kBernoulliCount; ++k) {
      // (1 - 2^{1-2k}) |B_{2k}| / (4k (2k-1) t^{2k-1})
      Real coef = 1.0 - Real(std::ldexp(1.0, 1 - 2 * k));
      coef /= 4.0 * k * (2.0 * k - 1.0);
      Real term = power * abs(bernoulli_real(k)) * coef;
      const double mag = std::fabs(term.to_double());
      if (mag < target / 16.0) {
        ok = true;
        omitted = mag;
        break;
      }
      if (mag > last) break;
      last = mag;
      sum += term;
      power *= inv_sq;
    }
    if (ok) {
      const Real half_t = t / 2.0;
      Real value = half_t * log(t / (2.0 * pi())) - half_t - pi() / 8.0 + sum;
      const double rounding = 64.0 * std::ldexp(1.0, -static_cast<int>(working_precision())) * (td * std::log(td) + 1.0);
      return EvalResult{Complex(std::move(value), Real(0.0)), 2.0 * omitted + rounding, true};
    }
  }

  PrecisionBudget inner = budget;
  inner.target_abs_error = target / 2.0;
  inner.mantissa_bits = bits_for_target(inner.target_abs_error, budget.mantissa_bits);
  PrecisionScope scope(guard_precision(budget.mantissa_bits, extra));
  const Complex z(Real(0.25), t / 2.0);
  auto lg = eval_log_gamma(z, inner);
  Real value = lg.value.im() - t / 2.0 * log(pi());
  return EvalResult{Complex(std::move(value), Real(0.0)), lg.abs_error_bound + target / 16.0, true};
}

EvalResult hardy_z(const Real& t, const PrecisionBudget& budget) {
  budget.validate();
  if (!t.is_finite() || t.sign() < 0) throw Error(ErrorKind::domain, "Hardy Z requires finite t >= 0");
  PrecisionBudget half = budget;
  half.target_abs_error = budget.target_abs_error / 2.0;
  auto z = eval_zeta(Complex(Real(0.5), t), half);
  const double magnitude = abs_of(z.value) + z.abs_error_bound;
  PrecisionBudget theta_budget = budget;
  theta_budget.target_abs_error = budget.target_abs_error / (4.0 * std::max(1.0, magnitude));
  theta_budget.mantissa_bits = bits_for_target(theta_budget.target_abs_error, budget.mantissa_bits);
  auto theta = riemann_siegel_theta(t, theta_budget);
  PrecisionScope scope(z.value.re().precision());
  Complex value = unit(theta.value.re()) * z.value;
  const double bound = z.abs_error_bound + magnitude * theta.abs_error_bound +
                       8.0 * magnitude * std::ldexp(1.0, -static_cast<int>(working_precision()));
  return EvalResult{std::move(value), bound, theta.heuristic};
}

FunctionalEquationResidual functional_equation_residual(const Complex& s, const PrecisionBudget& budget) {
  budget.validate();
  const Complex one_minus_s = 1.0 - s;
  auto z1 = eval_zeta(s, budget);
  auto z2 = eval_zeta(one_minus_s, budget);
  auto g1 = eval_log_gamma(s * 0.5, budget);
  auto g2 = eval_log_gamma(one_minus_s * 0.5, budget);
  PrecisionScope scope(guard_precision(budget.mantissa_bits, 8));
  const Real log_pi = log(pi());
  const Complex f1 = exp(g1.value - s * 0.5 * log_pi);
  const Complex f2 = exp(g2.value - one_minus_s * 0.5 * log_pi);
  const Complex lhs = f1 * z1.value;
  const Complex rhs = f2 * z2.value;
  FunctionalEquationResidual out;
  out.residual = abs_of(lhs - rhs);
  out.magnitude = abs_of(lhs);
  // exp(x + e) = exp(x)(1 + O(e)) for small exponent error e.
  const auto side = [](const Complex& f, const EvalResult& z, const EvalResult& g) {
    const double fa = f.abs_d();
    const double za = z.value.abs_d();
    return fa * z.abs_error_bound + 1.01 * fa * za * g.abs_error_bound;
  };
  const double rounding = 64.0 * std::ldexp(1.0, -static_cast<int>(working_precision())) * out.magnitude;
  out.combined_bound = side(f1, z1, g1) + side(f2, z2, g2) + rounding;
  return out;
}

}  // namespace zetalab
