// Numerical checks of the identities and inequalities relating zeros of
// zeta and zeta'. Every check yields a CheckRecord; constants that the
// theory leaves unspecified become regression baselines.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zetalab/zeros.hpp"

namespace zetalab {

enum class CheckName {
  lemma1_sum,
  fe_identity,
  ready_ineq,
  thm1_stat,
  thm2_ratio,
  lm_cumsum,
  berndt_count,
  trunc_logderiv,
  m_nu,
  lagrange_bound,
  s_of_t,
};

enum class BoundStatus { within_baseline, new_extreme, not_applicable };

std::string_view to_string(CheckName name);
std::string_view to_string(BoundStatus status);
/// Throws Error(config) for unknown names.
CheckName parse_check_name(std::string_view text);
const std::vector<CheckName>& all_check_names();

struct CheckRecord {
  CheckName name = CheckName::lemma1_sum;
  std::string subject;
  double lhs = 0.0;
  double rhs = 0.0;
  double statistic = 0.0;
  BoundStatus status = BoundStatus::within_baseline;
  std::optional<double> tail_estimate;
  std::string note;
};

/// Largest |statistic| seen per check. ready_ineq is one-sided (it bounds
/// the statistic from below), so its magnitude is max(0, -statistic).
/// lagrange_bound is fixed at 1.
class Baselines {
 public:
  static double magnitude(const CheckRecord& r);
  std::optional<double> get(CheckName name) const;
  void set(CheckName name, double value) { values_[name] = value; }
  const std::map<CheckName, double>& values() const { return values_; }
  bool empty() const { return values_.empty(); }

  /// Marks records against stored baselines. Checks without a stored
  /// baseline are established from these records (all within_baseline).
  /// Returns true if any record is a new extreme.
  bool apply(std::vector<CheckRecord>& records);

 private:
  std::map<CheckName, double> values_;
};

struct OffsetFraction {
  double nu = 0.0;
  double T = 0.0;
  double fraction = 0.0;
};

// ---- checks ----------------------------------------------------------------

/// Sum over zeros of zeta' (with their conjugates) with beta' > 1/2 and
/// |gamma' - gamma| <= half_width, against (1/2) log gamma.
CheckRecord lemma1_sum(const ZetaZero& zero, const std::vector<DerivZero>& dzeros, const Coverage& dcov,
                       double half_width = 50.0);

/// Re zeta'/zeta(beta' + i gamma') - Re zeta'/zeta(1 - beta' + i gamma') against log gamma'.
CheckRecord fe_identity_check(const DerivZero& dzero, const PrecisionBudget& budget);

/// 2 |beta' - 1/2| sum (gamma' - gamma_n)^-2 against log gamma', window W plus a density tail.
CheckRecord ready_inequality(const DerivZero& dzero, const std::vector<ZetaZero>& zeros, const Coverage& cov,
                             double half_width = 50.0, double collision_tol = 1e-27);

/// min(gap log gamma', straddle log gamma_n) / sqrt(|beta' - 1/2| log gamma').
CheckRecord gap_straddle_ratio(const ZeroPairing& pairing);

/// gap / sqrt(|beta' - 1/2|). Throws degenerate_beta when beta' = 1/2.
CheckRecord gap_offset_ratio(const ZeroPairing& pairing);

/// sum_{0 < gamma' <= T} (beta' - 1/2) against (T / 2 pi) log log T.
CheckRecord lm_cumsum(double T, const std::vector<DerivZero>& dzeros, const Coverage& dcov);

/// (N'(T) - (T/2pi) log(T/4 pi e)) / log T.
CheckRecord berndt_count_check(double T, const std::vector<DerivZero>& dzeros, const Coverage& dcov);

/// |1/(rho' - rho_c) + sum_{rho != rho_c, |gamma - gamma'| <= 1} 1/(rho' - rho)| / log gamma'.
CheckRecord trunc_logderiv_residual(const DerivZero& dzero, const std::vector<ZetaZero>& zeros,
                                    const ZeroPairing& pairing, const Coverage& cov, double collision_tol = 1e-27);

/// Fraction of zeros of zeta' with beta' <= 1/2 + nu / log T among 0 <= gamma' <= T.
OffsetFraction empirical_m_nu(double nu, double T, const std::vector<DerivZero>& dzeros, const Coverage& dcov);
CheckRecord m_nu_record(const OffsetFraction& stat, const std::vector<DerivZero>& dzeros);

/// |x1/(x1^2+a) - x2/(x2^2+a)| * a / |x1 - x2|; must not exceed 1.
CheckRecord lagrange_bound_check(double x1, double x2, double a);
/// Largest lagrange statistic over `count` seeded triples, a in (0, 1e3], x in [-1e3, 1e3].
CheckRecord lagrange_random_check(int count, unsigned long long seed);

/// S(T) = N(T) - theta(T)/pi - 1.
CheckRecord s_of_t_check(double T, const PrecisionBudget& budget);

// ---- population statistics -------------------------------------------------

/// Re zeta'/zeta(sigma + it) - sum_{|gamma_n - t| <= window} (sigma - 1/2)/((sigma - 1/2)^2 + (t - gamma_n)^2) + (1/2) log t.
double log_deriv_zero_sum_residual(double sigma, double t, const std::vector<ZetaZero>& zeros, const Coverage& cov,
                                   const PrecisionBudget& budget, double window = 50.0);

struct ZeroDensityStat {
  int near_count = 0;     // #{|gamma_n - T| <= 1}
  double far_sum = 0.0;   // sum_{|gamma_n - T| >= 1, gamma_n <= cov.hi} (gamma_n - T)^-2
};
ZeroDensityStat zero_density_stat(double T, const std::vector<ZetaZero>& zeros, const Coverage& cov);

/// min_n |gamma_n - T|.
double nearest_ordinate_distance(double T, const std::vector<ZetaZero>& zeros, const Coverage& cov);

/// #{T <= gamma_n <= T + h}.
int window_count(double T, double h, const std::vector<ZetaZero>& zeros, const Coverage& cov);

// ---- batch -----------------------------------------------------------------

struct Population {
  std::vector<ZetaZero> zeros;
  Coverage zero_cov;
  std::vector<DerivZero> dzeros;
  Coverage dzero_cov;
};

struct VerifyOptions {
  PrecisionBudget budget;
  double half_width = 50.0;
  unsigned long long seed = 1;
  int lagrange_samples = 100000;
  int workers = 1;
  std::set<CheckName> selected;  // empty = all
};

struct PopulationSummary {
  std::vector<ZeroPairing> pairings;
  std::optional<double> min_gap_log_gamma;    // min gap log gamma'
  std::optional<double> min_offset_loglog; // min (beta' - 1/2) log gamma' (log log gamma')^2
  bool all_right_of_half = true;
  int suspect_multiple = 0;
  std::vector<std::pair<double, double>> log_deriv_residuals;  // (t, residual)
  std::vector<std::pair<double, ZeroDensityStat>> density;     // (T, stat)
  std::optional<double> nearest_distance_max;                  // max |gamma - T| over seeded T
  std::optional<double> nearest_distance_scaled;               // the same times logloglog T, maximized
  std::vector<std::pair<double, int>> short_windows;           // (T, #[T, T + 0.5])
  std::vector<OffsetFraction> m_nu;
};

/// Pairs every zero of zeta' whose neighbourhood is covered.
std::vector<ZeroPairing> pair_all(const Population& pop);

PopulationSummary summarize(const Population& pop, const VerifyOptions& options);

/// Records in check-name order; `summary` may be null.
std::vector<CheckRecord> run_checks(const Population& pop, const VerifyOptions& options, PopulationSummary* summary);

}  // namespace zetalab
