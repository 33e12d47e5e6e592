#include "zetalab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>

#include "zetalab/parallel.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;

struct NameEntry {
  CheckName name;
  std::string_view text;
};

constexpr NameEntry kNames[] = {
    {CheckName::lemma1_sum, "lemma1_sum"},       {CheckName::fe_identity, "fe_identity"},
    {CheckName::ready_ineq, "ready_ineq"},       {CheckName::thm1_stat, "thm1_stat"},
    {CheckName::thm2_ratio, "thm2_ratio"},       {CheckName::lm_cumsum, "lm_cumsum"},
    {CheckName::berndt_count, "berndt_count"},   {CheckName::trunc_logderiv, "trunc_logderiv"},
    {CheckName::m_nu, "m_nu"},                   {CheckName::lagrange_bound, "lagrange_bound"},
    {CheckName::s_of_t, "s_of_t"},
};

std::string fmt(const char* pattern, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::string rho_label(const DerivZero& z) { return fmt("rho'=%.10f%+.10fi", z.beta.to_double(), z.gamma.to_double()); }

// Zero densities from the main terms of N(T) and N'(T).
double zeta_density(double t) { return t > 2 * kPi ? std::log(t / (2 * kPi)) / (2 * kPi) : 0.0; }
double deriv_density(double t) { return t > 4 * kPi ? std::log(t / (4 * kPi)) / (2 * kPi) : 0.0; }

void require_cover(const Coverage& cov, double a, double b, const char* what) {
  if (!(cov.lo <= std::max(a, 2.0) && b <= cov.hi)) {
    throw Error(ErrorKind::insufficient_coverage,
                std::string(what) + " needs [" + std::to_string(a) + ", " + std::to_string(b) + "], have [" +
                    std::to_string(cov.lo) + ", " + std::to_string(cov.hi) + "]");
  }
}

CheckRecord record(CheckName name, std::string subject, double lhs, double rhs, double statistic) {
  CheckRecord r;
  r.name = name;
  r.subject = std::move(subject);
  r.lhs = lhs;
  r.rhs = rhs;
  r.statistic = statistic;
  return r;
}

// Integral of f over [a, b], composite Simpson.
template <class F>
double simpson(F f, double a, double b, int n) {
  if (!(b > a)) return 0.0;
  n += n % 2;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

std::vector<double> sample_heights(double hi) {
  std::vector<double> out;
  for (double T : {10.0, 50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0, 5000.0, 10000.0}) {
    if (T < hi) out.push_back(T);
  }
  out.push_back(hi);
  return out;
}

}  // namespace

std::string_view to_string(CheckName name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.text;
  }
  return "unknown";
}

std::string_view to_string(BoundStatus status) {
  switch (status) {
    case BoundStatus::within_baseline: return "within_baseline";
    case BoundStatus::new_extreme: return "new_extreme";
    case BoundStatus::not_applicable: return "not_applicable";
  }
  return "unknown";
}

CheckName parse_check_name(std::string_view text) {
  for (const auto& e : kNames) {
    if (e.text == text) return e.name;
  }
  throw Error(ErrorKind::config, "unknown check '" + std::string(text) + "'");
}

const std::vector<CheckName>& all_check_names() {
  static const std::vector<CheckName> names = [] {
    std::vector<CheckName> v;
    for (const auto& e : kNames) v.push_back(e.name);
    return v;
  }();
  return names;
}

std::optional<double> Baselines::get(CheckName name) const {
  if (name == CheckName::lagrange_bound) return 1.0;
  auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double Baselines::magnitude(const CheckRecord& r) {
  if (r.name == CheckName::ready_ineq) return std::max(0.0, -r.statistic);
  return std::fabs(r.statistic);
}

bool Baselines::apply(std::vector<CheckRecord>& records) {
  std::map<CheckName, double> fresh;
  bool extreme = false;
  for (auto& r : records) {
    if (r.status == BoundStatus::not_applicable) continue;
    const double mag = magnitude(r);
    if (auto b = get(r.name)) {
      r.status = mag > *b ? BoundStatus::new_extreme : BoundStatus::within_baseline;
      extreme = extreme || r.status == BoundStatus::new_extreme;
    } else {
      r.status = BoundStatus::within_baseline;
      fresh[r.name] = std::max(fresh[r.name], mag);
    }
  }
  for (const auto& [name, value] : fresh) values_[name] = value;
  return extreme;
}

// ---- checks ----------------------------------------------------------------

CheckRecord lemma1_sum(const ZetaZero& zero, const std::vector<DerivZero>& dzeros, const Coverage& dcov,
                       double half_width) {
  const double g = zero.ordinate.to_double();
  const std::string subject = "n=" + std::to_string(zero.index);
  if (dzeros.empty()) {
    CheckRecord r = record(CheckName::lemma1_sum, subject, 0.0, 0.5 * std::log(g), -0.5 * std::log(g));
    r.status = BoundStatus::not_applicable;
    r.note = "empty zeta' population";
    return r;
  }
  if (zero.suspect_multiple) throw Error(ErrorKind::not_simple, "zero " + subject + " is flagged as a suspected multiple");
  if (!(g > 10.0)) throw Error(ErrorKind::domain, "lemma1_sum needs gamma > 10");
  if (half_width < 50.0) throw Error(ErrorKind::domain, "lemma1_sum needs half_width >= 50");
  require_cover(dcov, g - half_width, g + half_width, "lemma1_sum");

  double sum = 0.0, offsets = 0.0;
  int counted = 0;
  for (const auto& d : dzeros) {
    const double b = d.beta.to_double() - 0.5;
    if (!(b > 0.0)) continue;
    const double gp = d.gamma.to_double();
    for (double h : {gp, -gp}) {
      if (std::fabs(h - g) > half_width) continue;
      sum += b / (b * b + (g - h) * (g - h));
      if (h > 0) {
        offsets += b;
        ++counted;
      }
    }
  }
  CheckRecord r = record(CheckName::lemma1_sum, subject, sum, 0.5 * std::log(g), sum - 0.5 * std::log(g));
  const double mean_offset = counted ? offsets / counted : 0.0;
  r.tail_estimate = 2.0 * mean_offset * deriv_density(g + half_width) / half_width;
  return r;
}

CheckRecord fe_identity_check(const DerivZero& dzero, const PrecisionBudget& budget) {
  if (dzero.beta == Real(0.5)) throw Error(ErrorKind::degenerate_beta, "beta' = 1/2");
  PrecisionScope scope(budget.mantissa_bits + 16);
  const Complex s1(dzero.beta, dzero.gamma);
  const Complex s2(1.0 - dzero.beta, dzero.gamma);
  const auto q1 = eval_zeta_log_deriv(s1, budget);
  const auto q2 = eval_zeta_log_deriv(s2, budget);
  const double lhs = (q1.value.re() - q2.value.re()).to_double();
  const double rhs = std::log(dzero.gamma.to_double());
  return record(CheckName::fe_identity, rho_label(dzero), lhs, rhs, lhs - rhs);
}

CheckRecord ready_inequality(const DerivZero& dzero, const std::vector<ZetaZero>& zeros, const Coverage& cov,
                             double half_width, double collision_tol) {
  const double gp = dzero.gamma.to_double();
  require_cover(cov, gp - half_width, gp + half_width, "ready_ineq");
  PrecisionScope scope(std::max<mpfr_prec_t>(dzero.gamma.precision(), 64));
  double sum = 0.0;
  for (const auto& z : zeros) {
    const double d = (z.ordinate - dzero.gamma).to_double();
    if (std::fabs(d) < collision_tol) {
      throw Error(ErrorKind::ordinate_collision, "gamma' coincides with ordinate n=" + std::to_string(z.index));
    }
    if (std::fabs(d) <= half_width) sum += 1.0 / (d * d);
  }
  // Ordinates beyond the window, from the density (1/2pi) log(t/2pi).
  const double W = half_width;
  const double upper =
      (std::log(gp + W) / W + std::log((gp + W) / W) / gp - std::log(2 * kPi) / W) / (2 * kPi);
  const double lower =
      simpson([&](double u) { return zeta_density(u) / ((gp - u) * (gp - u)); }, 2 * kPi, gp - W, 400);
  const double b = std::fabs(dzero.beta.to_double() - 0.5);
  const double lhs = 2.0 * b * (sum + upper + lower);
  const double rhs = std::log(gp);
  CheckRecord r = record(CheckName::ready_ineq, rho_label(dzero), lhs, rhs, lhs - rhs);
  r.tail_estimate = 2.0 * b * (upper + lower);
  return r;
}

CheckRecord gap_straddle_ratio(const ZeroPairing& p) {
  const double gp = p.dzero.gamma.to_double();
  const double lg = std::log(gp);
  const double rhs = std::sqrt(std::fabs(p.beta_offset) * lg);
  double lhs = p.gap * lg;
  if (p.straddle_gap) lhs = std::min(lhs, *p.straddle_gap * std::log(p.straddle_gamma_n));
  if (rhs == 0.0) {
    CheckRecord r = record(CheckName::thm1_stat, rho_label(p.dzero), lhs, 0.0, 0.0);
    r.status = BoundStatus::not_applicable;
    r.note = "beta' = 1/2 occurs only at a multiple zero of zeta";
    return r;
  }
  CheckRecord r = record(CheckName::thm1_stat, rho_label(p.dzero), lhs, rhs, lhs / rhs);
  if (!p.straddle_gap) r.note = "no straddling pair";
  return r;
}

CheckRecord gap_offset_ratio(const ZeroPairing& p) {
  if (p.beta_offset == 0.0) throw Error(ErrorKind::degenerate_beta, "beta' = 1/2");
  const double rhs = std::sqrt(std::fabs(p.beta_offset));
  return record(CheckName::thm2_ratio, rho_label(p.dzero), p.gap, rhs, p.gap / rhs);
}

CheckRecord lm_cumsum(double T, const std::vector<DerivZero>& dzeros, const Coverage& dcov) {
  require_cover(dcov, 0.0, T, "lm_cumsum");
  double lhs = 0.0;
  for (const auto& d : dzeros) {
    if (d.gamma.to_double() <= T) lhs += d.beta.to_double() - 0.5;
  }
  const double rhs = T / (2 * kPi) * std::log(std::log(T));
  CheckRecord r = record(CheckName::lm_cumsum, fmt("T=%.6g", T), lhs, rhs, rhs > 0 ? lhs / rhs : 0.0);
  if (!(rhs > 0)) r.status = BoundStatus::not_applicable;
  return r;
}

CheckRecord berndt_count_check(double T, const std::vector<DerivZero>& dzeros, const Coverage& dcov) {
  require_cover(dcov, 0.0, T, "berndt_count");
  int count = 0;
  for (const auto& d : dzeros) count += d.gamma.to_double() <= T ? 1 : 0;
  const double main = berndt_main_term(T);
  return record(CheckName::berndt_count, fmt("T=%.6g", T), count, main, (count - main) / std::log(T));
}

CheckRecord trunc_logderiv_residual(const DerivZero& dzero, const std::vector<ZetaZero>& zeros,
                                    const ZeroPairing& pairing, const Coverage& cov, double collision_tol) {
  const double gp = dzero.gamma.to_double();
  require_cover(cov, gp - 1.0, gp + 1.0, "trunc_logderiv");
  const std::complex<double> rho_p(dzero.beta.to_double(), gp);
  auto term = [&](double gamma) {
    const std::complex<double> d = rho_p - std::complex<double>(0.5, gamma);
    if (std::abs(d) < collision_tol) throw Error(ErrorKind::ordinate_collision, "rho' coincides with a zero of zeta");
    return 1.0 / d;
  };
  const auto main = term(pairing.gamma_c.to_double());
  std::complex<double> sum = main;
  bool dominant = true;
  for (const auto& z : zeros) {
    const double g = z.ordinate.to_double();
    if (z.index == pairing.index_c || std::fabs(g - gp) > 1.0) continue;
    const auto t = term(g);
    dominant = dominant && std::abs(main) >= std::abs(t);
    sum += t;
  }
  const double lhs = std::abs(sum);
  const double rhs = std::log(gp);
  CheckRecord r = record(CheckName::trunc_logderiv, rho_label(dzero), lhs, rhs, lhs / rhs);
  if (!dominant) r.note = "nearest-zero term is not the largest";
  return r;
}

OffsetFraction empirical_m_nu(double nu, double T, const std::vector<DerivZero>& dzeros, const Coverage& dcov) {
  if (T < 50.0) throw Error(ErrorKind::domain, "m(nu) needs T >= 50");
  require_cover(dcov, 0.0, T, "m_nu");
  const double edge = 0.5 + nu / std::log(T);
  int total = 0, below = 0;
  for (const auto& d : dzeros) {
    const double g = d.gamma.to_double();
    if (g < 0.0 || g > T) continue;
    ++total;
    below += d.beta.to_double() <= edge ? 1 : 0;
  }
  if (total == 0) throw Error(ErrorKind::empty_population, "no zeros of zeta' with 0 <= gamma' <= T");
  return OffsetFraction{nu, T, static_cast<double>(below) / total};
}

CheckRecord m_nu_record(const OffsetFraction& s, const std::vector<DerivZero>& dzeros) {
  int total = 0;
  for (const auto& d : dzeros) {
    const double g = d.gamma.to_double();
    total += g >= 0.0 && g <= s.T ? 1 : 0;
  }
  return record(CheckName::m_nu, fmt("nu=%.6g;T=%.6g", s.nu, s.T), s.fraction * total, total, s.fraction);
}

CheckRecord lagrange_bound_check(double x1, double x2, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::nonpositive_parameter, "a must be positive");
  const std::string subject = fmt("x1=%.17g;x2=%.17g", x1, x2) + fmt(";a=%.17g", a);
  if (x1 == x2) return record(CheckName::lagrange_bound, subject, 0.0, 0.0, 0.0);
  // x1/(x1^2+a) - x2/(x2^2+a) = (x1 - x2)(a - x1 x2) / ((x1^2+a)(x2^2+a)), free of cancellation.
  const double den = (x1 * x1 + a) * (x2 * x2 + a);
  const double dx = std::fabs(x1 - x2);
  const double lhs = dx * std::fabs(a - x1 * x2) / den;
  const double rhs = dx / a;
  const double stat = std::fabs(a - x1 * x2) * a / den;
  CheckRecord r = record(CheckName::lagrange_bound, subject, lhs, rhs, stat);
  r.status = stat <= 1.0 ? BoundStatus::within_baseline : BoundStatus::new_extreme;
  return r;
}

CheckRecord lagrange_random_check(int count, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const double a = 1e3 * (1.0 - unit(rng));
    const double x1 = -1e3 + 2e3 * unit(rng);
    const double x2 = -1e3 + 2e3 * unit(rng);
    const double s = lagrange_bound_check(x1, x2, a).statistic;
    worst = std::max(worst, s);
    violations += s > 1.0 ? 1 : 0;
  }
  CheckRecord r = record(CheckName::lagrange_bound, "random=" + std::to_string(count) + ";seed=" + std::to_string(seed),
                         worst, 1.0, worst);
  r.note = "violations=" + std::to_string(violations);
  r.status = violations == 0 ? BoundStatus::within_baseline : BoundStatus::new_extreme;
  return r;
}

CheckRecord s_of_t_check(double T, const PrecisionBudget& budget) {
  const auto c = count_zeros_N(T, budget);
  return record(CheckName::s_of_t, fmt("T=%.6g", T), c.count, c.count - c.s_t, c.s_t);
}

// ---- population statistics -------------------------------------------------

double log_deriv_zero_sum_residual(double sigma, double t, const std::vector<ZetaZero>& zeros, const Coverage& cov,
                                   const PrecisionBudget& budget, double window) {
  require_cover(cov, t - window, t + window, "log-derivative residual");
  const auto q = eval_zeta_log_deriv(Complex(sigma, t), budget);
  const double x = sigma - 0.5;
  double sum = 0.0;
  for (const auto& z : zeros) {
    const double d = t - z.ordinate.to_double();
    if (std::fabs(d) <= window && (x != 0.0 || d != 0.0)) sum += x / (x * x + d * d);
  }
  return q.value.re().to_double() - sum + 0.5 * std::log(t);
}

ZeroDensityStat zero_density_stat(double T, const std::vector<ZetaZero>& zeros, const Coverage& cov) {
  require_cover(cov, T - 1.0, T + 1.0, "zero density");
  ZeroDensityStat s;
  for (const auto& z : zeros) {
    const double d = z.ordinate.to_double() - T;
    if (std::fabs(d) <= 1.0) ++s.near_count;
    if (std::fabs(d) >= 1.0) s.far_sum += 1.0 / (d * d);
  }
  return s;
}

double nearest_ordinate_distance(double T, const std::vector<ZetaZero>& zeros, const Coverage& cov) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : zeros) best = std::min(best, std::fabs(z.ordinate.to_double() - T));
  require_cover(cov, T - best, T + best, "nearest ordinate");
  return best;
}

int window_count(double T, double h, const std::vector<ZetaZero>& zeros, const Coverage& cov) {
  require_cover(cov, T, T + h, "window count");
  int n = 0;
  for (const auto& z : zeros) {
    const double g = z.ordinate.to_double();
    n += g >= T && g <= T + h ? 1 : 0;
  }
  return n;
}

// ---- batch -----------------------------------------------------------------

std::vector<ZeroPairing> pair_all(const Population& pop) {
  std::vector<ZeroPairing> out;
  for (const auto& d : pop.dzeros) {
    const double g = d.gamma.to_double();
    if (!pop.zero_cov.contains(g - 2.0, g + 2.0)) continue;
    out.push_back(nearest_ordinate(d, pop.zeros, pop.zero_cov));
  }
  return out;
}

PopulationSummary summarize(const Population& pop, const VerifyOptions& opt) {
  PopulationSummary s;
  s.pairings = pair_all(pop);
  const auto& pairings = s.pairings;
  const double T_nu = pop.dzero_cov.hi;
  for (const auto& p : pairings) {
    const double v = p.gap * std::log(p.dzero.gamma.to_double());
    s.min_gap_log_gamma = s.min_gap_log_gamma ? std::min(*s.min_gap_log_gamma, v) : v;
  }
  for (const auto& d : pop.dzeros) {
    const double b = d.beta.to_double() - 0.5;
    const double g = d.gamma.to_double();
    s.all_right_of_half = s.all_right_of_half && b > 0.0;
    if (b > 0.0 && g > std::exp(1.0)) {
      const double v = b * std::log(g) * std::pow(std::log(std::log(g)), 2);
      s.min_offset_loglog = s.min_offset_loglog ? std::min(*s.min_offset_loglog, v) : v;
    }
  }
  for (const auto& z : pop.zeros) s.suspect_multiple += z.suspect_multiple ? 1 : 0;
  for (double t : {50.0, 100.0, 200.0}) {
    if (t + 50.0 <= pop.zero_cov.hi) {
      s.log_deriv_residuals.emplace_back(t, log_deriv_zero_sum_residual(0.5, t, pop.zeros, pop.zero_cov, opt.budget));
    }
  }
  for (double T : {100.0, 500.0}) {
    if (T + 1.0 <= pop.zero_cov.hi) s.density.emplace_back(T, zero_density_stat(T, pop.zeros, pop.zero_cov));
  }
  const double top = std::min(500.0, pop.zero_cov.hi - 5.0);
  if (top > 50.0 && !pop.zeros.empty()) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0, scaled = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double T = 50.0 + (top - 50.0) * unit(rng);
      const double d = nearest_ordinate_distance(T, pop.zeros, pop.zero_cov);
      worst = std::max(worst, d);
      scaled = std::max(scaled, d * std::log(std::log(std::log(T))));
    }
    s.nearest_distance_max = worst;
    s.nearest_distance_scaled = scaled;
  }
  for (double T : {100.0, 500.0}) {
    if (T + 0.5 <= pop.zero_cov.hi) s.short_windows.emplace_back(T, window_count(T, 0.5, pop.zeros, pop.zero_cov));
  }
  if (T_nu >= 50.0 && !pop.dzeros.empty()) {
    for (int k = -4; k <= 20; ++k) {
      try {
        s.m_nu.push_back(empirical_m_nu(0.5 * k, T_nu, pop.dzeros, pop.dzero_cov));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::empty_population) throw;
      }
    }
  }
  return s;
}

std::vector<CheckRecord> run_checks(const Population& pop, const VerifyOptions& opt, PopulationSummary* summary) {
  auto wanted = [&](CheckName n) { return opt.selected.empty() || opt.selected.count(n) > 0; };
  const double W = opt.half_width;
  const double collision = 1e3 * opt.budget.target_abs_error;
  const auto pairings = pair_all(pop);
  std::vector<CheckRecord> out;
  auto append = [&](std::vector<CheckRecord>&& part) {
    for (auto& r : part) out.push_back(std::move(r));
  };

  if (wanted(CheckName::lemma1_sum)) {
    for (const auto& z : pop.zeros) {
      const double g = z.ordinate.to_double();
      if (z.suspect_multiple || g + W > pop.dzero_cov.hi) continue;
      out.push_back(lemma1_sum(z, pop.dzeros, pop.dzero_cov, W));
    }
  }
  if (wanted(CheckName::fe_identity)) {
    std::vector<CheckRecord> part(pop.dzeros.size());
    parallel_for(static_cast<int>(part.size()), opt.workers, [&](int i) {
      part[static_cast<size_t>(i)] = fe_identity_check(pop.dzeros[static_cast<size_t>(i)], opt.budget);
    });
    append(std::move(part));
  }
  if (wanted(CheckName::ready_ineq)) {
    for (const auto& d : pop.dzeros) {
      if (d.gamma.to_double() + W > pop.zero_cov.hi) continue;
      out.push_back(ready_inequality(d, pop.zeros, pop.zero_cov, W, collision));
    }
  }
  if (wanted(CheckName::thm1_stat)) {
    for (const auto& p : pairings) out.push_back(gap_straddle_ratio(p));
  }
  if (wanted(CheckName::thm2_ratio)) {
    for (const auto& p : pairings) out.push_back(gap_offset_ratio(p));
  }
  const auto heights = sample_heights(pop.dzero_cov.hi);
  if (wanted(CheckName::lm_cumsum)) {
    for (double T : heights) out.push_back(lm_cumsum(T, pop.dzeros, pop.dzero_cov));
  }
  if (wanted(CheckName::berndt_count)) {
    for (double T : heights) out.push_back(berndt_count_check(T, pop.dzeros, pop.dzero_cov));
  }
  if (wanted(CheckName::trunc_logderiv)) {
    for (const auto& p : pairings) out.push_back(trunc_logderiv_residual(p.dzero, pop.zeros, p, pop.zero_cov, collision));
  }
  const double T_nu = pop.dzero_cov.hi;
  if (wanted(CheckName::m_nu) && T_nu >= 50.0) {
    for (double nu : {-10.0, -1.0, 0.0, 0.5, 1.0, 2.0, 5.0, 1000.0}) {
      out.push_back(m_nu_record(empirical_m_nu(nu, T_nu, pop.dzeros, pop.dzero_cov), pop.dzeros));
    }
  }
  if (wanted(CheckName::lagrange_bound)) {
    out.push_back(lagrange_bound_check(1.0, 0.0, 1.0));
    out.push_back(lagrange_bound_check(0.3, 0.3, 2.0));
    out.push_back(lagrange_random_check(opt.lagrange_samples, opt.seed));
  }
  if (wanted(CheckName::s_of_t)) {
    std::vector<double> ts;
    for (double T : sample_heights(pop.zero_cov.hi)) {
      if (T >= 10.0) ts.push_back(T);
    }
    std::vector<CheckRecord> part(ts.size());
    parallel_for(static_cast<int>(ts.size()), opt.workers, [&](int i) {
      double T = ts[static_cast<size_t>(i)];
      for (int attempt = 0;; ++attempt) {
        try {
          part[static_cast<size_t>(i)] = s_of_t_check(T, opt.budget);
          break;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::ordinate_collision || attempt >= 4) throw;
          T += 1e-5;
        }
      }
    });
    append(std::move(part));
  }

  if (summary) *summary = summarize(pop, opt);
  return out;
}

}  // namespace zetalab
