#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "zetalab/verify.hpp"

using namespace zetalab;

namespace {

const PrecisionBudget kBudget{128, 1e-30, 32};

const Population& population() {
  static const Population pop = [] {
    Population p;
    p.zeros = scan_critical_zeros(2.0, 250.0, kBudget);
    p.zero_cov = {2.0, 250.0};
    p.dzeros = census_zeta_prime_zeros(3.0, 250.0, kBudget);
    p.dzero_cov = {2.0, 250.0};
    return p;
  }();
  return pop;
}

const DerivZero& first_dzero() { return population().dzeros.at(0); }

ZeroPairing first_pairing() {
  const auto& pop = population();
  return nearest_ordinate(first_dzero(), pop.zeros, pop.zero_cov);
}

DerivZero dz(double beta, double gamma) { return DerivZero{Real(beta), Real(gamma), 0.0, "t"}; }

template <class F>
ErrorKind kind_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::config;
}

}  // namespace

TEST_CASE("check names round-trip") {
  for (CheckName n : all_check_names()) CHECK(parse_check_name(to_string(n)) == n);
  CHECK(all_check_names().size() == 11);
  CHECK(kind_of([] { parse_check_name("lemma3"); }) == ErrorKind::config);
}

TEST_CASE("windowed sum over zeros of zeta'") {
  const auto& pop = population();
  const ZetaZero& z1 = pop.zeros.at(0);

  const auto empty = lemma1_sum(z1, {}, pop.dzero_cov);
  CHECK(empty.lhs == 0.0);
  CHECK(empty.statistic == doctest::Approx(-0.5 * std::log(z1.ordinate.to_double())));
  CHECK(empty.status == BoundStatus::not_applicable);

  const auto r = lemma1_sum(z1, pop.dzeros, pop.dzero_cov, 50.0);
  CHECK(r.lhs > 0.0);
  CHECK(r.rhs == doctest::Approx(0.5 * std::log(14.134725141734693)));
  REQUIRE(r.tail_estimate.has_value());
  CHECK(*r.tail_estimate >= 0.0);
  CHECK(std::isfinite(r.statistic));

  const ZetaZero& z = pop.zeros.at(30);
  double previous = 0.0;
  for (double w : {50.0, 60.0, 80.0, 100.0}) {
    const double lhs = lemma1_sum(z, pop.dzeros, pop.dzero_cov, w).lhs;
    CHECK(lhs >= previous);
    previous = lhs;
  }

  ZetaZero suspect = z;
  suspect.suspect_multiple = true;
  CHECK(kind_of([&] { lemma1_sum(suspect, pop.dzeros, pop.dzero_cov); }) == ErrorKind::not_simple);
  CHECK(kind_of([&] { lemma1_sum(pop.zeros.back(), pop.dzeros, pop.dzero_cov); }) ==
        ErrorKind::insufficient_coverage);
  CHECK(kind_of([&] { lemma1_sum(z, pop.dzeros, pop.dzero_cov, 20.0); }) == ErrorKind::domain);
}

TEST_CASE("windowed sum residual is stable over the first twenty zeros above 20") {
  const auto& pop = population();
  double worst = 0.0;
  int n = 0;
  for (const auto& z : pop.zeros) {
    if (z.ordinate.to_double() < 20.0 || n == 20) continue;
    worst = std::max(worst, std::fabs(lemma1_sum(z, pop.dzeros, pop.dzero_cov).statistic));
    ++n;
  }
  CHECK(n == 20);
  // Frozen from this population: 1.2855 at gamma_2.
  CHECK(worst == doctest::Approx(1.2854).epsilon(1e-3));
}

TEST_CASE("functional-equation identity at zeros of zeta'") {
  const auto r = fe_identity_check(first_dzero(), kBudget);
  CHECK(r.rhs == doctest::Approx(std::log(23.298320492762858)));
  // Re zeta'/zeta(1 - s) = -Re zeta'/zeta(s) - log(t / 2 pi) + O(1/t^2), so the residual is near -log 2 pi.
  CHECK(r.statistic == doctest::Approx(-std::log(2 * M_PI)).epsilon(5e-3));

  DerivZero mirrored = first_dzero();
  {
    PrecisionScope scope(256);
    mirrored.beta = 1.0 - mirrored.beta;
  }
  const auto m = fe_identity_check(mirrored, kBudget);
  CHECK(std::fabs(m.lhs + r.lhs) <= 2 * 2 * kBudget.target_abs_error + 1e-25);

  CHECK(kind_of([] { fe_identity_check(dz(0.5, 30.0), kBudget); }) == ErrorKind::degenerate_beta);

  double worst = 0.0;
  for (const auto& d : population().dzeros) {
    if (d.gamma.to_double() > 100.0) break;
    worst = std::max(worst, std::fabs(fe_identity_check(d, kBudget).statistic));
  }
  CHECK(worst < 1.84);
  CHECK(worst > std::log(2 * M_PI) - 1e-3);
}

TEST_CASE("ready inequality") {
  const auto& pop = population();
  const auto r = ready_inequality(first_dzero(), pop.zeros, pop.zero_cov);
  CHECK(std::isfinite(r.statistic));
  REQUIRE(r.tail_estimate.has_value());
  CHECK(*r.tail_estimate > 0.0);

  DerivZero doubled = first_dzero();
  {
    PrecisionScope scope(256);
    doubled.beta = 0.5 + 2.0 * (doubled.beta - 0.5);
  }
  const auto d = ready_inequality(doubled, pop.zeros, pop.zero_cov);
  CHECK(d.lhs == doctest::Approx(2.0 * r.lhs).epsilon(1e-14));

  double lowest = 1e300;
  for (const auto& z : pop.dzeros) {
    const double g = z.gamma.to_double();
    if (g < 50.0 || g > 200.0) continue;
    lowest = std::min(lowest, ready_inequality(z, pop.zeros, pop.zero_cov).statistic);
  }
  // Frozen from this population.
  CHECK(lowest == doctest::Approx(-1.5486).epsilon(1e-3));

  const auto& z5 = pop.zeros.at(4);
  CHECK(kind_of([&] { ready_inequality(DerivZero{Real(0.9), z5.ordinate, 0.0, "t"}, pop.zeros, pop.zero_cov); }) ==
        ErrorKind::ordinate_collision);
  CHECK(kind_of([&] { ready_inequality(pop.dzeros.back(), pop.zeros, pop.zero_cov); }) ==
        ErrorKind::insufficient_coverage);
}

TEST_CASE("gap statistics from a pairing") {
  const auto p = first_pairing();
  const auto t1 = gap_straddle_ratio(p);
  const auto t2 = gap_offset_ratio(p);
  CHECK(std::isfinite(t1.statistic));
  CHECK(t1.statistic == doctest::Approx(p.gap * std::log(23.298320492762858) /
                                        std::sqrt((2.4631618694543213 - 0.5) * std::log(23.298320492762858))));
  CHECK(t2.statistic == doctest::Approx(p.gap / std::sqrt(2.4631618694543213 - 0.5)));

  ZeroPairing coincident = p;
  coincident.gap = 0.0;
  CHECK(gap_straddle_ratio(coincident).lhs == 0.0);
  CHECK(gap_straddle_ratio(coincident).statistic == 0.0);
  CHECK(gap_offset_ratio(coincident).statistic == 0.0);

  ZeroPairing degenerate = p;
  degenerate.beta_offset = 0.0;
  const auto na = gap_straddle_ratio(degenerate);
  CHECK(na.status == BoundStatus::not_applicable);
  CHECK_FALSE(na.note.empty());
  CHECK(kind_of([&] { gap_offset_ratio(degenerate); }) == ErrorKind::degenerate_beta);

  ZeroPairing straddled = p;
  straddled.straddle_gap = 0.01;
  straddled.straddle_gamma_n = 23.0;
  CHECK(gap_straddle_ratio(straddled).lhs == doctest::Approx(0.01 * std::log(23.0)));
}

TEST_CASE("Levinson-Montgomery cumulative sum") {
  const auto& pop = population();
  CHECK(lm_cumsum(20.0, pop.dzeros, pop.dzero_cov).lhs == 0.0);
  double previous = 0.0;
  for (double T : {30.0, 50.0, 100.0, 150.0, 200.0, 250.0}) {
    const auto r = lm_cumsum(T, pop.dzeros, pop.dzero_cov);
    CHECK(r.lhs >= previous);
    previous = r.lhs;
  }
  CHECK(lm_cumsum(100.0, pop.dzeros, pop.dzero_cov).statistic == doctest::Approx(0.78597).epsilon(1e-4));
  CHECK(kind_of([&] { lm_cumsum(300.0, pop.dzeros, pop.dzero_cov); }) == ErrorKind::insufficient_coverage);
}

TEST_CASE("Berndt count") {
  const auto& pop = population();
  const auto at10 = berndt_count_check(10.0, pop.dzeros, pop.dzero_cov);
  CHECK(at10.lhs == 0.0);
  CHECK(at10.statistic == doctest::Approx(-berndt_main_term(10.0) / std::log(10.0)));
  const auto at100 = berndt_count_check(100.0, pop.dzeros, pop.dzero_cov);
  const auto at200 = berndt_count_check(200.0, pop.dzeros, pop.dzero_cov);
  CHECK(at100.lhs == 19.0);
  CHECK(std::fabs(at200.statistic) <= 3.0 * std::fabs(at100.statistic));
  CHECK(std::fabs(at200.statistic) >= std::fabs(at100.statistic) / 3.0);
}

TEST_CASE("truncated log-derivative at zeros of zeta'") {
  const auto& pop = population();
  for (const auto& d : pop.dzeros) {
    const double g = d.gamma.to_double();
    if (g + 2.0 > pop.zero_cov.hi) break;
    const auto p = nearest_ordinate(d, pop.zeros, pop.zero_cov);
    const auto r = trunc_logderiv_residual(d, pop.zeros, p, pop.zero_cov);
    CHECK(std::isfinite(r.statistic));
    CHECK(r.note.empty());
  }
  const auto p = first_pairing();
  CHECK(trunc_logderiv_residual(first_dzero(), pop.zeros, p, pop.zero_cov).lhs ==
        doctest::Approx(std::abs(1.0 / std::complex<double>(2.4631618694543213 - 0.5, 23.298320492762858 - 25.010857580145688))));
}

TEST_CASE("empirical m(nu)") {
  const auto& pop = population();
  CHECK(empirical_m_nu(1000.0, 100.0, pop.dzeros, pop.dzero_cov).fraction == 1.0);
  CHECK(empirical_m_nu(-10.0, 100.0, pop.dzeros, pop.dzero_cov).fraction == 0.0);
  CHECK(empirical_m_nu(1.0, 100.0, pop.dzeros, pop.dzero_cov).fraction <=
        empirical_m_nu(2.0, 100.0, pop.dzeros, pop.dzero_cov).fraction);
  double previous = 0.0;
  for (int k = -20; k <= 40; ++k) {
    const double f = empirical_m_nu(0.25 * k, 250.0, pop.dzeros, pop.dzero_cov).fraction;
    CHECK(f >= previous);
    previous = f;
  }
  CHECK(kind_of([&] { empirical_m_nu(1.0, 40.0, pop.dzeros, pop.dzero_cov); }) == ErrorKind::domain);
  CHECK(kind_of([&] { empirical_m_nu(1.0, 100.0, {}, pop.dzero_cov); }) == ErrorKind::empty_population);
}

TEST_CASE("Lagrange bound") {
  const auto r = lagrange_bound_check(1.0, 0.0, 1.0);
  CHECK(r.lhs == 0.5);
  CHECK(r.rhs == 1.0);
  CHECK(r.statistic == 0.5);
  CHECK(lagrange_bound_check(3.0, 3.0, 2.0).lhs == 0.0);
  CHECK(lagrange_bound_check(3.0, 3.0, 2.0).statistic == 0.0);
  CHECK(kind_of([] { lagrange_bound_check(1.0, 0.0, 0.0); }) == ErrorKind::nonpositive_parameter);
  const auto rnd = lagrange_random_check(100000, 1);
  CHECK(rnd.statistic <= 1.0);
  CHECK(rnd.note == "violations=0");
  CHECK(rnd.status == BoundStatus::within_baseline);
}

TEST_CASE("S(T)") {
  const auto r = s_of_t_check(100.0, kBudget);
  CHECK(r.lhs == 29.0);
  CHECK(r.statistic == doctest::Approx(r.lhs - r.rhs));
  CHECK(std::fabs(r.statistic) < 1.0);
}

TEST_CASE("log-derivative against the zero sum") {
  const auto& pop = population();
  for (double t : {50.0, 100.0, 200.0}) {
    const double res = log_deriv_zero_sum_residual(0.5, t, pop.zeros, pop.zero_cov, kBudget);
    CHECK(std::fabs(res) <= 5.0);
    // On the critical line the residual sits near (1/2) log 2 pi.
    CHECK(res == doctest::Approx(0.5 * std::log(2 * M_PI)).epsilon(1e-3));
  }
  CHECK(std::fabs(log_deriv_zero_sum_residual(0.8, 100.0, pop.zeros, pop.zero_cov, kBudget)) <= 5.0);
}

TEST_CASE("zero density and short windows at desk heights") {
  const auto& pop = population();
  const auto d = zero_density_stat(100.0, pop.zeros, pop.zero_cov);
  // Neighbouring ordinates are 98.83 and 101.32.
  CHECK(d.near_count == 0);
  CHECK(d.far_sum == doctest::Approx(1.6298).epsilon(1e-3));
  CHECK(window_count(100.0, 0.5, pop.zeros, pop.zero_cov) == 0);
  CHECK(window_count(100.0, 1.5, pop.zeros, pop.zero_cov) == 1);
  CHECK(nearest_ordinate_distance(54.7, pop.zeros, pop.zero_cov) > 1.0);
  CHECK(nearest_ordinate_distance(14.0, pop.zeros, pop.zero_cov) == doctest::Approx(0.134725141734693));
}

TEST_CASE("baselines") {
  std::vector<CheckRecord> first{lagrange_bound_check(1.0, 0.0, 1.0), berndt_count_check(100.0, population().dzeros,
                                                                                         population().dzero_cov)};
  first[1].statistic = -0.4;
  Baselines b;
  CHECK_FALSE(b.apply(first));
  CHECK(b.get(CheckName::berndt_count).value() == 0.4);
  CHECK(b.get(CheckName::lagrange_bound).value() == 1.0);

  auto again = first;
  CHECK_FALSE(b.apply(again));
  again[1].statistic = 0.41;
  CHECK(b.apply(again));
  CHECK(again[1].status == BoundStatus::new_extreme);
  CHECK(again[0].status == BoundStatus::within_baseline);

  CheckRecord na;
  na.name = CheckName::thm1_stat;
  na.statistic = 5.0;
  na.status = BoundStatus::not_applicable;
  std::vector<CheckRecord> only{na};
  CHECK_FALSE(b.apply(only));
  CHECK_FALSE(b.get(CheckName::thm1_stat).has_value());
}

TEST_CASE("ready_ineq baseline bounds the statistic from below") {
  CheckRecord low;
  low.name = CheckName::ready_ineq;
  low.statistic = -1.5;
  CheckRecord high = low;
  high.statistic = 1e6;
  std::vector<CheckRecord> first{low, high};
  Baselines b;
  CHECK_FALSE(b.apply(first));
  CHECK(b.get(CheckName::ready_ineq).value() == 1.5);
  std::vector<CheckRecord> larger{high};
  larger[0].statistic = 1e9;
  CHECK_FALSE(b.apply(larger));
  std::vector<CheckRecord> lower{low};
  lower[0].statistic = -1.6;
  CHECK(b.apply(lower));
}

TEST_CASE("batch run is reproducible and summarises the population") {
  const auto& pop = population();
  VerifyOptions opt;
  opt.budget = kBudget;
  opt.lagrange_samples = 2000;
  PopulationSummary s1, s2;
  const auto one = run_checks(pop, opt, &s1);
  opt.workers = 3;
  const auto two = run_checks(pop, opt, &s2);
  REQUIRE(one.size() == two.size());
  for (size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].subject == two[i].subject);
    CHECK(one[i].statistic == two[i].statistic);
    CHECK(std::isfinite(one[i].statistic));
  }
  CHECK(s1.all_right_of_half);
  CHECK(s1.suspect_multiple == 0);
  CHECK(s1.pairings.size() == 80);
  REQUIRE(s1.min_gap_log_gamma.has_value());
  REQUIRE(s1.min_offset_loglog.has_value());
  CHECK(s1.log_deriv_residuals.size() == 3);
  REQUIRE(s1.nearest_distance_max.has_value());
  MESSAGE("min gap log gamma': " << *s1.min_gap_log_gamma);
  MESSAGE("min (beta' - 1/2) log gamma' (log log gamma')^2: " << *s1.min_offset_loglog);
  MESSAGE("max |gamma - T| over 20 seeded T in [50, 245]: " << *s1.nearest_distance_max);

  opt.selected = {CheckName::lagrange_bound};
  const auto only = run_checks(pop, opt, nullptr);
  CHECK(only.size() == 3);
}
