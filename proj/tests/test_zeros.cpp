#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zetalab/zeros.hpp"

using namespace zetalab;

namespace {

const PrecisionBudget kBudget{128, 1e-30, 32};

// First ordinate; agrees with the bisection oracle to 1e-12 (checked below).
constexpr const char* kGamma1 = "14.134725141734693790457251983562470270784";
// First zero of zeta'; the eta-series winding oracle puts exactly one zero
// in [0,3]x[20,26].
constexpr const char* kRho1Beta = "2.4631618694543212858743950533";
constexpr const char* kRho1Gamma = "23.298320492762857902010961626";
// Zeros of zeta' in [0,3]x(2,T], from oracle::zeta_prime_winding
// (h = 0.05, 160 terms, 400 bits).
constexpr int kDerivCount50 = 5;
constexpr int kDerivCount100 = 19;

double diff(const Real& a, const char* literal) {
  PrecisionScope scope(256);
  return abs(a - Real::parse(literal)).to_double();
}

DerivZero dz(double beta, double gamma) { return DerivZero{Real(beta), Real(gamma), 0.0, "t"}; }

ZetaZero zz(int index, double ordinate) { return ZetaZero{index, Real(ordinate), 0.0, true, false}; }

}  // namespace

TEST_CASE("N(T) by argument variation") {
  CHECK(count_zeros_N(10.0, kBudget).count == 0);
  CHECK(count_zeros_N(50.0, kBudget).count == 10);
  CHECK(count_zeros_N(100.0, kBudget).count == 29);
  for (double T : {50.0, 100.0, 500.0}) {
    const auto c = count_zeros_N(T, kBudget);
    CHECK(std::fabs(c.s_t) <= 3.0);
  }
  CHECK_THROWS_AS(count_zeros_N(1.0, kBudget), Error);
  try {
    count_zeros_N(14.134725141734694, kBudget);
    FAIL("expected ordinate collision");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ordinate_collision);
  }
}

TEST_CASE("scan finds the first ordinate") {
  auto zeros = scan_critical_zeros(10.0, 15.0, kBudget);
  REQUIRE(zeros.size() == 1);
  CHECK(zeros[0].index == 1);
  CHECK(zeros[0].certified);
  CHECK(diff(zeros[0].ordinate, kGamma1) < 1e-30);
  CHECK(zeros[0].residual <= 100.0 * kBudget.target_abs_error);
  const double root = oracle::bisect_root(
      [](double t) { return hardy_z(Real(t), PrecisionBudget::coarse()).value.re().to_double(); }, 14.0, 15.0, 45);
  CHECK(zeros[0].ordinate.to_double() == doctest::Approx(root).epsilon(1e-12));
}

TEST_CASE("scan below the first ordinate is empty") {
  CHECK(scan_critical_zeros(2.0, 14.0, kBudget).empty());
}

TEST_CASE("scan of [10, 50] returns ten certified consecutive zeros") {
  auto zeros = scan_critical_zeros(10.0, 50.0, kBudget);
  REQUIRE(zeros.size() == 10);
  for (size_t i = 0; i < zeros.size(); ++i) {
    CHECK(zeros[i].index == static_cast<int>(i) + 1);
    CHECK(zeros[i].certified);
    CHECK_FALSE(zeros[i].suspect_multiple);
    CHECK(zeros[i].residual <= 100.0 * kBudget.target_abs_error);
    if (i > 0) CHECK(zeros[i - 1].ordinate < zeros[i].ordinate);
  }
}

TEST_CASE("scan rejects windows outside the desk-scale range") {
  CHECK_THROWS_AS(scan_critical_zeros(1.0, 20.0, kBudget), Error);
  CHECK_THROWS_AS(scan_critical_zeros(10.0, 2e4, kBudget), Error);
  CHECK_THROWS_AS(scan_critical_zeros(30.0, 20.0, kBudget), Error);
}

TEST_CASE("scan is independent of the worker count") {
  auto one = scan_critical_zeros(2.0, 80.0, kBudget, 1);
  auto three = scan_critical_zeros(2.0, 80.0, kBudget, 3);
  REQUIRE(one.size() == three.size());
  for (size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].ordinate.to_exact_string() == three[i].ordinate.to_exact_string());
    CHECK(one[i].residual == three[i].residual);
  }
}

TEST_CASE("zeta' rectangle around the first zero") {
  CHECK(oracle::zeta_prime_winding(0.0, 3.0, 20.0, 26.0, 0.05, 80, 128) == 1);
  SearchRect rect{0.0, 3.0, 20.0, 26.0, 0};
  auto found = find_zeta_prime_zeros(rect, kBudget);
  CHECK(rect.winding == 1);
  REQUIRE(found.size() == 1);
  CHECK(diff(found[0].beta, kRho1Beta) < 1e-28);
  CHECK(diff(found[0].gamma, kRho1Gamma) < 1e-27);
  CHECK(found[0].residual <= 100.0 * kBudget.target_abs_error);
  CHECK_FALSE(found[0].rect_id.empty());
}

TEST_CASE("zeta' rectangle below the first zero is empty") {
  CHECK(oracle::zeta_prime_winding(0.0, 3.0, 2.0, 10.0, 0.05, 60, 128) == 0);
  SearchRect rect{0.0, 3.0, 2.0, 10.0, 0};
  CHECK(find_zeta_prime_zeros(rect, kBudget).empty());
  CHECK(rect.winding == 0);
  CHECK(zeta_prime_winding(rect) == 0);
}

TEST_CASE("zeta' rectangles outside the strip are rejected") {
  SearchRect left{-1.0, 3.0, 20.0, 26.0, 0};
  CHECK_THROWS_AS(find_zeta_prime_zeros(left, kBudget), Error);
  SearchRect low{0.0, 3.0, 1.0, 26.0, 0};
  CHECK_THROWS_AS(find_zeta_prime_zeros(low, kBudget), Error);
}

TEST_CASE("zeta' census matches the winding oracle and the main term") {
  auto all = census_zeta_prime_zeros(3.0, 200.0, kBudget, 2);
  auto upto = [&](double T) {
    int n = 0;
    for (const auto& z : all) n += z.gamma.to_double() <= T ? 1 : 0;
    return n;
  };
  CHECK(upto(50.0) == kDerivCount50);
  CHECK(upto(100.0) == kDerivCount100);
  CHECK(std::fabs(kDerivCount100 - berndt_main_term(100.0)) <= 3.0 * std::log(100.0));
  double worst = 0.0;
  for (double T : {50.0, 100.0, 200.0}) {
    worst = std::max(worst, std::fabs(upto(T) - berndt_main_term(T)) / std::log(T));
  }
  CHECK(worst <= 3.0);
  MESSAGE("max |N'(T) - main term| / log T over T = 50, 100, 200: " << worst);

  bool right_of_half = true;
  for (const auto& z : all) {
    CHECK(z.beta > Real(0.0));
    CHECK(z.beta < Real(3.0));
    CHECK(z.residual <= 100.0 * kBudget.target_abs_error);
    right_of_half = right_of_half && z.beta > Real(0.5);
  }
  MESSAGE("all zeros of zeta' up to 200 lie right of 1/2: " << std::string(right_of_half ? "yes" : "no"));
  for (size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].gamma <= all[i].gamma);
}

TEST_CASE("zeta' census is independent of the worker count") {
  auto one = census_zeta_prime_zeros(3.0, 60.0, kBudget, 1);
  auto two = census_zeta_prime_zeros(3.0, 60.0, kBudget, 2);
  REQUIRE(one.size() == two.size());
  for (size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].gamma.to_exact_string() == two[i].gamma.to_exact_string());
    CHECK(one[i].rect_id == two[i].rect_id);
  }
}

TEST_CASE("no zeros of zeta left of the critical line") {
  CHECK(offline_zero_count(0.49, 2.0, 100.0) == 0);
  CHECK(zeta_winding(SearchRect{0.0, 1.0, 10.0, 15.0, 0}) == 1);
  CHECK(zeta_winding(SearchRect{0.0, 1.0, 2.0, 14.0, 0}) == 0);
}

TEST_CASE("nearest ordinate") {
  auto zeros = scan_critical_zeros(2.0, 30.0, kBudget);
  const Coverage cov{2.0, 30.0};
  SearchRect rect{0.0, 3.0, 20.0, 26.0, 0};
  const auto rho = find_zeta_prime_zeros(rect, kBudget).at(0);
  const auto p = nearest_ordinate(rho, zeros, cov);
  // 25.0109 is 1.71 away, 21.0220 is 2.28 away.
  CHECK(p.index_c == 3);
  CHECK(p.gamma_c.to_double() == doctest::Approx(25.010857580145688));
  CHECK(p.gap == doctest::Approx(25.010857580145688 - 23.298320492762858));
  CHECK(p.beta_offset == doctest::Approx(2.4631618694543213 - 0.5));
  CHECK_FALSE(p.straddle_gap.has_value());
  for (const auto& z : zeros) CHECK(p.gap <= std::fabs(z.ordinate.to_double() - 23.298320492762858));

  const std::vector<ZetaZero> single{zz(1, 40.0)};
  CHECK(nearest_ordinate(dz(0.8, 40.0), single, Coverage{30.0, 50.0}).gap == 0.0);

  const std::vector<ZetaZero> tie{zz(1, 39.0), zz(2, 41.0)};
  CHECK(nearest_ordinate(dz(0.8, 40.0), tie, Coverage{30.0, 50.0}).index_c == 1);

  const std::vector<ZetaZero> dense{zz(1, 39.2), zz(2, 39.6), zz(3, 40.1), zz(4, 40.9), zz(5, 42.0)};
  const auto s = nearest_ordinate(dz(0.8, 40.0), dense, Coverage{30.0, 50.0});
  REQUIRE(s.straddle_gap.has_value());
  CHECK(*s.straddle_gap == doctest::Approx(0.9));
  CHECK(s.straddle_gamma_n == doctest::Approx(39.2));

  CHECK_THROWS_AS(nearest_ordinate(dz(0.8, 29.0), zeros, cov), Error);
}
