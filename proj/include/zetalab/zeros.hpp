// Zeros of zeta on the critical line and zeros of zeta' in the strip.
//
// Critical-line ordinates come from sign changes of Hardy's Z, certified
// against the argument-principle count N(T). Zeros of zeta' come from
// winding-number subdivision of rectangles followed by Newton refinement.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/numerics.hpp"

namespace zetalab {

struct ZetaZero {
  int index = 0;
  Real ordinate;
  double residual = 0.0;  // |Z(ordinate)|
  bool certified = false;
  /// Another ordinate lies within 1e3 * target; excluded from simple-zero checks.
  bool suspect_multiple = false;
};

struct DerivZero {
  Real beta;
  Real gamma;
  double residual = 0.0;  // |zeta'(beta + i gamma)|
  std::string rect_id;
};

struct SearchRect {
  double sigma_min = 0.0;
  double sigma_max = 3.0;
  double t_min = 0.0;
  double t_max = 0.0;
  int winding = 0;
};

/// Ordinate interval over which a zero list is complete and certified.
struct Coverage {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double a, double b) const { return lo <= a && b <= hi; }
};

struct ZeroPairing {
  DerivZero dzero;
  Real gamma_c;
  int index_c = 0;
  double gap = 0.0;
  double beta_offset = 0.0;
  /// min of gamma_{n+2} - gamma_n over gamma' - 1 <= gamma_n <= gamma_{n+2} <= gamma' + 1;
  /// empty when no such triple of ordinates exists.
  std::optional<double> straddle_gap;
  double straddle_gamma_n = 0.0;
};

struct ZeroCount {
  int count = 0;
  double s_t = 0.0;
};

/// Number of zeros with 0 < gamma <= T, from theta(T)/pi + 1 + S(T) with S
/// tracked along 2 + iT -> 1/2 + iT. Throws ordinate_collision when T sits on a zero.
ZeroCount count_zeros_N(double T, const PrecisionBudget& budget);

/// Zeros of Z in (t_min, t_max], refined and certified segment by segment.
/// Throws certification_mismatch when sign changes and N(T) disagree after
/// all refinements.
std::vector<ZetaZero> scan_critical_zeros(double t_min, double t_max, const PrecisionBudget& budget,
                                          int workers = 1);

/// Zeros of zeta' inside `rect`; sets rect.winding to the enclosed count.
std::vector<DerivZero> find_zeta_prime_zeros(SearchRect& rect, const PrecisionBudget& budget);

/// All zeros of zeta' in [0, sigma_max] x [2, t_max], processed in fixed
/// 10-unit bands. Returned sorted by gamma.
std::vector<DerivZero> census_zeta_prime_zeros(double sigma_max, double t_max, const PrecisionBudget& budget,
                                               int workers = 1);

/// Number of zeros of zeta in the rectangle (argument principle, phase
/// tracking at the coarse budget).
int zeta_winding(const SearchRect& rect);
/// Number of zeros of zeta' in the rectangle.
int zeta_prime_winding(const SearchRect& rect);

/// Zeros of zeta in [0, sigma_max] x [t_min, t_max] found by winding, banded
/// as above. Zero when every zero in the window lies on or right of sigma_max.
int offline_zero_count(double sigma_max, double t_min, double t_max, int workers = 1);

/// Nearest ordinate to gamma', ties toward the smaller index.
/// Throws insufficient_coverage unless [gamma' - 2, gamma' + 2] is covered.
ZeroPairing nearest_ordinate(const DerivZero& dzero, const std::vector<ZetaZero>& zeros, const Coverage& coverage);

/// (T / 2 pi) log(T / (4 pi e)).
double berndt_main_term(double T);

}  // namespace zetalab
