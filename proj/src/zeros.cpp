#include "zetalab/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "zetalab/parallel.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanCap = 1e4;
constexpr double kSegment = 10.0;
// Samples below this magnitude are treated as lying on a zero.
constexpr double kPhaseFloor = 1e-9;
constexpr double kMaxPiece = 0.25;
constexpr int kMaxDepth = 40;
constexpr int kMaxHalvings = 6;
constexpr int kMaxNudges = 8;
constexpr int kMaxSplitDepth = 14;

double nudge_step() { return 3.0 * std::sqrt(PrecisionBudget::coarse().target_abs_error); }

std::complex<double> to_std(const Complex& z) { return {z.re().to_double(), z.im().to_double()}; }

using Sampler = std::function<std::complex<double>(double, double)>;

std::complex<double> coarse_zeta(double sigma, double t) {
  return to_std(eval_zeta(Complex(sigma, t), PrecisionBudget::coarse()).value);
}

std::complex<double> coarse_zeta_prime(double sigma, double t) {
  return to_std(eval_zeta_prime(Complex(sigma, t), PrecisionBudget::coarse()).value);
}

// Continuous argument change of f along straight segments, sampled until
// consecutive samples differ in phase by less than pi/4.
class PhaseTracker {
 public:
  explicit PhaseTracker(Sampler f) : f_(std::move(f)) {}

  std::complex<double> at(double sigma, double t) {
    auto key = std::make_pair(sigma, t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const auto v = f_(sigma, t);
    if (std::abs(v) < kPhaseFloor) {
      throw Error(ErrorKind::ordinate_collision,
                  "contour passes through a zero near " + std::to_string(sigma) + " + " + std::to_string(t) + "i");
    }
    memo_.emplace(key, v);
    return v;
  }

  double change(double s0, double t0, double s1, double t1) {
    const double length = std::hypot(s1 - s0, t1 - t0);
    const int pieces = std::max(1, static_cast<int>(std::ceil(length / kMaxPiece)));
    double total = 0.0;
    double ps = s0, pt = t0;
    auto pf = at(ps, pt);
    for (int i = 1; i <= pieces; ++i) {
      const double qs = i == pieces ? s1 : s0 + (s1 - s0) * i / pieces;
      const double qt = i == pieces ? t1 : t0 + (t1 - t0) * i / pieces;
      const auto qf = at(qs, qt);
      total += refine(ps, pt, pf, qs, qt, qf, 0);
      ps = qs;
      pt = qt;
      pf = qf;
    }
    return total;
  }

 private:
  double refine(double as, double at_, std::complex<double> fa, double bs, double bt, std::complex<double> fb,
                int depth) {
    const double whole = std::arg(fb / fa);
    const double ms = 0.5 * (as + bs), mt = 0.5 * (at_ + bt);
    const auto fm = at(ms, mt);
    const double left = std::arg(fm / fa);
    const double right = std::arg(fb / fm);
    if (std::fabs(left) < kPi / 4 && std::fabs(right) < kPi / 4 && std::fabs(left + right - whole) < 1e-6) {
      return left + right;
    }
    if (depth >= kMaxDepth) {
      if (std::fabs(whole) >= kPi / 2) {
        throw Error(ErrorKind::winding_instability, "argument change unresolved at maximum refinement");
      }
      return whole;
    }
    return refine(as, at_, fa, ms, mt, fm, depth + 1) + refine(ms, mt, fm, bs, bt, fb, depth + 1);
  }

  Sampler f_;
  std::map<std::pair<double, double>, std::complex<double>> memo_;
};

int round_winding(double total) {
  const double w = total / (2.0 * kPi);
  const double r = std::round(w);
  if (std::fabs(w - r) > 0.05 || r < 0) {
    throw Error(ErrorKind::winding_instability, "non-integral winding " + std::to_string(w));
  }
  return static_cast<int>(r);
}

// Winding of the tracked function around rect, counterclockwise.
int rect_winding(PhaseTracker& tr, const SearchRect& r) {
  double total = tr.change(r.sigma_min, r.t_min, r.sigma_max, r.t_min);
  total += tr.change(r.sigma_max, r.t_min, r.sigma_max, r.t_max);
  total += tr.change(r.sigma_max, r.t_max, r.sigma_min, r.t_max);
  total += tr.change(r.sigma_min, r.t_max, r.sigma_min, r.t_min);
  return round_winding(total);
}

// Winding with boundary nudging: an edge through a zero is moved by
// 3 sqrt(coarse target), up or right.
int nudged_winding(PhaseTracker& tr, SearchRect& r) {
  for (int attempt = 0;; ++attempt) {
    try {
      return rect_winding(tr, r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ordinate_collision || attempt >= kMaxNudges) throw;
      r.sigma_min += nudge_step();
      r.sigma_max += nudge_step();
      r.t_min += nudge_step();
      r.t_max += nudge_step();
    }
  }
}

double theta_d(double t) {
  return riemann_siegel_theta(Real(t), PrecisionBudget::coarse()).value.re().to_double();
}

// ---- critical line ---------------------------------------------------------

double grid_step(double t) { return 2.0 * kPi / (std::max(1.0, std::log(t / (2.0 * kPi))) * 8.0); }

struct Boundary {
  double t = 0.0;
  int count = 0;
};

Boundary nudged_count(double t, const PrecisionBudget& budget) {
  for (int attempt = 0;; ++attempt) {
    try {
      return Boundary{t, count_zeros_N(t, budget).count};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ordinate_collision || attempt >= kMaxNudges) throw;
      t += nudge_step();
    }
  }
}

class ZSampler {
 public:
  explicit ZSampler(const PrecisionBudget& budget) : budget_(budget) {}

  // Sign of Z(t): coarse first, full budget when the coarse value is small.
  int sign(double t, bool full) {
    auto key = std::make_pair(t, full);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    double v = hardy_z(Real(t), full ? budget_ : PrecisionBudget::coarse()).value.re().to_double();
    if (!full && std::fabs(v) < 1e3 * PrecisionBudget::coarse().target_abs_error) {
      v = hardy_z(Real(t), budget_).value.re().to_double();
    }
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    memo_.emplace(key, s);
    return s;
  }

 private:
  PrecisionBudget budget_;
  std::map<std::pair<double, bool>, int> memo_;
};

struct Bracket {
  double a, b;
};

std::vector<Bracket> sign_changes(ZSampler& z, double a, double b, int pieces, bool full) {
  std::vector<Bracket> out;
  double prev_t = a;
  int prev = z.sign(a, full);
  for (int i = 1; i <= pieces; ++i) {
    double t = i == pieces ? b : a + (b - a) * i / pieces;
    int s = z.sign(t, full);
    if (s == 0) {
      // Grid point on a zero: move it off.
      t = std::nextafter(t, b) + 1e-7 * (b - a) / pieces;
      s = z.sign(t, full);
    }
    if (s != prev) out.push_back({prev_t, t});
    prev = s;
    prev_t = t;
  }
  return out;
}

Real z_value(const Real& t, const PrecisionBudget& budget, double* bound = nullptr) {
  auto r = hardy_z(t, budget);
  if (bound) *bound = r.abs_error_bound;
  return r.value.re();
}

// Bisection at the coarse budget, then Illinois at the full budget.
ZetaZero refine_ordinate(Bracket br, const PrecisionBudget& budget) {
  const PrecisionBudget coarse = PrecisionBudget::coarse();
  auto zc = [&](double t) { return hardy_z(Real(t), coarse).value.re().to_double(); };
  double a = br.a, b = br.b;
  double fa = zc(a);
  for (int i = 0; i < 60 && b - a > 1e-9 * std::max(1.0, a); ++i) {
    const double m = 0.5 * (a + b);
    const double fm = zc(m);
    if (std::fabs(fm) < 1e2 * coarse.target_abs_error) break;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }

  PrecisionScope scope(budget.mantissa_bits + 16);
  Real ra(a), rb(b);
  Real ga = z_value(ra, budget), gb = z_value(rb, budget);
  if (ga.sign() * gb.sign() > 0) {
    ra = Real(br.a);
    rb = Real(br.b);
    ga = z_value(ra, budget);
    gb = z_value(rb, budget);
  }
  if (ga.sign() == 0) return ZetaZero{0, ra, 0.0, false, false};
  if (gb.sign() == 0) return ZetaZero{0, rb, 0.0, false, false};

  double zb = 0.0;
  z_value(rb, budget, &zb);
  const double stop = std::max(budget.target_abs_error / 100.0, 4.0 * zb);
  const Real width_stop(std::ldexp(std::max(1.0, b), -budget.mantissa_bits));
  Real c = rb;
  double residual = std::fabs(gb.to_double());
  int last = 0;  // side replaced last: -1 low, +1 high
  for (int i = 0; i < 200; ++i) {
    c = rb - gb * (rb - ra) / (gb - ga);
    if (!(c > ra && c < rb)) c = (ra + rb) / 2.0;
    Real gc = z_value(c, budget);
    residual = std::fabs(gc.to_double());
    if (residual <= stop || rb - ra <= width_stop) break;
    if (gc.sign() == gb.sign()) {
      rb = c;
      gb = gc;
      if (last == 1) ga /= 2.0;
      last = 1;
    } else {
      ra = c;
      ga = gc;
      if (last == -1) gb /= 2.0;
      last = -1;
    }
  }
  if (residual > 100.0 * budget.target_abs_error) {
    throw Error(ErrorKind::budget_infeasible, "ordinate refinement stalled at residual " + std::to_string(residual));
  }
  return ZetaZero{0, c, residual, false, false};
}

std::vector<ZetaZero> scan_segment(const Boundary& lo, const Boundary& hi, const PrecisionBudget& budget) {
  const int expected = hi.count - lo.count;
  ZSampler z(budget);
  int pieces = std::max(1, static_cast<int>(std::ceil((hi.t - lo.t) / grid_step(hi.t))));
  std::vector<Bracket> brackets;
  bool matched = false;
  for (int halving = 0; halving <= kMaxHalvings + 1 && !matched; ++halving) {
    const bool full = halving > kMaxHalvings;
    if (halving > 0 && !full) pieces *= 2;
    brackets = sign_changes(z, lo.t, hi.t, pieces, full);
    matched = static_cast<int>(brackets.size()) == expected;
  }
  if (!matched) {
    throw Error(ErrorKind::certification_mismatch,
                "window (" + std::to_string(lo.t) + ", " + std::to_string(hi.t) + "]: " +
                    std::to_string(brackets.size()) + " sign changes, N(T) difference " + std::to_string(expected));
  }
  std::vector<ZetaZero> out;
  for (size_t j = 0; j < brackets.size(); ++j) {
    ZetaZero zz = refine_ordinate(brackets[j], budget);
    zz.index = lo.count + static_cast<int>(j) + 1;
    zz.certified = true;
    out.push_back(std::move(zz));
  }
  return out;
}

// ---- zeta' rectangles ------------------------------------------------------

bool inside(const Complex& z, const SearchRect& r) {
  const double s = z.re().to_double(), t = z.im().to_double();
  return s >= r.sigma_min && s <= r.sigma_max && t >= r.t_min && t <= r.t_max;
}

// Newton on zeta'/zeta'' from the centre: coarse, then at the full budget.
std::optional<DerivZero> newton_in(const SearchRect& r, const PrecisionBudget& budget) {
  Complex z(0.5 * (r.sigma_min + r.sigma_max), 0.5 * (r.t_min + r.t_max));
  {
    const PrecisionBudget coarse = PrecisionBudget::coarse();
    bool converged = false;
    for (int i = 0; i < 40; ++i) {
      auto d = eval_zeta_derivatives(z, 2, coarse);
      const Complex step = d[1].value / d[2].value;
      z -= step;
      if (!inside(z, r)) return std::nullopt;
      if (step.abs_d() < 1e-10) {
        converged = true;
        break;
      }
    }
    if (!converged) return std::nullopt;
  }
  PrecisionScope scope(budget.mantissa_bits + 16);
  Complex w(Real(z.re().to_double()), Real(z.im().to_double()));
  const double tiny = std::ldexp(std::max(1.0, r.t_max), -budget.mantissa_bits);
  double residual = 0.0;
  for (int i = 0; i < 30; ++i) {
    auto d = eval_zeta_derivatives(w, 2, budget);
    residual = d[1].value.abs_d();
    if (residual <= std::max(budget.target_abs_error / 100.0, 4.0 * d[1].abs_error_bound)) break;
    const Complex step = d[1].value / d[2].value;
    w -= step;
    if (!inside(w, r)) return std::nullopt;
    if (step.abs_d() <= tiny) {
      residual = eval_zeta_prime(w, budget).value.abs_d();
      break;
    }
  }
  if (residual > 100.0 * budget.target_abs_error) return std::nullopt;
  return DerivZero{w.re(), w.im(), residual, {}};
}

SearchRect child(const SearchRect& r, int q, double sm, double tm) {
  SearchRect c = r;
  if (q & 1) c.sigma_min = sm; else c.sigma_max = sm;
  if (q & 2) c.t_min = tm; else c.t_max = tm;
  return c;
}

void solve_rect(PhaseTracker& tr, const SearchRect& r, const PrecisionBudget& budget, const std::string& id,
                int depth, std::vector<DerivZero>& out) {
  if (r.winding == 0) return;
  if (r.winding == 1) {
    if (auto z = newton_in(r, budget)) {
      z->rect_id = id;
      out.push_back(std::move(*z));
      return;
    }
  }
  if (depth >= kMaxSplitDepth) {
    throw Error(ErrorKind::newton_escape, "Newton iteration did not settle inside rectangle " + id);
  }
  // Split lines are free choices; move them off any zero they hit.
  for (int attempt = 0;; ++attempt) {
    const double shift = 0.0137 * attempt;
    const double sm = r.sigma_min + (0.5 + shift) * (r.sigma_max - r.sigma_min);
    const double tm = r.t_min + (0.5 + shift) * (r.t_max - r.t_min);
    try {
      std::array<SearchRect, 4> kids;
      int sum = 0;
      for (int q = 0; q < 4; ++q) {
        kids[static_cast<size_t>(q)] = child(r, q, sm, tm);
        kids[static_cast<size_t>(q)].winding = rect_winding(tr, kids[static_cast<size_t>(q)]);
        sum += kids[static_cast<size_t>(q)].winding;
      }
      if (sum != r.winding) {
        throw Error(ErrorKind::winding_instability,
                    "sub-rectangle windings of " + id + " sum to " + std::to_string(sum) + ", expected " +
                        std::to_string(r.winding));
      }
      for (int q = 0; q < 4; ++q) {
        solve_rect(tr, kids[static_cast<size_t>(q)], budget, id + std::to_string(q), depth + 1, out);
      }
      return;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ordinate_collision || attempt >= kMaxNudges) throw;
    }
  }
}

void check_rect(const SearchRect& r) {
  if (!(r.sigma_min < r.sigma_max) || !(r.t_min < r.t_max)) throw Error(ErrorKind::domain, "empty rectangle");
  if (r.sigma_min < 0.0 || r.sigma_max > 3.0 || r.t_min < 2.0 || r.t_max > kScanCap) {
    throw Error(ErrorKind::domain, "rectangle must lie in [0, 3] x [2, 1e4]");
  }
}

// Band edges at 2 + 10k (and t_max); a horizontal edge through a zero of f
// is moved up before any band uses it.
std::vector<double> band_edges(double t_min, double t_max, double sigma_lo, double sigma_hi, const Sampler& f) {
  std::vector<double> edges;
  for (double t = t_min; t < t_max - 1e-9; t += kSegment) edges.push_back(t);
  edges.push_back(t_max);
  for (auto& h : edges) {
    PhaseTracker tr(f);
    for (int attempt = 0;; ++attempt) {
      try {
        tr.change(sigma_lo, h, sigma_hi, h);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ordinate_collision || attempt >= kMaxNudges) throw;
        h += nudge_step();
      }
    }
  }
  return edges;
}

}  // namespace

// ---- public ----------------------------------------------------------------

double berndt_main_term(double T) { return T / (2.0 * kPi) * std::log(T / (4.0 * kPi * std::exp(1.0))); }

ZeroCount count_zeros_N(double T, const PrecisionBudget& budget) {
  budget.validate();
  if (!(T >= 2.0) || !std::isfinite(T)) throw Error(ErrorKind::domain, "N(T) requires T >= 2");
  PhaseTracker tr(coarse_zeta);
  const double start = std::arg(tr.at(2.0, T));  // Re zeta(2 + iT) > 0
  const double s_arg = start + tr.change(2.0, T, 0.5, T);
  const double theta = theta_d(T);
  const double raw = theta / kPi + 1.0 + s_arg / kPi;
  const double count = std::round(raw);
  if (std::fabs(raw - count) > 1e-3) {
    throw Error(ErrorKind::winding_instability, "N(T) is not integral: " + std::to_string(raw));
  }
  return ZeroCount{static_cast<int>(count), count - (theta / kPi + 1.0)};
}

std::vector<ZetaZero> scan_critical_zeros(double t_min, double t_max, const PrecisionBudget& budget, int workers) {
  budget.validate();
  if (!(t_min >= 2.0) || !(t_min < t_max) || !(t_max <= kScanCap)) {
    throw Error(ErrorKind::domain, "scan window must satisfy 2 <= t_min < t_max <= 1e4");
  }
  std::vector<double> cuts;
  for (double t = t_min; t < t_max - 1e-9; t += kSegment) cuts.push_back(t);
  cuts.push_back(t_max);
  std::vector<Boundary> bounds(cuts.size());
  parallel_for(static_cast<int>(cuts.size()), workers,
               [&](int i) { bounds[static_cast<size_t>(i)] = nudged_count(cuts[static_cast<size_t>(i)], budget); });

  const int segments = static_cast<int>(cuts.size()) - 1;
  std::vector<std::vector<ZetaZero>> parts(static_cast<size_t>(segments));
  parallel_for(segments, workers, [&](int i) {
    parts[static_cast<size_t>(i)] = scan_segment(bounds[static_cast<size_t>(i)], bounds[static_cast<size_t>(i) + 1], budget);
  });

  std::vector<ZetaZero> out;
  for (auto& p : parts) {
    for (auto& z : p) out.push_back(std::move(z));
  }
  const Real close(1e3 * budget.target_abs_error);
  for (size_t i = 1; i < out.size(); ++i) {
    if (out[i].ordinate - out[i - 1].ordinate < close) {
      out[i].suspect_multiple = true;
      out[i - 1].suspect_multiple = true;
    }
  }
  return out;
}

int zeta_winding(const SearchRect& rect) {
  PhaseTracker tr(coarse_zeta);
  SearchRect r = rect;
  return nudged_winding(tr, r);
}

int zeta_prime_winding(const SearchRect& rect) {
  PhaseTracker tr(coarse_zeta_prime);
  SearchRect r = rect;
  return nudged_winding(tr, r);
}

std::vector<DerivZero> find_zeta_prime_zeros(SearchRect& rect, const PrecisionBudget& budget) {
  budget.validate();
  check_rect(rect);
  PhaseTracker tr(coarse_zeta_prime);
  rect.winding = nudged_winding(tr, rect);
  std::vector<DerivZero> out;
  solve_rect(tr, rect, budget, "r", 0, out);
  std::sort(out.begin(), out.end(), [](const DerivZero& a, const DerivZero& b) { return a.gamma < b.gamma; });
  return out;
}

std::vector<DerivZero> census_zeta_prime_zeros(double sigma_max, double t_max, const PrecisionBudget& budget,
                                               int workers) {
  budget.validate();
  check_rect(SearchRect{0.0, sigma_max, 2.0, t_max, 0});
  const auto edges = band_edges(2.0, t_max, 0.0, sigma_max, coarse_zeta_prime);
  const int bands = static_cast<int>(edges.size()) - 1;
  std::vector<std::vector<DerivZero>> parts(static_cast<size_t>(bands));
  parallel_for(bands, workers, [&](int k) {
    PhaseTracker tr(coarse_zeta_prime);
    SearchRect r{0.0, sigma_max, edges[static_cast<size_t>(k)], edges[static_cast<size_t>(k) + 1], 0};
    r.winding = rect_winding(tr, r);
    solve_rect(tr, r, budget, "b" + std::to_string(k) + ".", 0, parts[static_cast<size_t>(k)]);
  });
  std::vector<DerivZero> out;
  for (auto& p : parts) {
    for (auto& z : p) out.push_back(std::move(z));
  }
  std::sort(out.begin(), out.end(), [](const DerivZero& a, const DerivZero& b) { return a.gamma < b.gamma; });
  return out;
}

int offline_zero_count(double sigma_max, double t_min, double t_max, int workers) {
  const auto edges = band_edges(t_min, t_max, 0.0, sigma_max, coarse_zeta);
  const int bands = static_cast<int>(edges.size()) - 1;
  std::vector<int> counts(static_cast<size_t>(bands));
  parallel_for(bands, workers, [&](int k) {
    PhaseTracker tr(coarse_zeta);
    counts[static_cast<size_t>(k)] =
        rect_winding(tr, SearchRect{0.0, sigma_max, edges[static_cast<size_t>(k)], edges[static_cast<size_t>(k) + 1], 0});
  });
  int total = 0;
  for (int c : counts) total += c;
  return total;
}

ZeroPairing nearest_ordinate(const DerivZero& dzero, const std::vector<ZetaZero>& zeros, const Coverage& coverage) {
  const double g = dzero.gamma.to_double();
  if (!coverage.contains(g - 2.0, g + 2.0) || zeros.empty()) {
    throw Error(ErrorKind::insufficient_coverage,
                "zero list does not cover [" + std::to_string(g - 2.0) + ", " + std::to_string(g + 2.0) + "]");
  }
  PrecisionScope scope(std::max<mpfr_prec_t>(dzero.gamma.precision(), zeros.front().ordinate.precision()));
  ZeroPairing p;
  p.dzero = dzero;
  size_t best = 0;
  Real best_gap = abs(zeros[0].ordinate - dzero.gamma);
  for (size_t i = 1; i < zeros.size(); ++i) {
    Real d = abs(zeros[i].ordinate - dzero.gamma);
    if (d < best_gap) {
      best_gap = d;
      best = i;
    }
  }
  p.gamma_c = zeros[best].ordinate;
  p.index_c = zeros[best].index;
  p.gap = best_gap.to_double();
  p.beta_offset = (dzero.beta - 0.5).to_double();
  for (size_t i = 0; i + 2 < zeros.size(); ++i) {
    const double a = zeros[i].ordinate.to_double();
    const double b = zeros[i + 2].ordinate.to_double();
    if (a < g - 1.0 || b > g + 1.0) continue;
    const double gap = b - a;
    if (!p.straddle_gap || gap < *p.straddle_gap) {
      p.straddle_gap = gap;
      p.straddle_gamma_n = a;
    }
  }
  return p;
}

}  // namespace zetalab
