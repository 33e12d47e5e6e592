#include "zetalab/real.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zetalab {

namespace {
thread_local mpfr_prec_t g_precision = 128;
}

mpfr_prec_t working_precision() { return g_precision; }

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(g_precision) { g_precision = bits; }
PrecisionScope::~PrecisionScope() { g_precision = saved_; }

Real Real::parse(std::string_view text) {
  Real r;
  std::string buf(text);
  char* end = nullptr;
  if (!buf.empty()) mpfr_strtofr(r.v_, buf.c_str(), &end, 10, MPFR_RNDN);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw std::invalid_argument("not a decimal number: '" + buf + "'");
  }
  return r;
}

std::string Real::to_string(int digits) const {
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Re", digits - 1, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::string Real::to_exact_string() const {
  // 1 + ceil(p * log10(2)) digits guarantee a round trip.
  const int digits = 2 + static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120));
  return to_string(digits);
}

Real abs(const Real& x) {
  Real r;
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real sqrt(const Real& x) {
  Real r;
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real exp(const Real& x) {
  Real r;
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real log(const Real& x) {
  Real r;
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real log_ui(unsigned long n) {
  Real r;
  mpfr_log_ui(r.get(), n, MPFR_RNDN);
  return r;
}
Real sin(const Real& x) {
  Real r;
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real cos(const Real& x) {
  Real r;
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}
std::pair<Real, Real> sin_cos(const Real& x) {
  Real s, c;
  mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
  return {std::move(s), std::move(c)};
}
Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
Real pi() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}
Real euler_gamma() {
  Real r;
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

Complex& Complex::operator*=(const Complex& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  return *this;
}

Complex operator/(const Complex& a, const Complex& b) {
  const Real d = b.norm();
  return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
}

Complex conj(const Complex& z) { return {z.re(), -z.im()}; }
Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
Real arg(const Complex& z) { return atan2(z.im(), z.re()); }

Complex exp(const Complex& z) {
  const Real m = exp(z.re());
  auto [s, c] = sin_cos(z.im());
  return {m * c, m * s};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex inverse(const Complex& z) {
  const Real d = z.norm();
  return {z.re() / d, -z.im() / d};
}

Complex unit(const Real& phase) {
  auto [s, c] = sin_cos(phase);
  return {std::move(c), std::move(s)};
}

}  // namespace zetalab
