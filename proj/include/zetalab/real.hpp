// Thin value-semantic wrappers over MPFR.
//
// Every arithmetic result is rounded to the calling thread's working
// precision, which is set with a PrecisionScope. Copies keep the precision
// of their source.

#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

namespace zetalab {

/// Working precision (bits) of the calling thread.
mpfr_prec_t working_precision();

/// RAII override of the thread's working precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real() { mpfr_init2(v_, working_precision()); mpfr_set_zero(v_, 1); }
  Real(double x) { mpfr_init2(v_, working_precision()); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(int x) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long x) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }

  /// Parses a decimal string at the working precision; throws std::invalid_argument.
  static Real parse(std::string_view text);

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Scientific notation, round-to-nearest, `digits` significant digits.
  std::string to_string(int digits) const;
  /// Enough digits that parse() at the same precision restores the value exactly.
  std::string to_exact_string() const;

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }

  /// Exact: keeps the operand's precision.
  friend Real operator-(const Real& a) {
    Real r(a);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, double b) {
    Real r;
    mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(double b, const Real& a) { return a * b; }
  friend Real operator/(const Real& a, double b) {
    Real r;
    mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, double b) {
    Real r;
    mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, double b) {
    Real r;
    mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator+(double b, const Real& a) { return a + b; }
  friend Real operator/(double b, const Real& a) {
    Real r;
    mpfr_d_div(r.v_, b, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(double b, const Real& a) {
    Real r;
    mpfr_d_sub(r.v_, b, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log_ui(unsigned long n);
Real sin(const Real& x);
Real cos(const Real& x);
std::pair<Real, Real> sin_cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pi();
Real euler_gamma();

class Complex {
 public:
  Complex() = default;
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(double re, double im = 0.0) : re_(re), im_(im) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }

  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  Real norm() const { return re_ * re_ + im_ * im_; }
  double abs_d() const { return mpfr_get_d(hypot(re_, im_).get(), MPFR_RNDU); }

  Complex& operator+=(const Complex& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Complex& operator-=(const Complex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o) { re_ *= o; im_ *= o; return *this; }
  Complex& operator*=(double o) { re_ *= o; im_ *= o; return *this; }

  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    Complex r = a;
    r *= b;
    return r;
  }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(const Real& b, const Complex& a) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(const Complex& a, double b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(double b, const Complex& a) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator/(const Complex& a, double b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator+(const Complex& a, double b) { return {a.re_ + b, a.im_}; }
  friend Complex operator+(const Complex& a, const Real& b) { return {a.re_ + b, a.im_}; }
  friend Complex operator-(const Complex& a, const Real& b) { return {a.re_ - b, a.im_}; }
  friend Complex operator-(double b, const Complex& a) { return {b - a.re_, -a.im_}; }

 private:
  Real re_;
  Real im_;
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
/// Principal argument in (-pi, pi].
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
Complex inverse(const Complex& z);
/// exp(i*phase)
Complex unit(const Real& phase);

}  // namespace zetalab
