#pragma once

// Multiprecision real and complex numbers over MPFR, exact integers and
// rationals over GMP.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>
#include <utility>

namespace lsa {

using Integer = mpz_class;
using Rational = mpq_class;

/// Mantissa width in bits.
using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;

/// Correctly rounded binary floating point number of configurable precision.
/// Binary operations produce a result at the larger of the operand precisions.
class Real {
 public:
  Real() : Real(kDefaultPrecision) {}
  explicit Real(Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(long value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(double value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(const Integer& value, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, value.get_mpz_t(), rnd);
  }
  Real(const Rational& value, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, value.get_mpq_t(), rnd);
  }
  /// Value of `other` rounded to `prec`.
  Real(const Real& other, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set(v_, other.v_, rnd);
  }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real pi(Precision prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Real infinity(Precision prec, int sign = 1) {
    Real r(prec);
    mpfr_set_inf(r.v_, sign);
    return r;
  }
  /// Parses a decimal or scientific literal, correctly rounded.
  static Real parse(const std::string& text, Precision prec);

  Precision precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Exact value; requires a finite number.
  Rational to_rational() const;
  Integer floor() const;
  /// Binary exponent e such that 0.5 <= |x| / 2^e < 1; 0 is mapped to LONG_MIN.
  long exponent() const;

  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;
  /// Fixed-point rendering with `decimals` digits after the point.
  std::string to_fixed(int decimals) const;
  /// Shortest of fixed and scientific with `digits` significant digits (printf %g).
  std::string to_general(int digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

 private:
  mpfr_t v_;
};

namespace detail {
inline Precision max_prec(const Real& a, const Real& b) {
  return a.precision() > b.precision() ? a.precision() : b.precision();
}
}  // namespace detail

inline Real operator+(const Real& a, const Real& b) {
  Real r(detail::max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a, const Real& b) {
  Real r(detail::max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real operator*(const Real& a, const Real& b) {
  Real r(detail::max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real operator/(const Real& a, const Real& b) {
  Real r(detail::max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}
inline Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
inline Real operator-(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_sub(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}
inline Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
inline Real operator/(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_div(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}

inline Real& Real::operator+=(const Real& o) { return *this = *this + o; }
inline Real& Real::operator-=(const Real& o) { return *this = *this - o; }
inline Real& Real::operator*=(const Real& o) { return *this = *this * o; }
inline Real& Real::operator/=(const Real& o) { return *this = *this / o; }

inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
inline std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.get(), b.get());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}
inline bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.get(), b) == 0; }
inline std::partial_ordering operator<=>(const Real& a, long b) { return a <=> Real(b, 64); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& base, const Real& exponent);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

/// Complex number with Real parts; the precision contract is component-wise.
class Complex {
 public:
  Complex() = default;
  explicit Complex(Precision prec) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(Real re) : re_(std::move(re)), im_(re_.precision()) {}
  Complex(double re, double im, Precision prec) : re_(re, prec), im_(im, prec) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  Precision precision() const { return detail::max_prec(re_, im_); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

 private:
  Real re_;
  Real im_;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Real& a, const Complex& b);

Complex conj(const Complex& z);
/// Euclidean norm.
Real abs(const Complex& z);
/// Squared Euclidean norm.
Real norm(const Complex& z);
/// Principal argument in (-pi, pi].
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal logarithm.
Complex log(const Complex& z);
/// z^n by binary powering.
Complex pow(const Complex& z, unsigned long n);

inline Complex& Complex::operator+=(const Complex& o) { return *this = *this + o; }
inline Complex& Complex::operator-=(const Complex& o) { return *this = *this - o; }
inline Complex& Complex::operator*=(const Complex& o) { return *this = *this * o; }
inline Complex& Complex::operator/=(const Complex& o) { return *this = *this / o; }

/// 2^e at the given precision.
Real exp2i(long e, Precision prec);

}  // namespace lsa
