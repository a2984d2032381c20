#include "lsa/real.hpp"

#include <climits>
#include <cstdlib>
#include <memory>

#include "lsa/error.hpp"

namespace lsa {

namespace {

std::string take_mpfr_string(char* raw) {
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

template <int (*Fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
Real unary(const Real& x) {
  Real r(x.precision());
  Fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real Real::parse(const std::string& text, Precision prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw ValidationError("not a decimal number: '" + text + "'");
  }
  return r;
}

Rational Real::to_rational() const {
  if (!is_finite()) throw DomainError("cannot convert a non-finite real to a rational");
  Integer mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
  Rational q(mant);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

Integer Real::floor() const {
  if (!is_finite()) throw DomainError("floor of a non-finite real");
  Integer z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

long Real::exponent() const {
  if (is_zero() || !is_finite()) return LONG_MIN;
  return static_cast<long>(mpfr_get_exp(v_));
}

std::string Real::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Re", digits - 1, v_);
  return take_mpfr_string(raw);
}

std::string Real::to_fixed(int decimals) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rf", decimals, v_);
  return take_mpfr_string(raw);
}

std::string Real::to_general(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, v_);
  return take_mpfr_string(raw);
}

Real abs(const Real& x) { return unary<mpfr_abs>(x); }
Real sqrt(const Real& x) { return unary<mpfr_sqrt>(x); }
Real exp(const Real& x) { return unary<mpfr_exp>(x); }
Real log(const Real& x) { return unary<mpfr_log>(x); }
Real sin(const Real& x) { return unary<mpfr_sin>(x); }
Real cos(const Real& x) { return unary<mpfr_cos>(x); }

Real atan2(const Real& y, const Real& x) {
  Real r(detail::max_prec(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(detail::max_prec(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(detail::max_prec(base, exponent));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real exp2i(long e, Precision prec) { return ldexp(Real(1L, prec), e); }

Complex operator+(const Complex& a, const Complex& b) { return {a.re() + b.re(), a.im() + b.im()}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re() - b.re(), a.im() - b.im()}; }
Complex operator-(const Complex& a) { return {-a.re(), -a.im()}; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re()};
}
Complex operator*(const Complex& a, const Real& b) { return {a.re() * b, a.im() * b}; }
Complex operator*(const Real& a, const Complex& b) { return b * a; }

Complex operator/(const Complex& a, const Complex& b) {
  // Scaled division: divide through by the larger component of b.
  if (abs(b.re()) >= abs(b.im())) {
    const Real t = b.im() / b.re();
    const Real den = b.re() + b.im() * t;
    return {(a.re() + a.im() * t) / den, (a.im() - a.re() * t) / den};
  }
  const Real t = b.re() / b.im();
  const Real den = b.re() * t + b.im();
  return {(a.re() * t + a.im()) / den, (a.im() * t - a.re()) / den};
}
Complex operator/(const Complex& a, const Real& b) { return {a.re() / b, a.im() / b}; }
Complex operator+(const Complex& a, const Real& b) { return {a.re() + b, a.im()}; }
Complex operator-(const Real& a, const Complex& b) { return {a - b.re(), -b.im()}; }

Complex conj(const Complex& z) { return {z.re(), -z.im()}; }
Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }
Real arg(const Complex& z) { return atan2(z.im(), z.re()); }

Complex exp(const Complex& z) {
  const Real m = exp(z.re());
  Real s(z.precision()), c(z.precision());
  mpfr_sin_cos(s.get(), c.get(), z.im().get(), MPFR_RNDN);
  return {m * c, m * s};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex pow(const Complex& z, unsigned long n) {
  Complex result(Real(1L, z.precision()), Real(0L, z.precision()));
  Complex base = z;
  while (n != 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return result;
}

}  // namespace lsa
