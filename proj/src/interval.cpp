#include "lsa/interval.hpp"

#include "lsa/error.hpp"

namespace lsa {

namespace {

using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

Real apply(BinaryFn fn, const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r(detail::max_prec(a, b));
  fn(r.get(), a.get(), b.get(), rnd);
  return r;
}

}  // namespace

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw ValidationError("interval with lo > hi");
}

Interval Interval::point(const Rational& q, Precision prec) {
  return {Real(q, prec, MPFR_RNDD), Real(q, prec, MPFR_RNDU)};
}

Interval Interval::point(const Integer& z, Precision prec) {
  return {Real(z, prec, MPFR_RNDD), Real(z, prec, MPFR_RNDU)};
}

Interval Interval::pi(Precision prec) {
  Real lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return {lo, hi};
}

Real Interval::width() const { return apply(mpfr_sub, hi_, lo_, MPFR_RNDU); }

Real Interval::mid() const {
  Real s = apply(mpfr_add, lo_, hi_, MPFR_RNDN);
  return ldexp(s, -1);
}

Real Interval::mag() const { return max(abs(lo_), abs(hi_)); }

Interval operator+(const Interval& a, const Interval& b) {
  return {apply(mpfr_add, a.lo(), b.lo(), MPFR_RNDD), apply(mpfr_add, a.hi(), b.hi(), MPFR_RNDU)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {apply(mpfr_sub, a.lo(), b.hi(), MPFR_RNDD), apply(mpfr_sub, a.hi(), b.lo(), MPFR_RNDU)};
}

Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

Interval operator*(const Interval& a, const Interval& b) {
  const Real* ends_a[2] = {&a.lo(), &a.hi()};
  const Real* ends_b[2] = {&b.lo(), &b.hi()};
  Real lo = apply(mpfr_mul, a.lo(), b.lo(), MPFR_RNDD);
  Real hi = apply(mpfr_mul, a.lo(), b.lo(), MPFR_RNDU);
  for (const Real* x : ends_a) {
    for (const Real* y : ends_b) {
      Real l = apply(mpfr_mul, *x, *y, MPFR_RNDD);
      Real h = apply(mpfr_mul, *x, *y, MPFR_RNDU);
      if (l < lo) lo = std::move(l);
      if (h > hi) hi = std::move(h);
    }
  }
  return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Indeterminate("interval division by an interval containing zero");
  const Real* ends_a[2] = {&a.lo(), &a.hi()};
  const Real* ends_b[2] = {&b.lo(), &b.hi()};
  Real lo = apply(mpfr_div, a.lo(), b.lo(), MPFR_RNDD);
  Real hi = apply(mpfr_div, a.lo(), b.lo(), MPFR_RNDU);
  for (const Real* x : ends_a) {
    for (const Real* y : ends_b) {
      Real l = apply(mpfr_div, *x, *y, MPFR_RNDD);
      Real h = apply(mpfr_div, *x, *y, MPFR_RNDU);
      if (l < lo) lo = std::move(l);
      if (h > hi) hi = std::move(h);
    }
  }
  return {lo, hi};
}

Interval abs(const Interval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() <= 0) return -a;
  return {Real(0L, a.precision()), a.mag()};
}

Interval log(const Interval& a) {
  if (!a.positive()) throw DomainError("log of an interval that is not strictly positive");
  Real lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_log(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), a.hi().get(), MPFR_RNDU);
  return {lo, hi};
}

Interval sqrt(const Interval& a) {
  if (a.lo().sign() < 0) throw DomainError("sqrt of an interval with negative part");
  Real lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_sqrt(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), a.hi().get(), MPFR_RNDU);
  return {lo, hi};
}

Interval exp(const Interval& a) {
  Real lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_exp(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), a.hi().get(), MPFR_RNDU);
  return {lo, hi};
}

int certified_sign(const Interval& a) {
  if (a.positive()) return 1;
  if (a.negative()) return -1;
  return 0;
}

}  // namespace lsa
