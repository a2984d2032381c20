#pragma once

#include "lsa/real.hpp"

namespace lsa {

/// Closed interval [lo, hi] with outward (directed) rounding on every
/// operation, so the exact result of the mirrored real computation is always
/// contained.
class Interval {
 public:
  Interval() = default;
  Interval(Real lo, Real hi);

  static Interval point(const Rational& q, Precision prec);
  static Interval point(const Integer& z, Precision prec);
  /// Enclosure of pi.
  static Interval pi(Precision prec);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  Precision precision() const { return detail::max_prec(lo_, hi_); }

  Real width() const;
  Real mid() const;
  /// Largest magnitude of any point in the interval.
  Real mag() const;
  bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }

 private:
  Real lo_;
  Real hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
/// Requires b not to contain zero.
Interval operator/(const Interval& a, const Interval& b);

Interval abs(const Interval& a);
/// Requires a positive interval.
Interval log(const Interval& a);
/// Requires a non-negative interval.
Interval sqrt(const Interval& a);
Interval exp(const Interval& a);

/// Certified sign: +1 / -1 when the interval excludes zero, 0 otherwise.
int certified_sign(const Interval& a);

}  // namespace lsa
