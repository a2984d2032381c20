#include "lsa/cfrac.hpp"

#include "lsa/error.hpp"

namespace lsa {

namespace {

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

ConvergentStream::ConvergentStream(RealExpr x, Precision precision, unsigned cap_factor)
    : label_(x.to_string()), precision_(precision), cap_(precision * cap_factor) {
  if (precision < 2 || cap_factor < 1) throw ValidationError("invalid continued fraction precision");
  const Rationality r = is_rational(x);
  if (r.rational) {
    exact_ = true;
    lo_ = hi_ = *r.value;
  } else {
    enclose_ = [x = std::move(x)](Precision p) { return x.enclose(p); };
    const Interval enc = enclose_(precision_);
    lo_ = enc.lo().to_rational();
    hi_ = enc.hi().to_rational();
  }
}

ConvergentStream::ConvergentStream(Encloser enclose, std::string label, Precision precision,
                                   unsigned cap_factor)
    : enclose_(std::move(enclose)), label_(std::move(label)), precision_(precision),
      cap_(precision * cap_factor) {
  if (precision < 2 || cap_factor < 1) throw ValidationError("invalid continued fraction precision");
  const Interval enc = enclose_(precision_);
  lo_ = enc.lo().to_rational();
  hi_ = enc.hi().to_rational();
}

void ConvergentStream::refine() {
  if (precision_ * 2 > cap_) {
    throw PrecisionExhausted("continued fraction of " + label_ + " needs more than " +
                             std::to_string(cap_) + " bits after " +
                             std::to_string(quotients_.size()) + " terms");
  }
  precision_ *= 2;
  const Interval enc = enclose_(precision_);
  lo_ = enc.lo().to_rational();
  hi_ = enc.hi().to_rational();
  // Replay the quotients already emitted; a finer enclosure must reproduce them.
  for (const Integer& a : quotients_) {
    lo_ -= a;
    hi_ -= a;
    if (lo_ == 0 || hi_ == 0 || lo_.get_num() * hi_.get_num() < 0) {
      throw NumericFailure("continued fraction enclosure lost a certified term", {});
    }
    Rational nl = 1 / hi_, nh = 1 / lo_;
    lo_ = std::move(nl);
    hi_ = std::move(nh);
  }
}

std::optional<Integer> ConvergentStream::next_quotient() {
  if (exact_) {
    const Integer a = floor_of(lo_);
    const Rational rest = lo_ - a;
    if (rest == 0) {
      finished_ = true;
    } else {
      lo_ = hi_ = 1 / rest;
    }
    return a;
  }
  for (;;) {
    const Integer a = floor_of(lo_);
    if (a == floor_of(hi_)) {
      const Rational rl = lo_ - a, rh = hi_ - a;
      if (rl != 0 && rh != 0) {
        // 1/t is decreasing, so the endpoints trade places.
        lo_ = 1 / rh;
        hi_ = 1 / rl;
        return a;
      }
    }
    refine();
  }
}

std::optional<Convergent> ConvergentStream::next() {
  if (finished_) return std::nullopt;
  const Integer a = *next_quotient();
  quotients_.push_back(a);
  const Integer p = a * p_prev_ + p_prev2_;
  const Integer q = a * q_prev_ + q_prev2_;
  p_prev2_ = p_prev_;
  p_prev_ = p;
  q_prev2_ = q_prev_;
  q_prev_ = q;
  current_ = Convergent{p, q, quotients_.size()};
  return current_;
}

std::vector<Convergent> convergents(const RealExpr& x, std::size_t count, Precision precision) {
  if (count == 0) throw ValidationError("convergent count must be positive");
  ConvergentStream stream(x, precision);
  std::vector<Convergent> out;
  while (out.size() < count) {
    auto c = stream.next();
    if (!c) break;
    out.push_back(std::move(*c));
  }
  return out;
}

}  // namespace lsa
