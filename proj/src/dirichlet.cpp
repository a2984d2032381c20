#include "lsa/dirichlet.hpp"

#include <algorithm>
#include <map>

#include "lsa/error.hpp"

namespace lsa {

namespace {

constexpr Precision kGuard = 64;

Interval enclose_tight(const RealExpr& e, Precision prec) { return tight_enclosure(e, prec); }

Real mid_at(const Interval& i, Precision prec) { return Real(i.mid(), prec); }

Complex widen(const Complex& s, Precision prec) {
  return {Real(s.re(), prec), Real(s.im(), prec)};
}

Interval point_exp(const Interval& w, const Real& x) {
  // exp(-w x) for a point x.
  return exp(-(w * Interval(x, x)));
}

}  // namespace

DirichletPolynomial::DirichletPolynomial(RealExpr base_ratio, std::vector<RealExpr> exponents,
                                         std::vector<RealExpr> multiplicities)
    : r1_(std::move(base_ratio)), alpha_(std::move(exponents)), m_(std::move(multiplicities)) {
  if (alpha_.empty()) throw ValidationError("a Dirichlet polynomial needs at least one term");
  if (alpha_.size() != m_.size()) {
    throw ValidationError("exponents and multiplicities differ in length");
  }
  const Interval r = enclose_tight(r1_, 64);
  if (!(r.lo().sign() > 0 && r.hi() < Real(1L, 64))) {
    throw ValidationError("base ratio must lie in (0, 1)");
  }
  const Rationality first = is_rational(alpha_.front());
  if (!first.rational || *first.value != 1) throw ValidationError("the first exponent must be 1");
  for (std::size_t j = 1; j < alpha_.size(); ++j) {
    const Interval a = enclose_tight(alpha_[j - 1], 128);
    const Interval b = enclose_tight(alpha_[j], 128);
    if (!(a.hi() < b.lo())) throw ValidationError("exponents must be strictly increasing");
  }
  for (const auto& m : m_) {
    const Rationality mr = is_rational(m);
    if (mr.rational ? *mr.value == 0 : enclose_tight(m, 64).contains_zero()) {
      throw ValidationError("multiplicities must be nonzero");
    }
  }
}

std::vector<RealExpr> DirichletPolynomial::weight_ratios() const {
  return {alpha_.begin() + 1, alpha_.end()};
}

Interval DirichletPolynomial::log_inverse_base(Precision prec) const {
  return -log(enclose_tight(r1_, prec + 8));
}

Interval DirichletPolynomial::weight(std::size_t j, Precision prec) const {
  return enclose_tight(alpha_.at(j), prec + 8) * log_inverse_base(prec + 8);
}

Interval DirichletPolynomial::multiplicity(std::size_t j, Precision prec) const {
  return enclose_tight(m_.at(j), prec + 8);
}

DirichletNumerics::DirichletNumerics(const DirichletPolynomial& f, Precision precision)
    : prec_(precision) {
  const Precision wp = precision + kGuard;
  for (std::size_t j = 0; j < f.size(); ++j) {
    w_.push_back(mid_at(f.weight(j, wp), wp));
    m_.push_back(mid_at(f.multiplicity(j, wp), wp));
  }
}

std::pair<Complex, Complex> DirichletNumerics::evaluate_with_derivative(const Complex& s) const {
  const Precision wp = prec_ + kGuard;
  const Complex z = widen(s, wp);
  Complex value(Real(1L, wp), Real(0L, wp));
  Complex deriv(wp);
  for (std::size_t j = 0; j < w_.size(); ++j) {
    const Complex t = exp(z * (-w_[j])) * m_[j];
    value -= t;
    deriv += t * w_[j];
  }
  return {widen(value, prec_), widen(deriv, prec_)};
}

Complex DirichletNumerics::evaluate(const Complex& s) const {
  return evaluate_with_derivative(s).first;
}

Complex DirichletNumerics::derivative(const Complex& s) const {
  return evaluate_with_derivative(s).second;
}

Complex evaluate(const DirichletPolynomial& f, const Complex& s) {
  return DirichletNumerics(f, s.precision()).evaluate(s);
}

Complex derivative(const DirichletPolynomial& f, const Complex& s) {
  return DirichletNumerics(f, s.precision()).derivative(s);
}

Classification classify(const DirichletPolynomial& f) {
  Classification c;
  std::vector<Rational> values;
  for (const auto& a : f.exponents()) {
    const Rationality r = is_rational(a);
    if (!r.rational) break;
    values.push_back(*r.value);
  }
  if (values.size() == f.size()) {
    c.lattice = true;
    c.rank = 1;
    Integer q = 1;
    for (const auto& v : values) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), v.get_den_mpz_t());
    c.q = q;
    for (const auto& v : values) {
      Rational k = v * Rational(q);
      k.canonicalize();
      c.k.push_back(k.get_num());
    }
    return c;
  }
  SpanAnalysis span;
  try {
    span = analyze_span(f.exponents());
  } catch (const UndecidableRank& e) {
    throw UndecidableRank(std::string(e.what()) +
                          "; give exponents exactly (rational, log(c)/log(b), quadratic surd) "
                          "or avoid mixing irrational decimal literals with other irrationals");
  }
  c.rank = span.rank;
  c.generic = c.rank == f.size();
  return c;
}

Real lattice_generator(const DirichletPolynomial& f, const Integer& q, Precision prec) {
  const Precision wp = prec + 16;
  const Real l = mid_at(f.log_inverse_base(wp), wp);
  return Real(exp(-(l / Real(q, wp))), prec);
}

namespace {

struct TermData {
  std::vector<Interval> w;
  std::vector<Interval> m;  // absolute values
};

TermData term_data(const DirichletPolynomial& f, Precision wp) {
  TermData d;
  for (std::size_t j = 0; j < f.size(); ++j) {
    d.w.push_back(f.weight(j, wp));
    d.m.push_back(abs(f.multiplicity(j, wp)));
  }
  return d;
}

// Bisection on a decreasing function known through certified enclosures.
// Returns the final bracket; stops once the width reaches the target or the
// sign at the midpoint can no longer be decided.
template <class Fn>
Interval bisect_decreasing(Fn g, Real lo, Real hi, Precision prec) {
  const Precision wp = lo.precision();
  for (int i = 0; i < 4 * static_cast<int>(prec) + 64; ++i) {
    const Real scale = max(Real(1L, wp), max(abs(lo), abs(hi)));
    if ((hi - lo) <= ldexp(scale, -static_cast<long>(prec))) break;
    const Real mid = ldexp(lo + hi, -1);
    const int s = certified_sign(g(mid));
    if (s == 0) break;
    if (s > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

template <class Fn>
Real expand_until(Fn g, Real start, long direction, int want_sign) {
  Real x = start;
  Real step(1L, x.precision());
  for (int i = 0; i < 4096; ++i) {
    if (certified_sign(g(x)) == want_sign) return x;
    x = x + step * direction;
    step = step * 2;
  }
  throw NumericFailure("could not bracket a dimension bound", {});
}

}  // namespace

DimensionBounds dimension_bounds(const DirichletPolynomial& f, Precision precision) {
  const Precision wp = precision + 32;
  const TermData d = term_data(f, wp);
  const std::size_t n = f.size();

  auto g_d = [&](const Real& x) {
    Interval acc = Interval::point(Integer(-1), wp);
    for (std::size_t j = 0; j < n; ++j) acc = acc + d.m[j] * point_exp(d.w[j], x);
    return acc;
  };
  const Real d_lo = expand_until(g_d, Real(0L, wp), -1, 1);
  const Real d_hi = expand_until(g_d, Real(0L, wp), 1, -1);
  const Interval d_enc = bisect_decreasing(g_d, d_lo, d_hi, precision);

  DimensionBounds out{Real(d_enc.mid(), precision), Real(d_enc.mid(), precision), d_enc, d_enc};
  if (n == 1) return out;

  // |m_N| - r_N^{-x} - sum_{j<N} |m_j| (r_j / r_N)^x, strictly decreasing in x.
  auto h = [&](const Real& x) {
    Interval acc = d.m[n - 1] - point_exp(-d.w[n - 1], x);
    for (std::size_t j = 0; j + 1 < n; ++j) acc = acc - d.m[j] * point_exp(d.w[j] - d.w[n - 1], x);
    return acc;
  };
  const Real top = expand_until(h, Real(d_enc.hi(), wp), 1, -1);
  const Real bottom = expand_until(h, min(Real(d_enc.lo(), wp), Real(0L, wp)) - 1, -1, 1);
  const Interval l_enc = bisect_decreasing(h, bottom, top, precision);
  out.D_ell = Real(l_enc.mid(), precision);
  out.D_ell_enclosure = l_enc;
  return out;
}

Real lsa_constant(const DirichletPolynomial& f, Precision precision) {
  const Precision wp = precision + 32;
  const std::size_t n = f.size();
  Real sum(0L, wp);
  for (std::size_t j = 0; j < n; ++j) sum += abs(mid_at(f.multiplicity(j, wp), wp));
  const Real one(1L, wp);
  const Real m_n = abs(mid_at(f.multiplicity(n - 1, wp), wp));
  const Real base = (one + sum) / min(one, m_n);
  // w_N / min{w_1, w_N - w_{N-1}} only depends on the exponents (w_0 = 0).
  const Real a_n = mid_at(tight_enclosure(f.exponents()[n - 1], wp), wp);
  const Real a_prev = n >= 2 ? mid_at(tight_enclosure(f.exponents()[n - 2], wp), wp) : Real(0L, wp);
  const Real expo = -2 * a_n / min(one, a_n - a_prev);
  const Real c = sum * pow(base, expo) / (2 * Real::pi(wp));
  return Real(c, precision);
}

Real lsa_constant_type1(const Real& xi, const Real& alpha_n_minus_1, const Real& alpha_n) {
  const Precision p = std::max({xi.precision(), alpha_n.precision(), alpha_n_minus_1.precision()}) + 32;
  const Real one(1L, p);
  const Real x(xi, p);
  const Real an(alpha_n, p);
  const Real base = one / ((x + 2) * (x + 2));
  const Real expo = an / min(one, an - Real(alpha_n_minus_1, p));
  const Real c = (x + 1) / (2 * Real::pi(p)) * pow(base, expo);
  return Real(c, p - 32);
}

GeometricZeta from_self_similar_string(const std::vector<ScaledCopy>& ratios,
                                       const std::vector<Rational>& gaps, const Rational& length) {
  if (ratios.empty()) throw ValidationError("a self-similar string needs scaling ratios");
  if (gaps.empty()) throw ValidationError("a self-similar string needs at least one gap");
  if (length <= 0) throw ValidationError("total length must be positive");
  std::map<Rational, Integer, std::greater<>> merged;
  Rational total = 0;
  for (const auto& c : ratios) {
    if (!(c.ratio > 0 && c.ratio < 1)) throw ValidationError("scaling ratios must lie in (0, 1)");
    if (c.multiplicity < 1) throw ValidationError("multiplicities must be positive integers");
    merged[c.ratio] += c.multiplicity;
    total += c.ratio * Rational(c.multiplicity);
  }
  if (total >= 1) throw ValidationError("scaling ratios must sum to less than 1");
  for (const auto& g : gaps) {
    if (!(g > 0 && g < 1)) throw ValidationError("gaps must lie in (0, 1)");
    total += g;
  }
  if (total != 1) throw ValidationError("scaling ratios and gaps must sum to 1");

  const Rational r1 = merged.begin()->first;
  std::vector<RealExpr> alpha, m;
  for (const auto& [r, mult] : merged) {
    const RealExpr a = RealExpr::log_quotient(r, r1);
    const Rationality ar = is_rational(a);
    alpha.push_back(ar.rational ? RealExpr::rational(*ar.value) : a);
    m.push_back(RealExpr::rational(Rational(mult)));
  }
  GeometricZeta z{gaps, length, DirichletPolynomial(RealExpr::rational(r1), alpha, m), false};
  z.single_gap = std::all_of(gaps.begin(), gaps.end(), [&](const Rational& g) { return g == gaps[0]; });
  return z;
}

}  // namespace lsa
