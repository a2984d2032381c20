#include "lsa/dioph.hpp"

#include "lsa/error.hpp"
#include "lsa/lll.hpp"

namespace lsa {

namespace {

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Precision bits_of(const Integer& z) {
  return static_cast<Precision>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

// Enclosure of x*b - a.
Interval residual(const RealExpr& x, const Integer& b, const Integer& a, Precision prec) {
  const Precision p = prec + bits_of(b) + bits_of(a) + 32;
  return x.enclose(p) * Interval::point(b, p) - Interval::point(a, p);
}

// Highest precision tried before a sign question is declared undecidable.
constexpr unsigned kCapFactor = 8;

// 1/|x b - a| as an enclosure, or nullopt for an exact hit.
std::optional<Interval> inverse_residual(const RealExpr& x, const Integer& b, const Integer& a,
                                         Precision precision) {
  const Rationality r = is_rational(x);
  if (r.rational) {
    const Rational d = abs_q(*r.value * b - a);
    if (d == 0) return std::nullopt;
    return Interval::point(Rational(1 / d), precision + 32);
  }
  for (Precision p = precision; p <= precision * kCapFactor; p *= 2) {
    const Interval e = abs(residual(x, b, a, p));
    if (!e.contains_zero()) return Interval::point(Integer(1), p + 32) / e;
  }
  throw Indeterminate("residual of an irrational coordinate is indistinguishable from zero");
}

// Shrinks Q by a relative 2^{-P/2} so that the strict inequality defining an
// SDA holds with a margin visible at working precision.
Real shade(const Real& q, Precision precision) {
  if (q.is_inf()) return q;
  const Real one(1L, q.precision());
  return q * (one - exp2i(-static_cast<long>(precision / 2), q.precision()));
}

}  // namespace

SDA make_sda(std::span<const RealExpr> x, const Integer& q, std::vector<Integer> k, Precision precision) {
  if (q < 1) throw ValidationError("SDA denominator must be positive");
  if (k.size() != x.size()) throw ValidationError("make_sda: size mismatch");
  SDA out;
  out.Q = shade(sda_quality(x, q, k, precision), precision);
  out.q = q;
  out.k = std::move(k);
  return out;
}

void StreamConfig::validate() const {
  if (!(delta0 > 0 && delta0 < 1)) throw ValidationError("delta0 must lie in (0, 1)");
  if (n_steps == 0) throw ValidationError("n_steps must be positive");
  if (max_iterations == 0) throw ValidationError("max_iterations must be positive");
}

Rational StreamConfig::step() const {
  Rational s = delta0 / Rational(static_cast<unsigned long>(n_steps));
  s.canonicalize();
  return s;
}

DioApproximation lll_dio(const std::vector<Rational>& x, const Rational& delta) {
  const std::size_t n = x.size();
  if (n == 0) throw ValidationError("lll_dio needs at least one coordinate");
  if (!(delta > 0 && delta < 1)) throw ValidationError("delta must lie in (0, 1)");

  // Basis rows (c, x_1..x_n) and -e_j with c = 2^{-n(n+1)/4} delta^{n+1}. Only
  // c^2 = delta^{2(n+1)} / 2^{n(n+1)/2} enters the Gram matrix, and it is rational.
  Rational c2 = 1;
  for (std::size_t i = 0; i < 2 * (n + 1); ++i) c2 *= delta;
  Integer two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n * (n + 1) / 2);
  c2 /= Rational(two_pow);

  RationalMatrix g(n + 1, RationalVector(n + 1, 0));
  g[0][0] = c2;
  for (std::size_t j = 0; j < n; ++j) {
    g[0][0] += x[j] * x[j];
    g[0][j + 1] = g[j + 1][0] = -x[j];
    g[j + 1][j + 1] = 1;
  }
  const GramReduction red = lll_reduce_gram(g);

  // Row i of the reduced basis is (T_i0 c, T_i0 x_j - T_ij): b = T_i0, a_j = T_ij.
  for (const auto& row : red.transform) {
    if (row[0] == 0) continue;
    DioApproximation out;
    const int sign = row[0] < 0 ? -1 : 1;
    out.b = sign * row[0];
    for (std::size_t j = 0; j < n; ++j) out.a.push_back(sign * row[j + 1]);
    return out;
  }
  throw NumericFailure("no reduced vector has a nonzero first coordinate", {});
}

Real sda_quality(std::span<const Real> x, const Integer& b, std::span<const Integer> a) {
  if (x.size() != a.size() || x.empty()) throw ValidationError("sda_quality: size mismatch");
  if (b < 1) throw ValidationError("sda_quality: b must be positive");
  Precision prec = 0;
  for (const Real& v : x) prec = std::max(prec, v.precision());
  std::optional<Real> best;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Real d = abs(x[j] * Real(b, prec + bits_of(b)) - Real(a[j], prec + bits_of(a[j])));
    if (d.is_zero()) continue;
    Real inv = Real(1L, prec) / Real(d, prec);
    if (!best || inv < *best) best = std::move(inv);
  }
  return best ? *best : Real::infinity(prec);
}

Real sda_quality(std::span<const RealExpr> x, const Integer& b, std::span<const Integer> a,
                 Precision precision) {
  if (x.size() != a.size() || x.empty()) throw ValidationError("sda_quality: size mismatch");
  if (b < 1) throw ValidationError("sda_quality: b must be positive");
  std::optional<Real> best;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto inv = inverse_residual(x[j], b, a[j], precision);
    if (!inv) continue;
    Real v(inv->mid(), precision);
    if (!best || v < *best) best = std::move(v);
  }
  return best ? *best : Real::infinity(precision);
}

namespace {

// Decides gap < 1/(qQ) given an enclosure of the gap, or an exact zero gap.
bool gap_below(const std::optional<Interval>& gap, const SDA& sda, Precision p) {
  if (!gap) return true;
  if (sda.Q.is_inf()) return false;
  const Interval bound =
      Interval::point(Integer(1), p) / (Interval::point(sda.q, p) * Interval(sda.Q, sda.Q));
  if (gap->hi() < bound.lo()) return true;
  if (gap->lo() >= bound.hi()) return false;
  throw Indeterminate("SDA margin is below the working precision");
}

}  // namespace

bool validate_sda(std::span<const Real> weights, const SDA& sda) {
  if (weights.size() != sda.k.size() + 1) throw ValidationError("validate_sda: size mismatch");
  if (sda.q < 1) return false;
  Precision p = 0;
  for (const Real& w : weights) p = std::max(p, w.precision());
  p += bits_of(sda.q) + 32;
  const Interval w1(weights[0], weights[0]);
  for (std::size_t j = 0; j < sda.k.size(); ++j) {
    const Interval wj(weights[j + 1], weights[j + 1]);
    const Interval diff = wj / w1 - Interval::point(Rational(sda.k[j], sda.q), p);
    std::optional<Interval> gap;
    if (!(diff.lo().is_zero() && diff.hi().is_zero())) gap = abs(diff);
    if (!gap_below(gap, sda, p)) return false;
  }
  return true;
}

bool validate_sda_ratios(std::span<const RealExpr> ratios, const SDA& sda, Precision precision) {
  if (ratios.size() != sda.k.size()) throw ValidationError("validate_sda: size mismatch");
  if (sda.q < 1) return false;
  for (std::size_t j = 0; j < ratios.size(); ++j) {
    const Rationality r = is_rational(ratios[j]);
    if (r.rational) {
      Rational target(sda.k[j], sda.q);
      target.canonicalize();
      const Rational d = abs_q(*r.value - target);
      if (d == 0) continue;
      if (!gap_below(Interval::point(d, precision + 64), sda, precision + 64)) return false;
      continue;
    }
    for (Precision p = precision;; p *= 2) {
      const Precision w = p + bits_of(sda.q) + 32;
      Rational target(sda.k[j], sda.q);
      target.canonicalize();
      const Interval gap = abs(ratios[j].enclose(w) - Interval::point(target, w));
      try {
        if (!gap_below(gap, sda, w)) return false;
        break;
      } catch (const Indeterminate&) {
        if (p * 2 > precision * kCapFactor) throw;
      }
    }
  }
  return true;
}

// Each approximated coordinate theta_i of the stream is a rational linear form
// in the input ratios; the inputs are recovered as x_j = u_j + sum_i v_ji theta_i.
struct DioStream::State {
  std::vector<RealExpr> x;
  StreamConfig config;
  Precision precision;
  std::size_t rank = 0;
  bool fast_path = false;

  struct Target {
    std::optional<Rational> exact;  // when theta is rational (literal mode only)
    ConvergentStream::Encloser enclose;
    ConvergentStream stream;
    Convergent current;
  };
  std::vector<Target> targets;
  RationalVector u;
  RationalMatrix v;
  Integer scale = 1;  // L: clears every denominator of u and v

  Rational delta;
  Rational step;
  bool done = false;
  std::size_t lll_calls = 0;

  SDA finish(const Integer& b, const std::vector<Integer>& a, SdaProvenance provenance) const {
    SDA out;
    out.q = b * scale;
    for (std::size_t j = 0; j < x.size(); ++j) {
      Rational kj = u[j] * Rational(out.q);
      for (std::size_t i = 0; i < a.size(); ++i) kj += v[j][i] * Rational(a[i] * scale);
      kj.canonicalize();
      if (kj.get_den() != 1) throw NumericFailure("non-integral SDA numerator", {});
      out.k.push_back(kj.get_num());
    }
    out.Q = shade(sda_quality(x, out.q, out.k, precision), precision);
    out.provenance = provenance;
    return out;
  }

  std::optional<SDA> next_fast() {
    Target& t = targets.front();
    for (;;) {
      const auto c = t.stream.next();
      if (!c) return std::nullopt;
      SDA s = finish(c->b, {c->a}, SdaProvenance::ContinuedFraction);
      if (s.Q > Real(1L, 64)) return s;
    }
  }

  // E_1 = |theta - current convergent|, as an enclosure (exactly zero when hit).
  Interval e1(const Target& t) const {
    const Rational conv(t.current.a, t.current.b);
    if (t.exact) {
      return Interval::point(abs_q(*t.exact - conv), precision);
    }
    return abs(t.enclose(precision) - Interval::point(conv, precision));
  }

  std::optional<SDA> next_lll() {
    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
      std::vector<Rational> conv;
      for (const Target& t : targets) {
        Rational c(t.current.a, t.current.b);
        c.canonicalize();
        conv.push_back(c);
      }
      const DioApproximation d = lll_dio(conv, delta);
      ++lll_calls;
      std::vector<bool> offending(targets.size(), false);
      bool case1 = true;
      for (std::size_t j = 0; j < targets.size(); ++j) {
        Rational approx(d.a[j], d.b);
        approx.canonicalize();
        const Rational e2 = abs_q(approx - conv[j]);
        const Interval two_e1 = Interval::point(Integer(2), precision) * e1(targets[j]);
        // Undecided comparisons count against Case 1; advancing is always safe.
        if (!(Real(e2, precision + 64, MPFR_RNDD) >= two_e1.hi())) {
          offending[j] = true;
          case1 = false;
        }
      }
      if (case1) {
        SDA s = finish(d.b, d.a, SdaProvenance::LllStream);
        s.delta = delta;
        delta -= step;
        if (delta <= 0) done = true;
        return s;
      }
      for (std::size_t j = 0; j < targets.size(); ++j) {
        if (!offending[j]) continue;
        auto c = targets[j].stream.next();
        if (!c) throw NumericFailure("exact coordinate reported as offending", {});
        targets[j].current = *c;
      }
    }
    throw NumericFailure("Diophantine stream exceeded max_iterations without an emission", {});
  }
};

DioStream::DioStream(std::vector<RealExpr> x, StreamConfig config, Precision precision,
                     StreamMode mode)
    : s_(std::make_unique<State>()) {
  config.validate();
  if (x.empty()) throw ValidationError("Diophantine stream needs at least one coordinate");
  s_->x = std::move(x);
  s_->config = config;
  s_->precision = precision;
  s_->delta = config.delta0;
  s_->step = config.step();
  const std::size_t n = s_->x.size();

  std::vector<RealExpr> with_unit{RealExpr::rational(1)};
  with_unit.insert(with_unit.end(), s_->x.begin(), s_->x.end());
  SpanAnalysis span;
  try {
    span = analyze_span(with_unit);
    s_->rank = span.rank;
  } catch (const UndecidableRank&) {
    // The literal loop never needs the span; rank() then reports 0.
    if (mode != StreamMode::Lll) throw;
    for (const RealExpr& v : s_->x) {
      if (!is_rational(v).rational) s_->rank = 2;
    }
  }
  if (s_->rank == 1) throw ValidationError("Diophantine stream needs an irrational coordinate");
  if (mode == StreamMode::Lll && span.coordinates.empty()) s_->rank = 0;

  // Forms: coefficients over (1, x_1..x_n).
  std::vector<RationalVector> forms;
  if (mode == StreamMode::Lll) {
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector f(n + 1, 0);
      f[j + 1] = 1;
      forms.push_back(f);
    }
    s_->u.assign(n, 0);
    s_->v.assign(n, RationalVector(n, 0));
    for (std::size_t j = 0; j < n; ++j) s_->v[j][j] = 1;
  } else {
    // Echelon basis of the span, starting from the unit: each new x_j has
    // the components along earlier pivots removed, so that e.g. x_2 - x_1
    // rather than x_2 itself becomes the second approximated number.
    RationalMatrix basis{span.unit};
    RationalMatrix span_basis{span.unit};
    std::vector<std::size_t> pivots;
    std::vector<RationalVector> basis_forms;
    auto first_nonzero = [](const RationalVector& r) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (r[c] != 0) return c;
      }
      return r.size();
    };
    pivots.push_back(first_nonzero(span.unit));
    {
      RationalVector f(n + 1, 0);
      f[0] = 1;
      basis_forms.push_back(f);
    }
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector c = span.coordinates[j + 1];
      RationalVector f(n + 1, 0);
      f[j + 1] = 1;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (c[pivots[i]] == 0) continue;
        Rational lambda = c[pivots[i]] / basis[i][pivots[i]];
        lambda.canonicalize();
        for (std::size_t col = 0; col < c.size(); ++col) c[col] -= lambda * basis[i][col];
        for (std::size_t col = 0; col <= n; ++col) f[col] -= lambda * basis_forms[i][col];
      }
      const std::size_t p = first_nonzero(c);
      if (p == c.size()) continue;
      // The first irrational coordinate is approximated as given (phi, not
      // phi - 1/2), so its convergents are the convergents of the input.
      const bool first = basis.size() == 1;
      span_basis.push_back(first ? span.coordinates[j + 1] : c);
      RationalVector own(n + 1, 0);
      own[j + 1] = 1;
      forms.push_back(first ? own : f);
      basis.push_back(c);
      pivots.push_back(p);
      basis_forms.push_back(f);
    }
    const std::size_t m = forms.size();
    s_->u.assign(n, 0);
    s_->v.assign(n, RationalVector(m, 0));
    for (std::size_t j = 0; j < n; ++j) {
      const auto y = solve_combination(span_basis, span.coordinates[j + 1]);
      if (!y) throw NumericFailure("coordinate outside the computed span", {});
      s_->u[j] = (*y)[0];
      for (std::size_t i = 0; i < m; ++i) s_->v[j][i] = (*y)[i + 1];
    }
    s_->fast_path = m == 1;
  }
  for (const auto& row : s_->v) {
    for (const auto& q : row) s_->scale = lcm(s_->scale, q.get_den());
  }
  for (const auto& q : s_->u) s_->scale = lcm(s_->scale, q.get_den());

  for (std::size_t i = 0; i < forms.size(); ++i) {
    const RationalVector f = forms[i];
    std::optional<Rational> exact;
    RealExpr single;
    bool is_single = false;
    if (mode == StreamMode::Lll) {
      single = s_->x[i];
      is_single = true;
      const Rationality r = is_rational(single);
      if (r.rational) exact = *r.value;
    }
    const std::vector<RealExpr>* xs = &s_->x;
    ConvergentStream::Encloser enclose = [f, xs](Precision p) {
      Interval acc = Interval::point(f[0], p);
      for (std::size_t j = 1; j < f.size(); ++j) {
        if (f[j] == 0) continue;
        acc = acc + Interval::point(f[j], p) * (*xs)[j - 1].enclose(p);
      }
      return acc;
    };
    ConvergentStream stream = is_single ? ConvergentStream(single, precision)
                                        : ConvergentStream(enclose, "basis coordinate " +
                                                                        std::to_string(i + 1),
                                                           precision);
    State::Target t{exact, enclose, std::move(stream), {}};
    if (!s_->fast_path) {
      const auto c = t.stream.next();
      t.current = *c;
    }
    s_->targets.push_back(std::move(t));
  }
}

DioStream::~DioStream() = default;
DioStream::DioStream(DioStream&&) noexcept = default;
DioStream& DioStream::operator=(DioStream&&) noexcept = default;

std::optional<SDA> DioStream::next() {
  if (s_->done) return std::nullopt;
  if (s_->fast_path) return s_->next_fast();
  return s_->next_lll();
}

std::size_t DioStream::rank() const { return s_->rank; }
bool DioStream::uses_continued_fractions() const { return s_->fast_path; }
const Rational& DioStream::delta() const { return s_->delta; }
std::size_t DioStream::lll_calls() const { return s_->lll_calls; }

}  // namespace lsa
