#include "lsa/real_expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "lsa/error.hpp"

namespace lsa {

namespace {

std::string rational_text(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_perfect_square(const Integer& d) { return mpz_perfect_square_p(d.get_mpz_t()) != 0; }

void validate(const LogQuotient& t) {
  if (t.c <= 0) throw ValidationError("log quotient requires c > 0");
  if (t.b <= 0) throw ValidationError("log quotient requires b > 0");
  if (t.b == 1) throw ValidationError("log quotient requires b != 1");
}

void validate(const Quadratic& t) {
  if (t.d <= 0) throw ValidationError("quadratic surd requires d > 0");
  if (is_perfect_square(t.d)) throw ValidationError("quadratic surd requires non-square d");
  if (t.r == 0) throw ValidationError("quadratic surd requires r != 0");
}

// Exact value of a decimal/scientific literal.
std::optional<Rational> decimal_value(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      ++frac_digits;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    long e = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      e = e * 10 + (s[i++] - '0');
      if (e > 100000) return std::nullopt;
    }
    exp10 = eneg ? -e : e;
  }
  if (i != s.size()) return std::nullopt;
  Integer mant(digits);
  if (neg) mant = -mant;
  const long shift = exp10 - frac_digits;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift >= 0 ? Rational(mant * ten_pow) : Rational(mant, ten_pow);
  q.canonicalize();
  return q;
}

ExprTerm negate(const ExprTerm& t) {
  return std::visit(
      [](const auto& v) -> ExprTerm {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return Rational(-v);
        } else if constexpr (std::is_same_v<T, LogQuotient>) {
          return LogQuotient{Rational(1 / v.c), v.b};
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return Quadratic{-v.p, -v.q, v.d, v.r};
        } else {
          DecimalLiteral d = v;
          d.value = -v.value;
          d.text = (!v.text.empty() && v.text[0] == '-') ? v.text.substr(1) : "-" + v.text;
          return d;
        }
      },
      t);
}

Interval enclose_term(const ExprTerm& t, Precision prec) {
  return std::visit(
      [prec](const auto& v) -> Interval {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return Interval::point(v, prec);
        } else if constexpr (std::is_same_v<T, LogQuotient>) {
          return log(Interval::point(v.c, prec)) / log(Interval::point(v.b, prec));
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          const Interval root = sqrt(Interval::point(v.d, prec));
          return (Interval::point(v.p, prec) + Interval::point(v.q, prec) * root) /
                 Interval::point(v.r, prec);
        } else {
          return Interval::point(v.value, prec);
        }
      },
      t);
}

std::string term_text(const ExprTerm& t) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return rational_text(v);
        } else if constexpr (std::is_same_v<T, LogQuotient>) {
          return "log(" + rational_text(v.c) + ")/log(" + rational_text(v.b) + ")";
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          const Integer aq = abs(v.q);
          return "(" + v.p.get_str() + (v.q < 0 ? "-" : "+") + aq.get_str() + "*sqrt(" +
                 v.d.get_str() + "))/" + v.r.get_str();
        } else {
          return "dec:" + v.text + (v.declared_irrational ? ":irrational" : "");
        }
      },
      t);
}

// Recursive-descent parser over the whitespace-stripped input, reporting
// columns in the original text.
class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        cols_.push_back(i + 1);
      }
    }
    end_col_ = text.size() + 1;
  }

  std::vector<ExprTerm> parse() {
    if (chars_.empty()) fail("empty expression");
    std::vector<ExprTerm> terms;
    terms.push_back(term());
    while (pos_ < chars_.size()) {
      const char op = chars_[pos_];
      if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
      ++pos_;
      ExprTerm t = term();
      terms.push_back(op == '-' ? negate(t) : std::move(t));
    }
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    const std::size_t col = pos_ < cols_.size() ? cols_[pos_] : end_col_;
    throw ParseError(msg, 1, col);
  }

  bool starts_with(std::string_view s) const {
    if (chars_.size() - pos_ < s.size()) return false;
    return std::equal(s.begin(), s.end(), chars_.begin() + static_cast<long>(pos_));
  }

  void expect(std::string_view s) {
    if (!starts_with(s)) {
      // Point at the first character that does not match.
      std::size_t i = 0;
      while (pos_ < chars_.size() && i < s.size() && chars_[pos_] == s[i]) ++pos_, ++i;
      fail("expected '" + std::string(s) + "'");
    }
    pos_ += s.size();
  }

  Integer integer() {
    std::string digits;
    if (pos_ < chars_.size() && (chars_[pos_] == '-' || chars_[pos_] == '+')) {
      if (chars_[pos_] == '-') digits += '-';
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < chars_.size() && std::isdigit(static_cast<unsigned char>(chars_[pos_]))) {
      digits += chars_[pos_++];
    }
    if (pos_ == start) fail("expected an integer");
    return Integer(digits);
  }

  Rational rational() {
    const std::size_t at = pos_;
    Integer num = integer();
    Integer den = 1;
    if (pos_ < chars_.size() && chars_[pos_] == '/' && !starts_with("/log(")) {
      ++pos_;
      den = integer();
      if (den == 0) {
        pos_ = at;
        fail("zero denominator");
      }
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  ExprTerm term() {
    const std::size_t at = pos_;
    try {
      if (starts_with("dec:")) return decimal();
      if (starts_with("log(")) {
        expect("log(");
        LogQuotient t{rational(), 0};
        expect(")/log(");
        t.b = rational();
        expect(")");
        validate(t);
        return t;
      }
      if (starts_with("(")) {
        expect("(");
        Quadratic t;
        t.p = integer();
        if (pos_ >= chars_.size() || (chars_[pos_] != '+' && chars_[pos_] != '-')) {
          fail("expected '+' or '-' in quadratic surd");
        }
        const bool neg = chars_[pos_++] == '-';
        if (starts_with("sqrt(")) {
          t.q = 1;
        } else {
          t.q = integer();
          expect("*");
        }
        if (neg) t.q = -t.q;
        expect("sqrt(");
        t.d = integer();
        expect("))/");
        t.r = integer();
        validate(t);
        return t;
      }
      return rational();
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      pos_ = at;
      fail(e.what());
    }
  }

  ExprTerm decimal() {
    expect("dec:");
    const std::size_t start = pos_;
    std::string literal;
    // A sign is only part of the literal at its start or right after an exponent marker.
    while (pos_ < chars_.size()) {
      const char c = chars_[pos_];
      const bool sign_ok = (c == '-' || c == '+') &&
                           (literal.empty() || literal.back() == 'e' || literal.back() == 'E');
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
          sign_ok) {
        literal += c;
        ++pos_;
      } else {
        break;
      }
    }
    const auto value = decimal_value(literal);
    if (!value) {
      pos_ = start;
      fail("malformed decimal literal");
    }
    bool irrational = false;
    if (starts_with(":irrational")) {
      pos_ += std::string_view(":irrational").size();
      irrational = true;
    }
    return DecimalLiteral{literal, *value, irrational};
  }

  std::vector<char> chars_;
  std::vector<std::size_t> cols_;
  std::size_t end_col_ = 1;
  std::size_t pos_ = 0;
};

}  // namespace

RealExpr RealExpr::rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return RealExpr(std::vector<ExprTerm>{c});
}

RealExpr RealExpr::log_quotient(const Rational& c, const Rational& b) {
  LogQuotient t{c, b};
  t.c.canonicalize();
  t.b.canonicalize();
  validate(t);
  return RealExpr(std::vector<ExprTerm>{t});
}

RealExpr RealExpr::quadratic(const Integer& p, const Integer& q, const Integer& d, const Integer& r) {
  Quadratic t{p, q, d, r};
  validate(t);
  return RealExpr(std::vector<ExprTerm>{t});
}

RealExpr RealExpr::decimal(const std::string& literal, bool declared_irrational) {
  const auto value = decimal_value(literal);
  if (!value) throw ValidationError("malformed decimal literal '" + literal + "'");
  return RealExpr(std::vector<ExprTerm>{DecimalLiteral{literal, *value, declared_irrational}});
}

RealExpr RealExpr::parse(std::string_view text) { return RealExpr(Parser(text).parse()); }

RealExpr RealExpr::operator+(const RealExpr& other) const {
  std::vector<ExprTerm> t = terms_;
  t.insert(t.end(), other.terms_.begin(), other.terms_.end());
  return RealExpr(std::move(t));
}

RealExpr RealExpr::operator-() const {
  std::vector<ExprTerm> t;
  t.reserve(terms_.size());
  for (const auto& term : terms_) t.push_back(negate(term));
  return RealExpr(std::move(t));
}

Interval RealExpr::enclose(Precision prec) const {
  Interval acc = enclose_term(terms_.front(), prec);
  for (std::size_t i = 1; i < terms_.size(); ++i) acc = acc + enclose_term(terms_[i], prec);
  return acc;
}

std::string RealExpr::to_string() const {
  std::string out = term_text(terms_.front());
  for (std::size_t i = 1; i < terms_.size(); ++i) out += " + " + term_text(terms_[i]);
  return out;
}

Interval tight_enclosure(const RealExpr& e, Precision target_bits) {
  const Precision cap = 8 * (target_bits + 64);
  for (Precision prec = target_bits + 32; prec <= cap; prec *= 2) {
    Interval enc = [&]() -> std::optional<Interval> {
      try {
        return e.enclose(prec);
      } catch (const Indeterminate&) {
        return std::nullopt;
      } catch (const DomainError&) {
        return std::nullopt;
      }
    }().value_or(Interval(Real::infinity(prec, -1), Real::infinity(prec)));
    if (!enc.lo().is_finite() || !enc.hi().is_finite()) continue;
    const Real w = enc.width();
    if (w.is_zero()) return enc;
    const Real m = enc.mag();
    if (m.is_zero()) continue;
    // width <= 2^-target * magnitude
    if (w <= ldexp(m, -static_cast<long>(target_bits))) return enc;
  }
  throw PrecisionExhausted("could not enclose '" + e.to_string() + "' to " +
                           std::to_string(target_bits) + " bits");
}

Real eval_expr(const RealExpr& e, Precision prec) {
  const Interval enc = tight_enclosure(e, prec + 2);
  return Real(enc.mid(), prec);
}

std::vector<Integer> coprime_base(const std::vector<Integer>& values) {
  std::vector<Integer> base;
  for (const Integer& v : values) {
    if (v > 1) base.push_back(v);
  }
  // Factor refinement: replace any non-coprime pair (a, b), g = gcd, by a/g, g, b/g.
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    for (std::size_t i = 0; i < base.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
        if (g == 1) continue;
        const Integer a = base[i] / g;
        const Integer b = base[j] / g;
        base.erase(base.begin() + static_cast<long>(j));
        base.erase(base.begin() + static_cast<long>(i));
        for (const Integer* x : std::initializer_list<const Integer*>{&a, &b, &g}) {
          if (*x > 1) base.push_back(*x);
        }
        changed = true;
      }
    }
  }
  return base;
}

std::vector<long> exponents_over(const Integer& n, const std::vector<Integer>& base) {
  std::vector<long> e(base.size(), 0);
  Integer rest = n;
  for (std::size_t i = 0; i < base.size(); ++i) {
    while (rest % base[i] == 0) {
      rest /= base[i];
      ++e[i];
    }
  }
  if (rest != 1) throw DomainError("integer not covered by the coprime base");
  return e;
}

SpanAnalysis analyze_span(std::span<const RealExpr> values) {
  // Gather every integer that appears inside a logarithm.
  std::vector<Integer> log_ints;
  const LogQuotient* first_log = nullptr;
  for (const auto& v : values) {
    for (const auto& t : v.terms()) {
      if (const auto* lq = std::get_if<LogQuotient>(&t)) {
        if (!first_log) first_log = lq;
        for (const Rational* q : {&lq->c, &lq->b}) {
          log_ints.push_back(q->get_num());
          log_ints.push_back(q->get_den());
        }
      }
    }
  }
  const std::vector<Integer> base = coprime_base(log_ints);

  // Atom keys: (kind, squarefree radicand, atom index). kind 0 = sqrt(d)*log(base[i]),
  // kind 1 = sqrt(d) (no logarithms anywhere), kind 2 = opaque decimal literal.
  using Key = std::tuple<int, Integer, long>;
  std::map<Key, std::size_t> atom_index;
  auto atom = [&](int kind, const Integer& d, long i) {
    const Key k{kind, d, i};
    auto it = atom_index.find(k);
    if (it != atom_index.end()) return it->second;
    const std::size_t idx = atom_index.size();
    atom_index.emplace(k, idx);
    return idx;
  };
  using Sparse = std::map<std::size_t, Rational>;

  auto log_vector = [&](const Rational& q) {
    const auto en = exponents_over(q.get_num(), base);
    const auto ed = exponents_over(q.get_den(), base);
    std::vector<long> e(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) e[i] = en[i] - ed[i];
    return e;
  };

  std::vector<long> base_vec;
  if (first_log) base_vec = log_vector(first_log->b);

  // `scale` times the unit, placed in the sqrt(d) block.
  auto add_unit = [&](Sparse& acc, const Rational& scale, const Integer& d) {
    if (scale == 0) return;
    if (first_log) {
      for (std::size_t i = 0; i < base.size(); ++i) {
        if (base_vec[i] != 0) acc[atom(0, d, static_cast<long>(i))] += scale * base_vec[i];
      }
    } else {
      acc[atom(1, d, 0)] += scale;
    }
  };

  std::map<Rational, long> opaque_ids;
  std::vector<Sparse> rows;
  std::size_t opaque_rows = 0;
  for (const auto& v : values) {
    Sparse acc;
    bool has_opaque = false;
    for (const auto& t : v.terms()) {
      if (const auto* q = std::get_if<Rational>(&t)) {
        add_unit(acc, *q, 1);
      } else if (const auto* lq = std::get_if<LogQuotient>(&t)) {
        const auto vb = log_vector(lq->b);
        // log(b) = lambda * log(B) is required for a common denominator.
        std::optional<Rational> lambda;
        for (std::size_t i = 0; i < base.size(); ++i) {
          if (base_vec[i] != 0) {
            lambda = Rational(vb[i], base_vec[i]);
            lambda->canonicalize();
            break;
          }
        }
        for (std::size_t i = 0; i < base.size(); ++i) {
          if (Rational(vb[i]) != *lambda * base_vec[i]) {
            throw UndecidableRank("logarithm bases " + rational_text(lq->b) + " and " +
                                  rational_text(first_log->b) +
                                  " are multiplicatively independent");
          }
        }
        const auto vc = log_vector(lq->c);
        for (std::size_t i = 0; i < base.size(); ++i) {
          if (vc[i] != 0) acc[atom(0, 1, static_cast<long>(i))] += Rational(vc[i]) / *lambda;
        }
      } else if (const auto* qd = std::get_if<Quadratic>(&t)) {
        // sqrt(d) = s * sqrt(d0) with d0 squarefree.
        Integer s = 1, d0 = qd->d;
        for (Integer f = 2; f * f <= d0; ++f) {
          while (d0 % (f * f) == 0) {
            d0 /= f * f;
            s *= f;
          }
        }
        Rational constant(qd->p, qd->r);
        constant.canonicalize();
        add_unit(acc, constant, 1);
        Rational coef(qd->q * s, qd->r);
        coef.canonicalize();
        add_unit(acc, coef, d0);
      } else {
        const auto& dec = std::get<DecimalLiteral>(t);
        if (!dec.declared_irrational) {
          add_unit(acc, dec.value, 1);
        } else {
          auto [it, inserted] = opaque_ids.emplace(dec.value, static_cast<long>(opaque_ids.size()));
          acc[atom(2, 1, it->second)] += 1;
          has_opaque = true;
        }
      }
    }
    if (has_opaque) ++opaque_rows;
    rows.push_back(std::move(acc));
  }

  SpanAnalysis out;
  Sparse unit_sparse;
  add_unit(unit_sparse, 1, 1);
  const std::size_t full_dim = atom_index.size();
  out.unit = RationalVector(full_dim);
  for (const auto& [k, v] : unit_sparse) out.unit[k] = v;
  for (const auto& r : rows) {
    RationalVector d(full_dim);
    for (const auto& [k, v] : r) d[k] = v;
    out.coordinates.push_back(std::move(d));
  }

  if (!opaque_ids.empty()) {
    // One opaque number may be combined with rationals only.
    bool other_irrational = false;
    for (std::size_t i = 0; i < out.coordinates.size(); ++i) {
      RationalVector v = out.coordinates[i];
      for (const auto& [k, idx] : atom_index) {
        if (std::get<0>(k) == 2) v[idx] = 0;
      }
      if (!solve_combination({out.unit}, v)) other_irrational = true;
    }
    if (opaque_ids.size() > 1 || opaque_rows > 1 || other_irrational) {
      throw UndecidableRank(
          "rank is undecidable for opaque decimals mixed with other irrational values; "
          "declare the decimals rational or use exact expressions");
    }
  }

  out.rank = rank(out.coordinates);
  return out;
}

Rationality is_rational(const RealExpr& e) {
  for (const auto& t : e.terms()) {
    if (const auto* d = std::get_if<DecimalLiteral>(&t); d && d->declared_irrational) {
      return {false, std::nullopt};
    }
  }
  const RealExpr one[] = {e};
  const SpanAnalysis span = analyze_span(one);
  const auto coeff = solve_combination({span.unit}, span.coordinates.front());
  if (!coeff) return {false, std::nullopt};
  return {true, coeff->front()};
}

}  // namespace lsa
