#pragma once

// Exact descriptions of the real constants the rest of the library consumes:
// rationals, logarithm quotients, quadratic surds, opaque decimal literals,
// and finite sums of these.
//
// Textual grammar (whitespace is ignored):
//   expr    := term (('+' | '-') term)*
//   term    := ['-'] rational
//            | 'log(' rational ')/log(' rational ')'
//            | '(' int ('+'|'-') int '*sqrt(' int '))/' int
//            | 'dec:' literal [':irrational']
//   rational := int ['/' int]

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lsa/interval.hpp"
#include "lsa/rational_linalg.hpp"
#include "lsa/real.hpp"

namespace lsa {

/// log(c) / log(b) with positive rationals c, b and b != 1.
struct LogQuotient {
  Rational c;
  Rational b;
};

/// (p + q sqrt(d)) / r with d > 0 non-square and r != 0.
struct Quadratic {
  Integer p;
  Integer q;
  Integer d;
  Integer r;
};

/// A decimal literal whose exact value is the literal itself. The flag records
/// whether the literal stands for an irrational number (it cannot be decided).
struct DecimalLiteral {
  std::string text;
  Rational value;
  bool declared_irrational = false;
};

using ExprTerm = std::variant<Rational, LogQuotient, Quadratic, DecimalLiteral>;

class RealExpr {
 public:
  RealExpr() : terms_{Rational(0)} {}

  static RealExpr rational(const Rational& q);
  static RealExpr log_quotient(const Rational& c, const Rational& b);
  static RealExpr quadratic(const Integer& p, const Integer& q, const Integer& d, const Integer& r);
  static RealExpr decimal(const std::string& literal, bool declared_irrational);
  /// Throws ParseError (column is 1-based within `text`).
  static RealExpr parse(std::string_view text);

  RealExpr operator+(const RealExpr& other) const;
  RealExpr operator-() const;
  RealExpr operator-(const RealExpr& other) const { return *this + (-other); }

  const std::vector<ExprTerm>& terms() const { return terms_; }
  bool is_single() const { return terms_.size() == 1; }

  /// Outward-rounded enclosure computed at `prec` bits.
  Interval enclose(Precision prec) const;

  /// Canonical text in the grammar above; parse(to_string()) reproduces the value.
  std::string to_string() const;

 private:
  explicit RealExpr(std::vector<ExprTerm> terms) : terms_(std::move(terms)) {}
  std::vector<ExprTerm> terms_;
};

/// Value of `e` rounded to `prec` bits, within 2 ulp of the exact value.
Real eval_expr(const RealExpr& e, Precision prec = kDefaultPrecision);

/// Enclosure of `e` whose width is at most 2^-target_bits relative to its
/// magnitude (absolute when the value is 0). Throws PrecisionExhausted.
Interval tight_enclosure(const RealExpr& e, Precision target_bits);

struct Rationality {
  bool rational = false;
  std::optional<Rational> value;
};

/// Exact decision for rational, quadratic and log-quotient terms (and sums of
/// them); decimal literals report their declared flag.
Rationality is_rational(const RealExpr& e);

/// Coordinates of a family of expressions in a Q-linearly independent set of
/// atoms (sqrt(d) * log(p) / log(B) for a coprime base of integers p, with a
/// common base B; or sqrt(d) alone when no logarithm occurs).
struct SpanAnalysis {
  RationalMatrix coordinates;  // one row per input expression
  RationalVector unit;         // coordinates of the number 1
  std::size_t rank = 0;        // rank over Q of the inputs
};

/// Throws UndecidableRank when the inputs mix opaque decimals with other
/// irrational quantities, or use log bases that are multiplicatively independent.
SpanAnalysis analyze_span(std::span<const RealExpr> values);

/// Coprime base of positive integers (each input is a product of powers of
/// the returned pairwise coprime integers, all > 1).
std::vector<Integer> coprime_base(const std::vector<Integer>& values);

/// Exponents of `n` over a coprime base containing all of its factors.
std::vector<long> exponents_over(const Integer& n, const std::vector<Integer>& base);

}  // namespace lsa
