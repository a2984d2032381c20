#pragma once

// Simple continued fractions of real constants, with every partial quotient
// certified by interval enclosures.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "lsa/real_expr.hpp"

namespace lsa {

/// The index-th convergent a/b of a continued fraction (index starts at 1).
struct Convergent {
  Integer a;
  Integer b;
  std::size_t index = 0;

  friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Lazily expands x. Rational inputs run the Euclidean algorithm and end;
/// irrational inputs draw on enclosures of x, doubling the precision when a
/// partial quotient cannot be certified, up to `cap_factor` times the start.
class ConvergentStream {
 public:
  explicit ConvergentStream(RealExpr x, Precision precision = kDefaultPrecision,
                            unsigned cap_factor = 8);

  using Encloser = std::function<Interval(Precision)>;
  /// Expansion of an irrational number known only through enclosures.
  ConvergentStream(Encloser enclose, std::string label, Precision precision = kDefaultPrecision,
                   unsigned cap_factor = 8);

  /// Next convergent, or nullopt once a rational input is exhausted.
  /// Throws PrecisionExhausted when the cap is reached.
  std::optional<Convergent> next();

  bool finished() const { return finished_; }
  bool exact() const { return exact_; }
  const std::string& label() const { return label_; }
  const std::vector<Integer>& partial_quotients() const { return quotients_; }
  /// Most recently returned convergent.
  const std::optional<Convergent>& current() const { return current_; }

 private:
  std::optional<Integer> next_quotient();
  void refine();

  Encloser enclose_;
  std::string label_;
  Precision precision_;
  Precision cap_;
  bool exact_ = false;
  bool finished_ = false;
  // Remaining tail of the expansion, either exactly or as an enclosure whose
  // endpoints are carried through the same Euclidean steps.
  Rational lo_, hi_;
  std::vector<Integer> quotients_;
  Integer p_prev_ = 1, p_prev2_ = 0, q_prev_ = 0, q_prev2_ = 1;
  std::optional<Convergent> current_;
};

/// The first `count` convergents (fewer when x is rational and its expansion
/// is shorter).
std::vector<Convergent> convergents(const RealExpr& x, std::size_t count,
                                    Precision precision = kDefaultPrecision);

/// Advances `stream`; nullopt marks the end of a rational expansion.
inline std::optional<Convergent> next_convergent(ConvergentStream& stream) { return stream.next(); }

}  // namespace lsa
