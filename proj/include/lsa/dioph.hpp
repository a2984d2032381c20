#pragma once

// Simultaneous Diophantine approximation: the LLL embedding and the
// convergent-driven stream of successively better approximations.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lsa/cfrac.hpp"
#include "lsa/real_expr.hpp"

namespace lsa {

enum class SdaProvenance { ContinuedFraction, LllStream };

/// Q, (q, k_2..k_N): |x_j - k_j/q| < 1/(qQ) for the approximated ratios x_j.
struct SDA {
  Real Q;
  Integer q;
  std::vector<Integer> k;
  std::optional<Rational> delta;
  SdaProvenance provenance = SdaProvenance::ContinuedFraction;
};

struct StreamConfig {
  Rational delta0{99, 100};
  std::size_t n_steps = 99;
  /// Bound on LLL calls spent looking for a single emission.
  std::size_t max_iterations = 10000;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
  /// The fixed decrement delta0 / n_steps.
  Rational step() const;
};

struct DioApproximation {
  Integer b;
  std::vector<Integer> a;
};

/// Integers b >= 1, a_j with |x_j - a_j/b| <= delta/b and b <= 2^{n(n+1)/4} delta^-n,
/// read from an LLL-reduced basis of the standard embedding lattice.
DioApproximation lll_dio(const std::vector<Rational>& x, const Rational& delta);

/// min_j 1/|x_j b - a_j| evaluated at the precision of x; +infinity when every
/// coordinate is hit exactly.
Real sda_quality(std::span<const Real> x, const Integer& b, std::span<const Integer> a);

/// Same quantity for exactly described reals, certified to `precision` bits.
Real sda_quality(std::span<const RealExpr> x, const Integer& b, std::span<const Integer> a,
                 Precision precision = kDefaultPrecision);

/// The SDA with denominator q and numerators k to the ratios x, with Q the
/// quality lowered by a relative 2^{-precision/2} so the strict inequality holds.
SDA make_sda(std::span<const RealExpr> x, const Integer& q, std::vector<Integer> k,
             Precision precision = kDefaultPrecision);

/// Checks |w_j/w_1 - k_j/q| < 1/(qQ) for j = 2..N treating the weights as
/// exact. Throws Indeterminate when the margin is below the working precision.
bool validate_sda(std::span<const Real> weights, const SDA& sda);

/// Same check against exactly described ratios x_j = w_{j+1}/w_1, raising
/// the precision (up to 8x) before giving up with Indeterminate.
bool validate_sda_ratios(std::span<const RealExpr> ratios, const SDA& sda,
                         Precision precision = kDefaultPrecision);

enum class StreamMode {
  /// Reduce to a basis of the irrational parts first: rank 2 uses continued
  /// fractions directly, higher ranks run the LLL stream on the basis.
  Auto,
  /// Run the LLL stream on every coordinate as given.
  Lll,
};

/// Lazily produces SDAs to the ratios x_j. At least one x_j must be irrational.
class DioStream {
 public:
  DioStream(std::vector<RealExpr> x, StreamConfig config = {},
            Precision precision = kDefaultPrecision, StreamMode mode = StreamMode::Auto);
  ~DioStream();
  DioStream(DioStream&&) noexcept;
  DioStream& operator=(DioStream&&) noexcept;

  /// Next SDA; nullopt once delta is used up.
  std::optional<SDA> next();

  /// Rank over Q of {1, x_1, ..., x_n}.
  std::size_t rank() const;
  /// True when SDAs come straight from continued fractions.
  bool uses_continued_fractions() const;
  const Rational& delta() const;
  std::size_t lll_calls() const;

 private:
  struct State;
  std::unique_ptr<State> s_;
};

}  // namespace lsa
