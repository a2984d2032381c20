#pragma once

// Dirichlet polynomials f(s) = 1 - sum_j m_j r_j^s with r_j = r_1^{alpha_j}.

#include <cstddef>
#include <optional>
#include <vector>

#include "lsa/interval.hpp"
#include "lsa/real_expr.hpp"

namespace lsa {

class DirichletPolynomial {
 public:
  /// Requires 0 < r_1 < 1, alpha_1 = 1 < alpha_2 < ... < alpha_N, nonzero
  /// multiplicities, and as many multiplicities as exponents.
  DirichletPolynomial(RealExpr base_ratio, std::vector<RealExpr> exponents,
                      std::vector<RealExpr> multiplicities);

  std::size_t size() const { return alpha_.size(); }
  const RealExpr& base_ratio() const { return r1_; }
  const std::vector<RealExpr>& exponents() const { return alpha_; }
  const std::vector<RealExpr>& multiplicities() const { return m_; }

  /// alpha_2..alpha_N, which equal the weight ratios w_j / w_1.
  std::vector<RealExpr> weight_ratios() const;

  /// -log r_1 enclosure at `prec` bits.
  Interval log_inverse_base(Precision prec) const;
  Interval weight(std::size_t j, Precision prec) const;
  Interval multiplicity(std::size_t j, Precision prec) const;

 private:
  RealExpr r1_;
  std::vector<RealExpr> alpha_;
  std::vector<RealExpr> m_;
};

/// Weights and multiplicities rounded once at a given precision, for repeated
/// evaluation. Accurate to about `precision` bits for |s| < 2^32.
class DirichletNumerics {
 public:
  DirichletNumerics(const DirichletPolynomial& f, Precision precision);

  Complex evaluate(const Complex& s) const;
  Complex derivative(const Complex& s) const;
  /// Value and derivative from one set of exponentials.
  std::pair<Complex, Complex> evaluate_with_derivative(const Complex& s) const;

  Precision precision() const { return prec_; }
  const std::vector<Real>& weights() const { return w_; }
  const std::vector<Real>& multiplicities() const { return m_; }

 private:
  Precision prec_;
  std::vector<Real> w_;
  std::vector<Real> m_;
};

Complex evaluate(const DirichletPolynomial& f, const Complex& s);
Complex derivative(const DirichletPolynomial& f, const Complex& s);

struct Classification {
  bool lattice = false;
  /// Lattice: r_j = r^{k_j} with r = r_1^{1/q} and k_1 = q.
  Integer q;
  std::vector<Integer> k;
  /// Rank over Q of the weights (1 for lattice polynomials).
  std::size_t rank = 0;
  bool generic = false;
};

/// Throws UndecidableRank when the exponents cannot be decided exactly.
Classification classify(const DirichletPolynomial& f);

/// r_1^{1/q}, the generator of a lattice (or lattice approximation) polynomial.
Real lattice_generator(const DirichletPolynomial& f, const Integer& q, Precision prec);

struct DimensionBounds {
  Real D_ell;
  Real D;
  Interval D_ell_enclosure;
  Interval D_enclosure;
};

/// D solves sum |m_j| r_j^D = 1 and D_ell solves
/// 1 + sum_{j<N} |m_j| r_j^D_ell = |m_N| r_N^D_ell, both by certified bisection.
DimensionBounds dimension_bounds(const DirichletPolynomial& f, Precision precision = kDefaultPrecision);

/// The constant C scaling the stability radius of lattice approximations.
Real lsa_constant(const DirichletPolynomial& f, Precision precision = kDefaultPrecision);

/// Closed form of the same constant for f = 1 - sum_{j<N} m_j 2^{-alpha_j s} - r^{alpha_N s}
/// with xi = sum_{j<N} |m_j|.
Real lsa_constant_type1(const Real& xi, const Real& alpha_n_minus_1, const Real& alpha_n);

/// A scaling ratio with its multiplicity.
struct ScaledCopy {
  Rational ratio;
  Integer multiplicity = 1;
};

/// zeta_L(s) = L^s sum_k g_k^s / f(s) of a self-similar string.
struct GeometricZeta {
  std::vector<Rational> gaps;
  Rational length;
  DirichletPolynomial denominator;
  /// All gaps equal: the complex dimensions are the roots of the denominator.
  bool single_gap = false;
};

/// Throws ValidationError unless every ratio and gap lies in (0, 1) and
/// sum m_j r_j + sum g_k = 1.
GeometricZeta from_self_similar_string(const std::vector<ScaledCopy>& ratios,
                                       const std::vector<Rational>& gaps,
                                       const Rational& length = 1);

}  // namespace lsa
