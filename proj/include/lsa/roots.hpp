#pragma once

// Roots of lattice Dirichlet polynomials through the sparse polynomial
// g(z) = 1 - m_1 z^q - sum_j m_j z^{k_j}, z = r^s, and their complex dimensions.

#include <cstddef>
#include <vector>

#include "lsa/dirichlet.hpp"

namespace lsa {

struct SparseTerm {
  unsigned long exponent = 0;
  RealExpr coefficient;
};

/// Sum of c_k z^{e_k} with exact coefficients, strictly increasing exponents,
/// a nonzero constant term and a nonzero leading coefficient.
class SparsePoly {
 public:
  explicit SparsePoly(std::vector<SparseTerm> terms);

  const std::vector<SparseTerm>& terms() const { return terms_; }
  unsigned long degree() const { return terms_.back().exponent; }

  /// Coefficients rounded to `prec` bits.
  std::vector<Real> coefficients(Precision prec) const;

 private:
  std::vector<SparseTerm> terms_;
};

/// Value, derivative and the scale sum |c_k| |z|^{e_k} of a sparse polynomial,
/// evaluated over exponent gaps by binary powering.
struct SparseValue {
  Complex value;
  Complex derivative;
  Real scale;
};
SparseValue evaluate_sparse(const SparsePoly& g, const std::vector<Real>& coefficients,
                            const Complex& z);

struct LatticeForm {
  SparsePoly g;
  /// z = r^s with r = r_1^{1/q}.
  Real generator;
  Integer q;
};

/// Throws DomainError for nonlattice input.
LatticeForm to_sparse_poly(const DirichletPolynomial& f, Precision prec = kDefaultPrecision);

enum class Plane { Z, S };

struct Root {
  Complex value;
  /// |g(z)| in the z-plane, equal to |f(s)| at the mapped dimension.
  Real residual;
  unsigned multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;
  Plane plane = Plane::Z;

  std::size_t count_with_multiplicity() const;
};

/// 2^{-prec/2}, the default relative residual tolerance.
Real default_tolerance(Precision prec);

/// All roots of g, each with |g(z)| <= tolerance * sum |c_k| |z|^{e_k}, sorted by
/// (Im, Re). Roots closer than sqrt(tolerance) are merged into one with summed
/// multiplicity. Throws NumericFailure listing the unconverged indices.
RootSet solve_sparse(const SparsePoly& g, const Real& tolerance, Precision precision);

/// omega = -log|z| / log(1/r) - i arg(z) / log(1/r), replicated by multiples of
/// i 2 pi / log(1/r) while -strip_height <= Im < strip_height, sorted by (Im, Re).
RootSet roots_to_dimensions(const RootSet& zroots, const Real& generator, const Real& strip_height);

/// 2 pi q / log(1/r_1).
Real oscillatory_period(const RealExpr& r1, const Integer& q, Precision prec = kDefaultPrecision);

}  // namespace lsa
