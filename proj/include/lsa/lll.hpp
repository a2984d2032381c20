#pragma once

// Exact rational lattice basis reduction (textbook LLL).

#include <vector>

#include "lsa/rational_linalg.hpp"

namespace lsa {

/// Rows x_1..x_n of a lattice basis; rows must be linearly independent.
using Basis = RationalMatrix;
using IntegerMatrix = std::vector<std::vector<Integer>>;

struct GramSchmidtData {
  RationalMatrix ortho;   // x*_1..x*_n
  RationalMatrix mu;      // mu[j][k] for k < j, zero elsewhere
  RationalVector norms;   // |x*_j|^2
};

struct ReductionParams {
  Rational alpha{3, 4};

  ReductionParams() = default;
  /// Throws ValidationError unless 1/4 < alpha < 1.
  explicit ReductionParams(const Rational& a);
};

struct Reduction {
  Basis basis;             // equals transform * input
  IntegerMatrix transform; // unimodular
};

struct GramReduction {
  RationalMatrix gram;     // Gram matrix of the reduced basis
  IntegerMatrix transform; // reduced = transform * input
};

/// Throws ValidationError for dependent rows.
GramSchmidtData gram_schmidt(const Basis& basis);

/// Reduces a basis. Throws ValidationError for dependent rows.
Reduction lll_reduce(const Basis& basis, const ReductionParams& params = {});

/// Same reduction driven only by the symmetric positive definite Gram matrix
/// of the basis, for lattices whose entries are known only through their
/// inner products.
GramReduction lll_reduce_gram(const RationalMatrix& gram, const ReductionParams& params = {});

/// |det X| of a square basis.
Rational lattice_determinant(const Basis& basis);

RationalMatrix gram_matrix(const Basis& basis);

}  // namespace lsa
