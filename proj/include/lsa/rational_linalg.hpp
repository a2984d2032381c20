#pragma once

// Exact linear algebra over Q for the small dense systems used throughout
// (span ranks, lattice determinants, coordinate solves).

#include <cstddef>
#include <optional>
#include <vector>

#include "lsa/real.hpp"

namespace lsa {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Row echelon reduction in place; returns the rank.
inline std::size_t row_reduce(RationalMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank(RationalMatrix m) { return row_reduce(m); }

/// Determinant of a square matrix.
inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

/// Coefficients y with sum_i y_i * basis[i] == target, when such exist.
/// The basis rows must be linearly independent.
inline std::optional<RationalVector> solve_combination(const RationalMatrix& basis,
                                                       const RationalVector& target) {
  const std::size_t k = basis.size();
  const std::size_t cols = target.size();
  // Augmented system: columns are coordinates, unknowns are the k weights.
  RationalMatrix a(cols, RationalVector(k + 1));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < k; ++i) a[c][i] = basis[i][c];
    a[c][k] = target[c];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < cols; ++c) {
    std::size_t p = row;
    while (p < cols && a[p][c] == 0) ++p;
    if (p == cols) continue;
    std::swap(a[p], a[row]);
    const Rational inv = 1 / a[row][c];
    for (std::size_t j = c; j <= k; ++j) a[row][j] *= inv;
    for (std::size_t r = 0; r < cols; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < cols; ++r) {
    if (a[r][k] != 0) return std::nullopt;
  }
  RationalVector y(k);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) y[pivot_col[r]] = a[r][k];
  return y;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace lsa
