#include <gtest/gtest.h>

#include <random>

#include "lsa/error.hpp"
#include "lsa/lll.hpp"

namespace lsa {
namespace {

Basis to_basis(std::vector<std::vector<long>> rows) {
  Basis b;
  for (const auto& r : rows) {
    RationalVector v;
    for (long x : r) v.emplace_back(x);
    b.push_back(v);
  }
  return b;
}

Basis random_basis(std::mt19937_64& rng, std::size_t n, long bound, bool rational) {
  std::uniform_int_distribution<long> entry(-bound, bound), den(1, 9);
  for (;;) {
    Basis b(n, RationalVector(n));
    for (auto& row : b) {
      for (auto& x : row) {
        x = rational ? Rational(entry(rng), den(rng)) : Rational(entry(rng));
        x.canonicalize();
      }
    }
    if (determinant(b) != 0) return b;
  }
}

Rational power(const Rational& x, long e) {
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= x;
  return r;
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Direct check of the two conditions defining an alpha-reduced basis, from a
// definitional Gram-Schmidt recomputation independent of the library.
bool is_alpha_reduced(const Basis& x, const Rational& alpha) {
  const std::size_t n = x.size();
  RationalMatrix star;
  RationalMatrix mu(n, RationalVector(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector v = x[j];
    for (std::size_t k = 0; k < j; ++k) {
      mu[j][k] = dot(x[j], star[k]) / dot(star[k], star[k]);
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= mu[j][k] * star[k][c];
    }
    star.push_back(v);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      if (abs_q(mu[j][k]) > Rational(1, 2)) return false;
    }
  }
  for (std::size_t j = 1; j < n; ++j) {
    RationalVector v = star[j];
    for (std::size_t c = 0; c < v.size(); ++c) v[c] += mu[j][j - 1] * star[j - 1][c];
    if (dot(v, v) < alpha * dot(star[j - 1], star[j - 1])) return false;
  }
  return true;
}

TEST(GramSchmidt, Identity) {
  const Basis id = to_basis({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto gs = gram_schmidt(id);
  EXPECT_EQ(gs.ortho, id);
  for (const auto& row : gs.mu) {
    for (const auto& m : row) EXPECT_EQ(m, 0);
  }
}

TEST(GramSchmidt, OneProjectionStep) {
  const auto gs = gram_schmidt(to_basis({{1, 0}, {1, 1}}));
  EXPECT_EQ(gs.ortho, to_basis({{1, 0}, {0, 1}}));
  EXPECT_EQ(gs.mu[1][0], 1);
}

TEST(GramSchmidt, MatchesDefinitionOnRandomRationalBases) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Basis x = random_basis(rng, 4, 20, true);
    const auto gs = gram_schmidt(x);
    Rational prod = 1;
    for (std::size_t j = 0; j < 4; ++j) {
      RationalVector v = x[j];
      for (std::size_t k = 0; k < j; ++k) {
        const Rational m = dot(x[j], gs.ortho[k]) / dot(gs.ortho[k], gs.ortho[k]);
        EXPECT_EQ(gs.mu[j][k], m);
        for (std::size_t c = 0; c < 4; ++c) v[c] -= m * gs.ortho[k][c];
        EXPECT_EQ(dot(gs.ortho[j], gs.ortho[k]), 0);
      }
      EXPECT_EQ(gs.ortho[j], v);
      EXPECT_EQ(gs.norms[j], dot(v, v));
      prod *= gs.norms[j];
    }
    EXPECT_EQ(prod, determinant(gram_matrix(x)));
  }
}

TEST(GramSchmidt, DependentRowsRejected) {
  EXPECT_THROW(gram_schmidt(to_basis({{1, 2}, {2, 4}})), ValidationError);
  EXPECT_THROW(lll_reduce(to_basis({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})), ValidationError);
}

TEST(ReductionParams, RangeEnforced) {
  EXPECT_THROW(ReductionParams(Rational(1, 4)), ValidationError);
  EXPECT_THROW(ReductionParams(Rational(1)), ValidationError);
  EXPECT_NO_THROW(ReductionParams(Rational(99, 100)));
  EXPECT_EQ(ReductionParams().alpha, Rational(3, 4));
}

TEST(LllReduce, OrthogonalNonDecreasingBasisIsUnchanged) {
  const Basis x = to_basis({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}});
  const auto r = lll_reduce(x);
  EXPECT_EQ(r.basis, x);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(r.transform[i][j], i == j ? 1 : 0);
  }
}

TEST(LllReduce, OrthogonalBasisWithShrinkingNormsIsReordered) {
  // The Lovasz condition fails for 3^2 < (3/4) 5^2, so the rows are swapped.
  const auto r = lll_reduce(to_basis({{5, 0, 0}, {0, 3, 0}, {0, 0, 2}}));
  EXPECT_EQ(r.basis, to_basis({{0, 0, 2}, {0, 3, 0}, {5, 0, 0}}));
}

TEST(LllReduce, ClassicExample) {
  // Well known reduction of this basis to short vectors of norm^2 2 and 3.
  const auto r = lll_reduce(to_basis({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}}));
  EXPECT_EQ(r.basis, to_basis({{0, 1, 0}, {1, 0, 1}, {-1, 0, 2}}));
}

class LllRandom : public ::testing::TestWithParam<std::tuple<std::size_t, bool, int>> {};

TEST_P(LllRandom, OutputIsReducedUnimodularAndBounded) {
  const auto [n, rational, alpha_num] = GetParam();
  const Rational alpha(alpha_num, 100);
  const ReductionParams params{alpha};
  std::mt19937_64 rng(n * 1000 + (rational ? 1 : 0) + alpha_num);
  const Rational k_const = 4 / (4 * alpha - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const Basis x = random_basis(rng, n, 50, rational);
    const auto r = lll_reduce(x, params);
    ASSERT_TRUE(is_alpha_reduced(r.basis, alpha));

    // output = T * input, T unimodular
    RationalMatrix t(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) t[i][j] = r.transform[i][j];
    }
    const Rational det_t = determinant(t);
    EXPECT_TRUE(det_t == 1 || det_t == -1);
    for (std::size_t i = 0; i < n; ++i) {
      RationalVector row(n, 0);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t c = 0; c < n; ++c) row[c] += t[i][j] * x[j][c];
      }
      EXPECT_EQ(row, r.basis[i]);
    }
    const Rational d = lattice_determinant(x);
    EXPECT_EQ(lattice_determinant(r.basis), d);

    // Reduced-basis bounds, squared to stay rational.
    const auto gs = gram_schmidt(r.basis);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k <= j; ++k) {
        EXPECT_LE(dot(r.basis[k], r.basis[k]), power(k_const, static_cast<long>(j)) * gs.norms[j]);
      }
    }
    Rational prod = 1;
    for (const auto& row : r.basis) prod *= dot(row, row);
    const Rational d2 = d * d;
    EXPECT_LE(d2, prod);
    const long nn = static_cast<long>(n);
    EXPECT_LE(prod, power(k_const, nn * (nn - 1) / 2) * d2);
    EXPECT_LE(power(dot(r.basis[0], r.basis[0]), 2 * nn), power(k_const, nn * (nn - 1)) * d2 * d2);

    // Idempotence.
    const auto again = lll_reduce(r.basis, params);
    EXPECT_EQ(again.basis, r.basis);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, LllRandom,
                         ::testing::Combine(::testing::Values(2, 3, 4, 6), ::testing::Bool(),
                                            ::testing::Values(75, 99, 30)));

TEST(LllReduceGram, AgreesWithBasisReduction) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Basis x = random_basis(rng, 4, 30, true);
    const auto a = lll_reduce(x);
    const auto g = lll_reduce_gram(gram_matrix(x));
    EXPECT_EQ(a.transform, g.transform);
    EXPECT_EQ(gram_matrix(a.basis), g.gram);
  }
}

TEST(LatticeDeterminant, Basics) {
  EXPECT_EQ(lattice_determinant(to_basis({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 1);
  EXPECT_EQ(lattice_determinant(to_basis({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})), 8);
  EXPECT_EQ(lattice_determinant(to_basis({{0, 1}, {1, 0}})), 1);
}

TEST(LatticeDeterminant, InvariantUnderUnimodularTransforms) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    Basis x = random_basis(rng, 4, 20, true);
    const Rational d = lattice_determinant(x);
    // Elementary row operations with integer multipliers keep |det| fixed.
    for (int step = 0; step < 10; ++step) {
      const std::size_t i = rng() % 4, j = (i + 1 + rng() % 3) % 4;
      const Rational c(coef(rng));
      for (std::size_t col = 0; col < 4; ++col) x[i][col] += c * x[j][col];
      if (step % 3 == 0) std::swap(x[i], x[j]);
    }
    EXPECT_EQ(lattice_determinant(x), d);
  }
}

}  // namespace
}  // namespace lsa
