#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "lsa/error.hpp"
#include "lsa/roots.hpp"

namespace lsa {
namespace {

SparsePoly trinomial(unsigned long a, unsigned long b) {
  return SparsePoly({{0, RealExpr::rational(1)}, {a, RealExpr::rational(-1)}, {b, RealExpr::rational(-1)}});
}

DirichletPolynomial lattice_two_three(long q, long k) {
  return DirichletPolynomial(RealExpr::rational(Rational(1, 2)),
                             {RealExpr::rational(1), RealExpr::rational(Rational(k, q))},
                             {RealExpr::rational(1), RealExpr::rational(1)});
}

// Certified bisection for the root of 1 - x^a - x^b in (0, 1), exact rationals.
Rational positive_root_oracle(unsigned long a, unsigned long b, int bits) {
  Rational lo(0), hi(1);
  auto g = [&](const Rational& x) -> Rational {
    Rational xa(1), xb;
    for (unsigned long i = 0; i < a; ++i) xa *= x;
    xb = xa;
    for (unsigned long i = a; i < b; ++i) xb *= x;
    return 1 - xa - xb;
  };
  for (int i = 0; i < bits; ++i) {
    // Round the midpoint down to a dyadic to keep the numbers small.
    const Integer unit = Integer(1) << (bits + 8);
    const Rational exact = (lo + hi) / 2 * unit;
    const Integer scaled = exact.get_num() / exact.get_den();
    Rational mid(scaled, unit);
    mid.canonicalize();
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

void expect_conjugate_closed(const RootSet& set, double tol) {
  for (const auto& r : set.roots) {
    const Complex c = conj(r.value);
    bool found = false;
    for (const auto& o : set.roots) {
      if (abs(o.value - c).to_double() <= tol && o.multiplicity == r.multiplicity) found = true;
    }
    EXPECT_TRUE(found) << r.value.re().to_double() << " " << r.value.im().to_double();
  }
}

void expect_certified(const SparsePoly& g, const RootSet& set, const Real& tol, Precision prec) {
  const auto c = g.coefficients(prec);
  for (const auto& r : set.roots) {
    const SparseValue v = evaluate_sparse(g, c, r.value);
    EXPECT_LE(abs(v.value), tol * v.scale);
    EXPECT_LE(abs(abs(v.value) - r.residual).to_double(), 1e-30);
  }
}

TEST(SparsePoly, Validation) {
  EXPECT_THROW(SparsePoly({{0, RealExpr::rational(1)}}), ValidationError);
  EXPECT_THROW(SparsePoly({{1, RealExpr::rational(1)}, {2, RealExpr::rational(1)}}), ValidationError);
  EXPECT_THROW(trinomial(3, 3), ValidationError);
  EXPECT_THROW(SparsePoly({{0, RealExpr::rational(1)}, {2, RealExpr::rational(0)}}), ValidationError);
}

TEST(SparsePoly, EvaluationMatchesDirectSum) {
  const SparsePoly g = trinomial(53, 84);
  const auto c = g.coefficients(200);
  const Complex z(0.7, -0.71, 200);
  const SparseValue v = evaluate_sparse(g, c, z);
  Complex direct = Complex(1.0, 0.0, 200), deriv(200), power = Complex(1.0, 0.0, 200);
  for (unsigned long e = 1; e <= 84; ++e) {
    const Complex previous = power;
    power *= z;
    if (e == 53 || e == 84) {
      direct -= power;
      deriv -= previous * Real(static_cast<long>(e), 200);
    }
  }
  EXPECT_LT(abs(v.value - direct).to_double(), 1e-50);
  EXPECT_LT(abs(v.derivative - deriv).to_double(), 1e-48);
}

TEST(ToSparsePoly, Examples) {
  const auto small = to_sparse_poly(lattice_two_three(1, 2));
  ASSERT_EQ(small.g.terms().size(), 3U);
  EXPECT_EQ(small.g.terms()[1].exponent, 1U);
  EXPECT_EQ(small.g.terms()[2].exponent, 2U);
  EXPECT_EQ(*is_rational(small.g.terms()[2].coefficient).value, -1);
  EXPECT_TRUE(small.generator == Real(0.5, 256));

  const auto f53 = to_sparse_poly(lattice_two_three(53, 84));
  EXPECT_EQ(f53.q, 53);
  EXPECT_EQ(f53.g.degree(), 84U);
  EXPECT_EQ(f53.g.terms()[1].exponent, 53U);
  const Real expected = exp2i(0, 256) / exp(log(Real(2L, 256)) / 53L);
  EXPECT_LT(abs(f53.generator - expected).to_double(), 1e-70);

  const auto f306 = to_sparse_poly(lattice_two_three(306, 485));
  EXPECT_EQ(f306.g.degree(), 485U);
  EXPECT_EQ(f306.g.terms()[1].exponent, 306U);

  const DirichletPolynomial nonlattice(RealExpr::rational(Rational(1, 2)),
                                       {RealExpr::rational(1), RealExpr::parse("log(3)/log(2)")},
                                       {RealExpr::rational(1), RealExpr::rational(1)});
  EXPECT_THROW(to_sparse_poly(nonlattice), DomainError);
}

TEST(SolveSparse, RootsOfUnity) {
  for (unsigned long n : {1UL, 2UL, 7UL, 64UL}) {
    const SparsePoly g({{0, RealExpr::rational(1)}, {n, RealExpr::rational(-1)}});
    const auto set = solve_sparse(g, default_tolerance(128), 128);
    ASSERT_EQ(set.roots.size(), n);
    std::set<long> classes;
    for (const auto& r : set.roots) {
      EXPECT_LT(abs(abs(r.value) - Real(1L, 128)).to_double(), 1e-35);
      // The angle is a multiple of 2 pi / n.
      const Real k = arg(r.value) * Real(static_cast<long>(n), 128) / (Real::pi(128) * 2L);
      const Integer nearest = (k + Real(0.5, 128)).floor();
      EXPECT_LT(abs(k - Real(nearest, 128)).to_double(), 1e-30);
      classes.insert(((nearest.get_si() % static_cast<long>(n)) + static_cast<long>(n)) %
                     static_cast<long>(n));
    }
    EXPECT_EQ(classes.size(), n);
  }
}

TEST(SolveSparse, QuadraticFormula) {
  const auto set = solve_sparse(trinomial(1, 2), default_tolerance(256), 256);
  ASSERT_EQ(set.roots.size(), 2U);
  const Real s5 = sqrt(Real(5L, 256));
  // Sorted by (Im, Re): both real, the negative one first.
  EXPECT_TRUE(set.roots[0].value.im().is_zero());
  EXPECT_LT(abs(set.roots[0].value.re() - (-(s5 + 1L)) / 2L).to_double(), 1e-70);
  EXPECT_LT(abs(set.roots[1].value.re() - (s5 - 1L) / 2L).to_double(), 1e-70);
}

TEST(SolveSparse, UniquePositiveRootMatchesBisectionAndDimension) {
  const SparsePoly g = trinomial(53, 84);
  const auto set = solve_sparse(g, default_tolerance(128), 128);
  std::vector<Real> positive;
  for (const auto& r : set.roots) {
    if (r.value.im().is_zero() && r.value.re().sign() > 0) positive.push_back(r.value.re());
  }
  ASSERT_EQ(positive.size(), 1U);
  const Rational oracle = positive_root_oracle(53, 84, 120);
  EXPECT_LT(abs(positive[0] - Real(oracle, 128)).to_double(), 1e-33);
  const Real D53 = dimension_bounds(lattice_two_three(53, 84), 128).D;
  EXPECT_LT(abs(positive[0] - exp2i(0, 128) / pow(Real(2L, 128), D53 / 53L)).to_double(), 1e-33);
}

class SolveSparseProperties : public ::testing::TestWithParam<std::pair<unsigned long, unsigned long>> {};

TEST_P(SolveSparseProperties, CountResidualConjugatesVieta) {
  const auto [a, b] = GetParam();
  const SparsePoly g = trinomial(a, b);
  const Real tol = default_tolerance(128);
  const auto set = solve_sparse(g, tol, 128);
  EXPECT_EQ(set.count_with_multiplicity(), b);
  expect_certified(g, set, tol, 128);
  expect_conjugate_closed(set, 1e-30);
  // Sum of roots: zero unless a = b - 1, then -(-1)/(-1) = -1.
  Complex sum(128);
  for (const auto& r : set.roots) sum += r.value * Real(static_cast<long>(r.multiplicity), 128);
  const double expected = a + 1 == b ? -1.0 : 0.0;
  EXPECT_LT(abs(sum - Complex(expected, 0.0, 128)).to_double(), tol.to_double() * b);
  for (std::size_t i = 1; i < set.roots.size(); ++i) {
    const auto& p = set.roots[i - 1].value;
    const auto& q = set.roots[i].value;
    EXPECT_TRUE(p.im() < q.im() || (p.im() == q.im() && p.re() <= q.re()));
  }
}

INSTANTIATE_TEST_SUITE_P(Trinomials, SolveSparseProperties,
                         ::testing::Values(std::pair{1UL, 2UL}, std::pair{2UL, 3UL}, std::pair{5UL, 8UL},
                                           std::pair{53UL, 84UL}, std::pair{83UL, 84UL},
                                           std::pair{306UL, 485UL}, std::pair{665UL, 1054UL}));

TEST(SolveSparse, DoublingPrecisionShrinksResiduals) {
  const SparsePoly g = trinomial(53, 84);
  const auto low = solve_sparse(g, default_tolerance(128), 128);
  const auto high = solve_sparse(g, default_tolerance(256), 256);
  ASSERT_EQ(low.roots.size(), high.roots.size());
  const Real factor = exp2i(64, 64);
  const auto c256 = g.coefficients(256);
  for (std::size_t i = 0; i < low.roots.size(); ++i) {
    const Complex z(Real(low.roots[i].value.re(), 256), Real(low.roots[i].value.im(), 256));
    const Real before = abs(evaluate_sparse(g, c256, z).value);
    EXPECT_TRUE(high.roots[i].residual.is_zero() || before >= factor * high.roots[i].residual ||
                before.is_zero())
        << i;
  }
}

TEST(SolveSparse, MultipleRootsAreMerged) {
  // (1 - z)^2 and (1 - z^2)^2.
  const SparsePoly square({{0, RealExpr::rational(1)}, {1, RealExpr::rational(-2)}, {2, RealExpr::rational(1)}});
  const auto one = solve_sparse(square, default_tolerance(128), 128);
  ASSERT_EQ(one.roots.size(), 1U);
  EXPECT_EQ(one.roots[0].multiplicity, 2U);
  EXPECT_LT(abs(one.roots[0].value.re() - Real(1L, 128)).to_double(), 1e-15);

  const SparsePoly quartic({{0, RealExpr::rational(1)}, {2, RealExpr::rational(-2)}, {4, RealExpr::rational(1)}});
  const auto two = solve_sparse(quartic, default_tolerance(128), 128);
  ASSERT_EQ(two.roots.size(), 2U);
  EXPECT_EQ(two.count_with_multiplicity(), 4U);
}

TEST(SolveSparse, ThreadCountDoesNotChangeResults) {
  const SparsePoly g = trinomial(306, 485);
  setenv("DIRICHLET_LSA_THREADS", "1", 1);
  const auto serial = solve_sparse(g, default_tolerance(128), 128);
  setenv("DIRICHLET_LSA_THREADS", "4", 1);
  const auto parallel = solve_sparse(g, default_tolerance(128), 128);
  unsetenv("DIRICHLET_LSA_THREADS");
  ASSERT_EQ(serial.roots.size(), parallel.roots.size());
  for (std::size_t i = 0; i < serial.roots.size(); ++i) {
    EXPECT_TRUE(serial.roots[i].value.re() == parallel.roots[i].value.re());
    EXPECT_TRUE(serial.roots[i].value.im() == parallel.roots[i].value.im());
  }
}

TEST(RootsToDimensions, Examples) {
  const Real half(0.5, 128);
  RootSet unit{{{Complex(1.0, 0.0, 128), Real(0L, 128), 1}}, Plane::Z};
  const auto zero = roots_to_dimensions(unit, half, Real(1L, 128));
  ASSERT_EQ(zero.roots.size(), 1U);
  EXPECT_TRUE(zero.roots[0].value.re().is_zero());
  EXPECT_TRUE(zero.roots[0].value.im().is_zero());

  const SparsePoly g({{0, RealExpr::rational(1)}, {1, RealExpr::rational(-2)}});
  const auto z = solve_sparse(g, default_tolerance(128), 128);
  const Real log2 = log(Real(2L, 128));
  const Real p = Real::pi(128) * 2L / log2;
  const auto s = roots_to_dimensions(z, half, p * Real(3.5, 128));
  ASSERT_EQ(s.roots.size(), 7U);
  for (std::size_t i = 0; i < s.roots.size(); ++i) {
    EXPECT_LT(abs(s.roots[i].value.re() - Real(1L, 128)).to_double(), 1e-35);
    EXPECT_LT(abs(s.roots[i].value.im() - p * static_cast<long>(i - 3)).to_double(), 1e-30);
  }
  EXPECT_THROW(roots_to_dimensions(s, half, p), ValidationError);
  EXPECT_THROW(roots_to_dimensions(z, half, Real(0L, 64)), ValidationError);
}

TEST(RootsToDimensions, ReplicationCountAndRealMember) {
  const auto form = to_sparse_poly(lattice_two_three(53, 84), 128);
  const auto z = solve_sparse(form.g, default_tolerance(128), 128);
  const Real L = -log(form.generator);
  const Real p = Real::pi(128) * 2L / L;
  const Real T = p * 2L;
  const auto s = roots_to_dimensions(z, form.generator, T);
  // Direct count: principal images shifted by n p while inside the strip.
  std::size_t expected = 0;
  for (const auto& r : z.roots) {
    const Real im = -arg(r.value) / L;
    for (long n = -10; n <= 10; ++n) {
      const Real shifted = im + p * n;
      if (!(shifted < -T) && shifted < T) ++expected;
    }
  }
  EXPECT_EQ(s.roots.size(), expected);
  const Real D53 = dimension_bounds(lattice_two_three(53, 84), 128).D;
  std::size_t real_members = 0;
  for (const auto& r : s.roots) {
    EXPECT_GE(r.value.im(), -T);
    EXPECT_LT(r.value.im(), T);
    if (r.value.im().is_zero()) {
      ++real_members;
      EXPECT_LT(abs(r.value.re() - D53).to_double(), 1e-30);
    }
  }
  EXPECT_EQ(real_members, 1U);
  // Half a period keeps exactly the principal images, including a negative
  // real z-root at Im = -p/2.
  EXPECT_EQ(roots_to_dimensions(z, form.generator, p / 2L).roots.size(), 84U);
}

TEST(OscillatoryPeriod, MatchesFormula) {
  const Real p = oscillatory_period(RealExpr::rational(Rational(1, 2)), 53, 128);
  EXPECT_NEAR(p.to_double(), 2 * M_PI * 53 / std::log(2.0), 1e-10);
  const Real p3 = oscillatory_period(RealExpr::rational(Rational(1, 3)), 1, 128);
  EXPECT_NEAR(p3.to_double(), 2 * M_PI / std::log(3.0), 1e-13);
  EXPECT_THROW(oscillatory_period(RealExpr::rational(2), 1), ValidationError);
  EXPECT_THROW(oscillatory_period(RealExpr::rational(Rational(1, 2)), 0), ValidationError);
}

}  // namespace
}  // namespace lsa
