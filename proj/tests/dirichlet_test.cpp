#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lsa/dirichlet.hpp"
#include "lsa/error.hpp"

namespace lsa {
namespace {

DirichletPolynomial poly(const std::string& r, const std::vector<std::string>& a,
                         const std::vector<std::string>& m) {
  std::vector<RealExpr> alpha, mult;
  for (const auto& x : a) alpha.push_back(RealExpr::parse(x));
  for (const auto& x : m) mult.push_back(RealExpr::parse(x));
  return DirichletPolynomial(RealExpr::parse(r), alpha, mult);
}

const DirichletPolynomial two_three = poly("1/2", {"1", "log(3)/log(2)"}, {"1", "1"});
const DirichletPolynomial type1_2 =
    poly("1/2", {"1", "log(3)/log(2)", "2", "log(6)/log(2)"}, {"1/10", "1/10", "1/10", "1"});
const DirichletPolynomial type1_3 =
    poly("1/2",
         {"1", "log(3)/log(2)", "log(3)/log(2) + (0+1*sqrt(100003))/100003",
          "log(3)/log(2) + (100003+1*sqrt(100003))/100003"},
         {"1/10", "1/10", "1/10", "1"});

Complex c(double re, double im, Precision p = 256) { return Complex(re, im, p); }

TEST(DirichletPolynomial, ConstructionIsValidated) {
  EXPECT_THROW(poly("3/2", {"1"}, {"1"}), ValidationError);
  EXPECT_THROW(poly("1/2", {"2"}, {"1"}), ValidationError);
  EXPECT_THROW(poly("1/2", {"1", "1"}, {"1", "1"}), ValidationError);
  EXPECT_THROW(poly("1/2", {"1", "log(2)/log(2)"}, {"1", "1"}), ValidationError);
  EXPECT_THROW(poly("1/2", {"1", "2"}, {"1"}), ValidationError);
  EXPECT_THROW(poly("1/2", {"1"}, {"0"}), ValidationError);
}

TEST(Evaluate, SmallExamples) {
  EXPECT_LT(abs(evaluate(two_three, c(0, 0)) - Complex(-1, 0, 256)).to_double(), 1e-70);
  const Complex at1 = evaluate(two_three, c(1, 0));
  EXPECT_LT(abs(at1 - Complex(Real(Rational(1, 6), 256), Real(0L, 256))).to_double(), 1e-70);
  const auto f = poly("1/2", {"1"}, {"2"});
  EXPECT_LT(abs(evaluate(f, c(1, 0))).to_double(), 1e-70);
}

TEST(Derivative, SmallExample) {
  const auto f = poly("1/2", {"1"}, {"1"});
  const Complex d = derivative(f, c(0, 0));
  EXPECT_LT(abs(d.re() - log(Real(2L, 256))).to_double(), 1e-70);
  EXPECT_TRUE(d.im().is_zero());
}

TEST(Derivative, MatchesCentralDifference) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> re(-3, 3), im(-200, 200);
  const DirichletNumerics n(two_three, 256);
  const Complex h(Real(Rational(1, Integer("100000000000000000000")), 256), Real(0L, 256));
  for (int i = 0; i < 50; ++i) {
    const Complex s = c(re(rng), im(rng));
    const Complex fd = (n.evaluate(s + h) - n.evaluate(s - h)) / (Real(2L, 256) * h.re());
    const Complex d = n.derivative(s);
    EXPECT_LE((abs(fd - d) / abs(d)).to_double(), 1e-30);
  }
}

TEST(Evaluate, ConjugateSymmetry) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> re(-5, 5), im(-1e4, 1e4);
  const DirichletNumerics n(type1_3, 200);
  for (int i = 0; i < 100; ++i) {
    const Complex s = c(re(rng), im(rng), 200);
    const auto [v, d] = n.evaluate_with_derivative(s);
    const auto [vc, dc] = n.evaluate_with_derivative(conj(s));
    EXPECT_LE(abs(vc - conj(v)).to_double(), 1e-50 * std::max(1.0, abs(v).to_double()));
    EXPECT_LE(abs(dc - conj(d)).to_double(), 1e-50 * std::max(1.0, abs(d).to_double()));
  }
}

TEST(Classify, Examples) {
  const auto lattice = classify(poly("1/2", {"1", "2"}, {"1", "1"}));
  EXPECT_TRUE(lattice.lattice);
  EXPECT_EQ(lattice.q, 1);
  EXPECT_EQ(lattice.k, (std::vector<Integer>{1, 2}));
  EXPECT_LT(abs(lattice_generator(poly("1/2", {"1", "2"}, {"1", "1"}), 1, 128) -
                Real(0.5, 128)).to_double(),
            1e-35);

  const auto a = classify(two_three);
  EXPECT_FALSE(a.lattice);
  EXPECT_EQ(a.rank, 2U);
  EXPECT_TRUE(a.generic);

  const auto b = classify(type1_2);
  EXPECT_FALSE(b.lattice);
  EXPECT_EQ(b.rank, 2U);
  EXPECT_FALSE(b.generic);

  const auto t = classify(type1_3);
  EXPECT_EQ(t.rank, 3U);
  EXPECT_FALSE(t.generic);

  EXPECT_THROW(classify(poly("1/2", {"1", "log(3)/log(2)", "dec:2.9:irrational"}, {"1", "1", "1"})),
               UndecidableRank);
}

TEST(Classify, LatticeReproducesExponents) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> a{"1"};
    Rational last = 1;
    for (int j = 0; j < 3; ++j) {
      const long d = den(rng);
      Rational next = last + Rational(1 + static_cast<long>(rng() % 1000), d);
      next.canonicalize();
      a.push_back(next.get_str());
      last = next;
    }
    const auto f = poly("2/7", a, {"1", "1", "1", "1"});
    const auto cl = classify(f);
    ASSERT_TRUE(cl.lattice);
    EXPECT_EQ(cl.k.front(), cl.q);
    for (std::size_t j = 0; j < a.size(); ++j) {
      Rational alpha(a[j]);
      alpha.canonicalize();
      Rational got(cl.k[j], cl.q);
      got.canonicalize();
      EXPECT_EQ(got, alpha);
    }
    Integer g = 0;
    for (const auto& k : cl.k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
    EXPECT_EQ(g, 1);
  }
}

// Independent 64-bit bisection for 2^{-x} + 3^{-x} = 1.
long double two_three_dimension_oracle() {
  long double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    if (std::pow(2.0L, -mid) + std::pow(3.0L, -mid) > 1) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

TEST(DimensionBounds, Examples) {
  const auto one = dimension_bounds(poly("1/2", {"1"}, {"1"}));
  EXPECT_LT(abs(one.D).to_double(), 1e-70);
  EXPECT_LT(abs(one.D_ell).to_double(), 1e-70);
  const auto two = dimension_bounds(poly("1/2", {"1"}, {"2"}));
  EXPECT_LT(abs(two.D - Real(1L, 256)).to_double(), 1e-70);

  const auto b = dimension_bounds(two_three, 256);
  EXPECT_NEAR(b.D.to_double(), static_cast<double>(two_three_dimension_oracle()), 1e-15);
  EXPECT_EQ(b.D.to_string(5).substr(0, 6), "7.8788");
  EXPECT_LE(b.D_enclosure.width(), exp2i(-128, 64));
  EXPECT_TRUE(b.D_enclosure.contains(b.D));
  // D_ell = -1 exactly: 1 + 2 = 3.
  EXPECT_LT(abs(b.D_ell + Real(1L, 256)).to_double(), 1e-70);
}

TEST(DimensionBounds, RootsAndEquations) {
  for (const auto* f : {&two_three, &type1_2, &type1_3}) {
    const auto b = dimension_bounds(*f, 256);
    EXPECT_LT(b.D_ell, b.D);
    EXPECT_GT(b.D.sign(), 0);
    EXPECT_LT(abs(evaluate(*f, Complex(b.D))).to_double(), 1e-70);
    // Left equation at D_ell.
    const DirichletNumerics n(*f, 256);
    Real lhs(1L, 256), rhs(0L, 256);
    for (std::size_t j = 0; j < f->size(); ++j) {
      const Real term = abs(n.multiplicities()[j]) * exp(-(n.weights()[j] * b.D_ell));
      if (j + 1 < f->size()) {
        lhs += term;
      } else {
        rhs = term;
      }
    }
    EXPECT_LT(abs(lhs - rhs).to_double(), 1e-60);
  }
}

TEST(DimensionBounds, IncreasingMultiplicityIncreasesD) {
  const Real base = dimension_bounds(type1_2, 128).D;
  std::vector<std::string> m = {"1/10", "1/10", "1/10", "1"};
  for (std::size_t j = 0; j < m.size(); ++j) {
    auto bumped = m;
    bumped[j] = m[j] + " + 1/1000";
    const auto f = poly("1/2", {"1", "log(3)/log(2)", "2", "log(6)/log(2)"}, bumped);
    EXPECT_GT(dimension_bounds(f, 128).D, base) << j;
  }
}

TEST(LsaConstant, AgreesWithTypeOneFormula) {
  struct Case {
    const DirichletPolynomial* f;
    double xi;
  };
  const auto golden = poly("1/2", {"1", "(1+1*sqrt(5))/2"}, {"1", "1"});
  const auto f2357 =
      poly("1/2", {"1", "log(3)/log(2)", "log(5)/log(2)", "log(7)/log(2)"}, {"1", "1", "1", "1"});
  for (const Case& k : {Case{&two_three, 1}, Case{&golden, 1}, Case{&type1_2, 0.3},
                        Case{&f2357, 3}, Case{&type1_3, 0.3}}) {
    const auto& f = *k.f;
    const std::size_t n = f.size();
    Real xi(0L, 256);
    for (std::size_t j = 0; j + 1 < n; ++j) xi += eval_expr(f.multiplicities()[j], 256);
    const Real general = lsa_constant(f, 256);
    const Real closed = lsa_constant_type1(xi, eval_expr(f.exponents()[n - 2], 256),
                                           eval_expr(f.exponents()[n - 1], 256));
    EXPECT_LE((abs(general - closed) / general).to_double(), 1e-30);
  }
}

TEST(LsaConstant, MatchesDoublePrecisionFormula) {
  // type1_2 by hand: (1.3/2pi) * 2.3^{-2 log2(6) / (log2(6) - 2)}.
  const double a4 = std::log2(6.0);
  const double expected = 1.3 / (2 * M_PI) * std::pow(2.3, -2 * a4 / (a4 - 2));
  EXPECT_NEAR(lsa_constant(type1_2).to_double() / expected, 1.0, 1e-12);
  // 2-3: (2/2pi) * 3^{-2 log2(3) / (log2(3) - 1)}.
  const double a2 = std::log2(3.0);
  const double e23 = 2 / (2 * M_PI) * std::pow(3.0, -2 * a2 / (a2 - 1));
  EXPECT_NEAR(lsa_constant(two_three).to_double() / e23, 1.0, 1e-12);
}

TEST(SelfSimilarString, Examples) {
  const auto cantor = from_self_similar_string({{Rational(1, 3), 1}, {Rational(1, 3), 1}},
                                               {Rational(1, 3)});
  EXPECT_TRUE(cantor.single_gap);
  EXPECT_EQ(cantor.denominator.size(), 1U);
  EXPECT_EQ(*is_rational(cantor.denominator.multiplicities()[0]).value, 2);
  EXPECT_EQ(*is_rational(cantor.denominator.base_ratio()).value, Rational(1, 3));
  const auto dc = dimension_bounds(cantor.denominator, 128);
  EXPECT_NEAR(dc.D.to_double(), std::log(2.0) / std::log(3.0), 1e-15);

  const auto quarter =
      from_self_similar_string({{Rational(1, 2), 1}, {Rational(1, 4), 1}}, {Rational(1, 4)});
  EXPECT_TRUE(classify(quarter.denominator).lattice);
  EXPECT_EQ(classify(quarter.denominator).k, (std::vector<Integer>{1, 2}));

  const auto multi = from_self_similar_string({{Rational(1, 2), 1}, {Rational(1, 3), 1}},
                                              {Rational(1, 12), Rational(1, 12)});
  EXPECT_EQ(multi.gaps.size(), 2U);
  EXPECT_FALSE(classify(multi.denominator).lattice);

  EXPECT_THROW(from_self_similar_string({{Rational(1, 2), 1}}, {Rational(1, 3)}), ValidationError);
  EXPECT_THROW(from_self_similar_string({{Rational(1, 2), 2}}, {Rational(1, 4)}), ValidationError);
}

}  // namespace
}  // namespace lsa
