#include <gtest/gtest.h>

#include "lsa/cfrac.hpp"
#include "lsa/error.hpp"

namespace lsa {
namespace {

const RealExpr kPhi = RealExpr::quadratic(1, 1, 5, 2);
const RealExpr kLog2of3 = RealExpr::log_quotient(3, 2);

TEST(Convergents, GoldenRatioGivesFibonacciRatios) {
  const auto cs = convergents(kPhi, 30);
  ASSERT_EQ(cs.size(), 30U);
  Integer f0 = 1, f1 = 1;  // F_1, F_2
  for (std::size_t j = 0; j < cs.size(); ++j) {
    EXPECT_EQ(cs[j].index, j + 1);
    EXPECT_EQ(cs[j].b, f0);
    EXPECT_EQ(cs[j].a, f1);
    const Integer f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
}

TEST(Convergents, Log2Of3ContainsTableDenominators) {
  const auto cs = convergents(kLog2of3, 14);
  const std::vector<std::pair<long, long>> expected = {
      {1, 1},     {2, 1},       {3, 2},       {8, 5},       {19, 12},      {65, 41},
      {84, 53},   {485, 306},   {1054, 665},  {24727, 15601}, {50508, 31867}, {125743, 79335},
      {176251, 111202}};
  for (std::size_t j = 0; j < expected.size(); ++j) {
    EXPECT_EQ(cs[j].a, expected[j].first) << j;
    EXPECT_EQ(cs[j].b, expected[j].second) << j;
  }
}

TEST(Convergents, RationalTerminates) {
  const auto cs = convergents(RealExpr::rational(Rational(7, 3)), 10);
  ASSERT_EQ(cs.size(), 2U);
  EXPECT_EQ(cs[0], (Convergent{2, 1, 1}));
  EXPECT_EQ(cs[1], (Convergent{7, 3, 2}));

  ConvergentStream s(RealExpr::rational(Rational(7, 3)));
  EXPECT_TRUE(next_convergent(s));
  EXPECT_TRUE(next_convergent(s));
  EXPECT_FALSE(next_convergent(s));
  EXPECT_TRUE(s.finished());
}

TEST(Convergents, RationalLogQuotientIsExact) {
  const auto cs = convergents(RealExpr::log_quotient(8, 4), 5);
  ASSERT_EQ(cs.size(), 2U);
  EXPECT_EQ(cs.back().a, 3);
  EXPECT_EQ(cs.back().b, 2);
}

TEST(Convergents, NegativeInput) {
  const auto cs = convergents(RealExpr::rational(Rational(-7, 3)), 5);
  ASSERT_EQ(cs.size(), 3U);  // [-3; 1, 2]
  EXPECT_EQ(cs[0].a, -3);
  EXPECT_EQ(cs.back().a, -7);
  EXPECT_EQ(cs.back().b, 3);
}

TEST(NextConvergent, StreamAdvancesFromTableRows) {
  ConvergentStream s(kLog2of3);
  while (s.next()->b != 306) {
  }
  EXPECT_EQ(*s.next(), (Convergent{1054, 665, 9}));

  ConvergentStream g(kPhi);
  while (g.next()->b != 1597) {
  }
  const auto c = *g.next();
  EXPECT_EQ(c.a, 4181);
  EXPECT_EQ(c.b, 2584);
}

TEST(Convergents, PrecisionExhaustionIsReported) {
  EXPECT_THROW(convergents(kLog2of3, 200, 32), PrecisionExhausted);
  ConvergentStream s(RealExpr::decimal("1.61803", true));
  EXPECT_THROW(
      {
        for (int i = 0; i < 50; ++i) s.next();
      },
      PrecisionExhausted);
}

TEST(Convergents, ManyTermsAtLowPrecisionNeedRefinement) {
  // 64 bits cannot certify 60 terms of log2(3); the stream must raise the
  // precision itself and agree with a high precision expansion.
  const auto low = convergents(kLog2of3, 60, 64);
  const auto high = convergents(kLog2of3, 60, 1024);
  EXPECT_EQ(low, high);
}

class ConvergentProperties : public ::testing::TestWithParam<const char*> {};

TEST_P(ConvergentProperties, DeterminantBoundAndBestApproximation) {
  const RealExpr x = RealExpr::parse(GetParam());
  const Real xv = eval_expr(x, 512);
  const auto cs = convergents(x, 40);
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const Convergent& c = cs[j];
    Integer g;
    mpz_gcd(g.get_mpz_t(), c.a.get_mpz_t(), c.b.get_mpz_t());
    EXPECT_EQ(g, 1);
    const Real err = abs(xv - Real(Rational(c.a, c.b), 512));
    EXPECT_LT(err, Real(Rational(1, c.b * c.b), 512));
    if (j + 1 < cs.size()) {
      const Integer det = cs[j + 1].a * c.b - c.a * cs[j + 1].b;
      EXPECT_EQ(det, (j % 2 == 0) ? 1 : -1);
      if (j >= 1) EXPECT_LT(c.b, cs[j + 1].b);
    }
    if (j >= 1 && c.b <= 10000) {
      // No fraction with a smaller denominator is closer.
      for (long d = 1; d < c.b.get_si(); ++d) {
        const Real scaled = xv * Real(d, 512);
        for (const Integer& n : {scaled.floor(), Integer(scaled.floor() + 1)}) {
          const Real e = abs(xv - Real(Rational(n, d), 512));
          ASSERT_GT(e, err) << n << "/" << d << " vs " << c.a << "/" << c.b;
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Constants, ConvergentProperties,
                         ::testing::Values("log(3)/log(2)", "(1+1*sqrt(5))/2", "log(5)/log(2)",
                                           "log(13)/log(3)", "(0+1*sqrt(2))/1",
                                           "log(3)/log(2) + (0+1*sqrt(100003))/100003"));

}  // namespace
}  // namespace lsa
