#include "support.hpp"

#include "asymptotica/errors.hpp"
#include "asymptotica/lc_io.hpp"
#include "asymptotica/lc_roots.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace asymptotica::lc {
namespace {

using asymptotica::to_string;
using lc::to_string;

LCNumber L(const char* s) { return parse_lc(s); }
const Rational T = default_truncation();

void expect_close(const LCNumber& a, const LCNumber& b, double tol = 1e-12) {
  const LCNumber d = a - b;
  for (const auto& t : d.terms()) EXPECT_LT(std::abs(t.coef), tol) << "at rho^" << to_string(t.exponent);
}

TEST(LcArith, ExponentsAdd) { EXPECT_EQ(L("rho") * L("rho"), LCNumber::monomial(1.0, Rational(2))); }

TEST(LcArith, SelfDifferenceIsEmpty) {
  const LCNumber d = L("1 + rho") - L("1 + rho");
  EXPECT_TRUE(d.is_zero());
  EXPECT_TRUE(d.terms().empty());
}

TEST(LcArith, BruteForceConvolution) {
  const LCNumber a = L("3*rho^-1 + rho");
  const LCNumber b = L("2*rho^(1/2)");
  // Oracle: every pair of terms, exponents added and coefficients multiplied.
  std::vector<Term> expect;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) expect.push_back({s.exponent + t.exponent, s.coef * t.coef});
  }
  const LCNumber oracle = LCNumber::from_terms(expect, T);
  EXPECT_EQ(a * b, oracle);
  EXPECT_EQ(a * b, L("6*rho^(-1/2) + 2*rho^(3/2)"));
}

TEST(LcArith, CanonicalForm) {
  const LCNumber a = LCNumber::from_terms({{Rational(2), 1.0}, {Rational(1), 2.0}, {Rational(2), -1.0}, {Rational(13), 5.0}}, T);
  ASSERT_EQ(a.terms().size(), 1u);
  EXPECT_EQ(a.terms()[0].exponent, Rational(1));
  EXPECT_TRUE(a.truncated());
  for (std::size_t i = 1; i < a.terms().size(); ++i) EXPECT_LT(a.terms()[i - 1].exponent, a.terms()[i].exponent);
}

TEST(LcInverse, Examples) {
  EXPECT_EQ(inverse(LCNumber(1.0)), LCNumber(1.0));
  EXPECT_EQ(inverse(L("rho")), LCNumber::monomial(1.0, Rational(-1), T - 2));
  EXPECT_THROW(inverse(LCNumber()), DivisionByZero);
}

TEST(LcInverse, GeometricSeries) {
  const LCNumber inv = inverse(L("1 + rho"));
  ASSERT_EQ(inv.terms().size(), 12u);
  for (int k = 0; k < 12; ++k) {
    EXPECT_EQ(inv.terms()[k].exponent, Rational(k));
    EXPECT_EQ(inv.terms()[k].coef, Coef(k % 2 ? -1.0 : 1.0));
  }
  EXPECT_TRUE((L("1 + rho") * inv - LCNumber(1.0)).is_zero());
}

TEST(LcSqrt, Examples) {
  EXPECT_EQ(sqrt_nonneg(L("rho^2")), L("rho"));
  EXPECT_TRUE(sqrt_nonneg(LCNumber()).is_zero());
  EXPECT_THROW(sqrt_nonneg(L("-rho")), NegativeOperand);
  EXPECT_THROW(sqrt_nonneg(L("i")), NotReal);
}

TEST(LcSqrt, BinomialSeries) {
  const LCNumber s = sqrt_nonneg(L("1 + rho"));
  // binomial(1/2, k)
  double g = 1;
  for (int k = 0; k < 6; ++k) {
    EXPECT_NEAR(s.coefficient_at(Rational(k)).real(), g, 1e-15) << k;
    g *= (0.5 - k) / (k + 1);
  }
  expect_close(s * s, L("1 + rho"), 1e-14);
}

TEST(LcRoots, Examples) {
  auto roots = poly_roots(std::vector<LCNumber>{-L("rho^2"), LCNumber(), LCNumber(1.0)});
  ASSERT_EQ(roots.size(), 2u);
  std::sort(roots.begin(), roots.end(), [](const LCNumber& a, const LCNumber& b) { return compare(a, b) < 0; });
  expect_close(roots[0], -L("rho"));
  expect_close(roots[1], L("rho"));

  roots = poly_roots(std::vector<LCNumber>{-L("rho"), LCNumber(), LCNumber(1.0)});
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& r : roots) {
    EXPECT_EQ(r.valuation(), Valuation(Rational(1, 2)));
    expect_close(r * r, L("rho"));
  }

  roots = poly_roots(std::vector<LCNumber>{LCNumber(1.0), LCNumber(), LCNumber(1.0)});
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& r : roots) {
    EXPECT_EQ(r.terms().size(), 1u);
    EXPECT_NEAR(std::abs(r.leading_coefficient().imag()), 1.0, 1e-14);
    EXPECT_NEAR(r.leading_coefficient().real(), 0.0, 1e-14);
  }
}

TEST(LcRoots, NewtonPolygonSlopes) {
  // (x - rho^-1)(x - 1)(x - rho^2): valuations -1, 0, 2.
  const std::vector<LCNumber> p{-L("rho"), L("rho^-1 + 1 + rho + rho^2"), -L("rho^-1 + 1 + rho^2"), LCNumber(1.0)};
  const auto segs = newton_polygon(p);
  std::vector<Rational> slopes;
  for (const auto& s : segs) {
    for (int k = s.start; k < s.end; ++k) slopes.push_back(-s.slope);
  }
  std::sort(slopes.begin(), slopes.end());
  EXPECT_EQ(slopes, (std::vector<Rational>{Rational(-1), Rational(0), Rational(2)}));
}

TEST(LcValuation, Examples) {
  EXPECT_TRUE(LCNumber().valuation().is_infinite());
  EXPECT_EQ(ultra_norm(LCNumber()), 0.0);
  EXPECT_EQ(L("3*rho^-1 + rho").valuation(), Valuation(Rational(-1)));
  EXPECT_DOUBLE_EQ(ultra_metric(LCNumber(1.0), L("1 + rho")), std::exp(-1.0));
  EXPECT_THROW(LCNumber().valuation().value(), NotFinite);
}

TEST(LcOrder, Examples) {
  EXPECT_EQ(sign(L("rho")), 1);
  EXPECT_EQ(sign(L("-rho^3")), -1);
  EXPECT_GT(compare(L("rho"), L("rho^2")), 0);
  for (double n : {1.0, 10.0, 1e12}) EXPECT_GT(compare(LCNumber(1.0), L("rho").scaled(n)), 0);
  EXPECT_THROW(sign(L("i*rho")), NotReal);
}

TEST(LcClassify, Examples) {
  EXPECT_EQ(classify(L("rho")), Magnitude::infinitesimal);
  EXPECT_EQ(classify(L("rho^(-1/2)")), Magnitude::infinitely_large);
  EXPECT_EQ(classify(L("2 + 5*rho")), Magnitude::finite);
  EXPECT_EQ(standard_part(L("2 + 5*rho")), Coef(2.0));
}

TEST(LcJson, RoundTripIsExactOnExponents) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const LCNumber a = testing::random_number(rng, -3, 3, 4);
    const LCNumber b = from_json(to_json(a));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.truncation_order(), b.truncation_order());
  }
  EXPECT_THROW(from_json("{\"terms\":[[1,0,1,0]],\"trunc\":[12,1]}"), FormatError);
  EXPECT_THROW(from_json("not json"), FormatError);
}

TEST(LcParse, Errors) {
  EXPECT_THROW(parse_lc("1 +"), ParseError);
  EXPECT_THROW(parse_lc("foo(rho)"), ParseError);
  EXPECT_THROW(parse_lc("1/0"), DivisionByZero);
}

// Properties on random numbers.

class LcProperty : public ::testing::Test {
 protected:
  std::mt19937_64 rng{2024};
  LCNumber next() { return testing::random_number(rng, -3, 3); }
  LCNumber next_real() { return testing::random_number(rng, -3, 3, 3, false); }
};

TEST_F(LcProperty, FieldLaws) {
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = next(), b = next(), c = next();
    const double scale = (a.max_magnitude() + 1) * (b.max_magnitude() + 1) * (c.max_magnitude() + 1);
    expect_close((a * b) * c, a * (b * c), 1e-13 * scale);
    expect_close(a * (b + c), a * b + a * c, 1e-13 * scale);
    EXPECT_EQ(a + b, b + a);
  }
}

TEST_F(LcProperty, Valuations) {
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = next(), b = next(), c = next();
    EXPECT_EQ((a * b).valuation(), a.valuation() + b.valuation());
    const LCNumber s = a + b;
    EXPECT_GE(s.valuation(), std::min(a.valuation(), b.valuation()));
    if (a.valuation() != b.valuation()) EXPECT_EQ(s.valuation(), std::min(a.valuation(), b.valuation()));
    EXPECT_LE(ultra_norm(s), std::max(ultra_norm(a), ultra_norm(b)));
    EXPECT_LE(ultra_metric(a, b), std::max(ultra_metric(a, c), ultra_metric(c, b)));
  }
}

TEST_F(LcProperty, OrderCompatibility) {
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = next_real(), b = next_real();
    if (compare(abs(a), abs(b)) < 0) EXPECT_GE(a.valuation(), b.valuation());
    EXPECT_GE(sign(a * a), 0);
  }
}

TEST_F(LcProperty, SqrtResidual) {
  for (int i = 0; i < 500; ++i) {
    const LCNumber a = abs(next_real());
    const LCNumber s = sqrt_nonneg(a);
    const Rational v = a.valuation().value();
    EXPECT_EQ(s.valuation(), Valuation(v / 2));
    const LCNumber r = s * s - a;
    if (!r.is_zero()) EXPECT_GE(r.valuation(), Valuation(T - v)) << to_string(a);
  }
}

TEST_F(LcProperty, InverseResidual) {
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = next();
    const Rational v = a.valuation().value();
    const LCNumber r = a * inverse(a) - LCNumber(1.0);
    if (!r.is_zero()) EXPECT_GE(r.valuation(), Valuation(v <= 0 ? T - 2 * v : T)) << to_string(a);
  }
}

TEST_F(LcProperty, RootsOfPlantedPolynomials) {
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<LCNumber> planted;
    const int degree = 1 + trial % 4;
    for (int k = 0; k < degree; ++k) planted.push_back(testing::random_number(rng, -2, 2, 2));
    std::vector<LCNumber> p{LCNumber(1.0)};
    for (const auto& r : planted) {
      std::vector<LCNumber> q(p.size() + 1);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i + 1] += p[i];
        q[i] -= p[i] * r;
      }
      p = q;
    }
    const auto roots = poly_roots(p);
    ASSERT_EQ(roots.size(), planted.size());
    for (const auto& r : roots) {
      const LCNumber value = evaluate_polynomial(p, r);
      double scale = 0;
      for (const auto& c : p) scale = std::max(scale, c.max_magnitude());
      for (const auto& t : value.terms()) {
        // P(r) vanishes up to rounding in every coefficient below the
        // precision P(r) is known to.
        EXPECT_LT(std::abs(t.coef), 1e-8 * scale * std::pow(r.max_magnitude() + 1, degree));
      }
    }
  }
}

}  // namespace
}  // namespace asymptotica::lc
