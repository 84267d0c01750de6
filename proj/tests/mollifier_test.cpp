#include "asymptotica/bump.hpp"
#include "asymptotica/certify.hpp"
#include "asymptotica/errors.hpp"
#include "asymptotica/mollifier_io.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace asymptotica::mollifier {
namespace {

double normalization_oracle() {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([](double x) { return std::exp(-1.0 / (1.0 - x * x)); }, -1.0, 1.0);
}

const CertEntry& entry(const CertReport& r, const std::string& name) {
  for (const auto& e : r.entries) {
    if (e.condition == name) return e;
  }
  throw std::runtime_error("no entry " + name);
}

TEST(BaseBump, UnitMass) { EXPECT_NEAR(moment(base_bump(), {}), 1.0, 1e-10); }

TEST(BaseBump, PointValues) {
  const auto phi = base_bump();
  const double c = normalization_oracle();
  EXPECT_NEAR(bump_normalization(), c, 1e-14);
  EXPECT_EQ(eval(phi, {1.0}), 0.0);
  EXPECT_EQ(eval(phi, {-1.0}), 0.0);
  EXPECT_NEAR(eval(phi, {0.0}), std::exp(-1.0) / c, 1e-14);
  EXPECT_NEAR(eval(phi, {0.5}), std::exp(-1.0 / 0.75) / c, 1e-14);
  EXPECT_NEAR(eval(phi, {0.0}, {1}), 0.0, 1e-15);
  EXPECT_EQ(eval(phi, {1.5}), 0.0);
}

TEST(BaseBump, DerivativesMatchFiniteDifferences) {
  for (double x : {-0.7, -0.2, 0.3, 0.8}) {
    for (int k = 0; k < 4; ++k) {
      const double h = 1e-5;
      const double fd = (bump0_derivative(x + h, k) - bump0_derivative(x - h, k)) / (2 * h);
      EXPECT_NEAR(bump0_derivative(x, k + 1), fd, 1e-6 * (1 + std::abs(fd))) << x << " " << k;
    }
  }
}

TEST(BaseBump, Antiderivative) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double c = normalization_oracle();
  for (double x : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
    const double oracle = ts.integrate([](double t) { return std::exp(-1.0 / (1.0 - t * t)); }, -1.0, x) / c;
    EXPECT_NEAR(bump0_antiderivative(x), oracle, 1e-14);
  }
  EXPECT_EQ(bump0_antiderivative(-1.0), 0.0);
  EXPECT_EQ(bump0_antiderivative(2.0), 1.0);
}

TEST(MomentKiller, CoefficientsForN1M3) {
  const auto phi = moment_killer(1, Rational(3));
  ASSERT_EQ(phi.flat.size(), 1u);
  const auto& axis = phi.flat[0].axes[0];
  ASSERT_EQ(axis.size(), 2u);
  Rational mass = 0;
  for (const auto& t : axis) {
    if (t.s == 1) EXPECT_EQ(t.c * phi.flat[0].coef, Rational(-1, 2));
    if (t.s == 3) EXPECT_EQ(t.c * phi.flat[0].coef, Rational(9, 2));
    mass += phi.flat[0].coef * t.c / t.s;
  }
  EXPECT_EQ(mass, 1);  // a + b/m
  EXPECT_NEAR(moment(phi, {}), 1.0, 1e-10);
}

TEST(MomentKiller, SecondMomentForN2M3) {
  const Rational a(-1, 8), b(27, 8), m(3);
  EXPECT_EQ(a + b / (m * m * m), 0);
  const auto phi = moment_killer(2, m);
  EXPECT_NEAR(moment(phi, {2}), 0.0, 1e-12);
  EXPECT_NEAR(moment(phi, {}), 1.0, 1e-10);
}

TEST(MomentKiller, RejectsSmallDilation) {
  EXPECT_THROW(moment_killer(2, Rational(2)), BadDilation);
  EXPECT_THROW(moment_killer(1, Rational(1, 2)), BadDilation);
}

TEST(MomentKiller, RecursionKillsMoments) {
  for (int n = 1; n <= 4; ++n) {
    const auto phi = moment_killer(n, Rational(9 * n));
    EXPECT_NEAR(moment(phi, {}), 1.0, 1e-10);
    for (int k = 1; k <= n; ++k) EXPECT_LT(std::abs(moment(phi, {k})), 1e-8) << n << " " << k;
  }
}

TEST(MomentKiller, DerivativeBoundChain) {
  for (int n = 1; n <= 3; ++n) {
    const double m = 9.0 * n;
    const auto phi = moment_killer(n, Rational(9 * n));
    for (int k = 0; k <= 3; ++k) {
      const double bound = std::log(bump_derivative_sup(k)) + n * std::log(2 * std::pow(m, k + 1));
      EXPECT_LE(log_derivative_sup(phi, {k}), bound) << n << " " << k;
    }
  }
}

TEST(Tensorize, IdentityInOneDimension) {
  const auto phi = moment_killer(2, Rational(5));
  const auto psi = tensorize(phi, 1);
  for (double x : {-0.3, 0.0, 0.11}) EXPECT_EQ(eval(psi, {x}), eval(phi, {x}));
}

TEST(Tensorize, TwoDimensions) {
  const auto psi = tensorize(moment_killer(1, Rational(9)), 2);
  EXPECT_EQ(psi.dim, 2);
  EXPECT_NEAR(moment(psi, {}), 1.0, 2e-10);
  EXPECT_NEAR(moment(psi, {1, 0}), 0.0, 1e-10);
  EXPECT_NEAR(eval(psi, {0.1, -0.05}), eval(moment_killer(1, Rational(9)), {0.1}) * eval(moment_killer(1, Rational(9)), {-0.05}), 1e-12);
}

TEST(ScaleToLevel, RadiusMassAndL1) {
  const auto phi2 = level_mollifier(2, 1);
  EXPECT_LE(phi2.radius, 0.5);
  EXPECT_NEAR(support_radius(*phi2.expr), phi2.radius, 1e-15 * phi2.radius);
  EXPECT_NEAR(moment(phi2, {}), 1.0, 1e-10);
  const auto phi3 = level_mollifier(3, 1);
  EXPECT_LE(l1_norm(phi3), 1.0 + 1.0 / 3);
  EXPECT_THROW(level_mollifier(5, 2), LevelTooDeep);
}

TEST(Certify, LevelMollifiersPass) {
  for (int n = 1; n <= 4; ++n) {
    const auto rep = certify(level_mollifier(n, 1), n);
    EXPECT_TRUE(rep.passed()) << n;
    EXPECT_EQ(rep.entries.size(), 7u);
  }
}

TEST(Certify, Nesting) {
  const auto phi = level_mollifier(3, 1);
  for (int k = 1; k < 3; ++k) EXPECT_TRUE(certify(phi, k).passed()) << k;
}

TEST(Certify, BaseBumpAtLevelOne) {
  // Everything holds except the derivative bound: sup |phi0'| is about 1.8
  // while R^-(2(1+1)) = 1.
  const auto rep = certify(base_bump(), 1);
  for (const auto& e : rep.entries) {
    if (e.condition == "derivatives") {
      EXPECT_FALSE(e.passed);
      EXPECT_NEAR(std::exp(e.measured), 1.80, 0.01);
    } else {
      EXPECT_TRUE(e.passed) << e.condition;
    }
  }
}

TEST(Certify, BaseBumpFailsSecondMoment) {
  const auto rep = certify(base_bump(), 2);
  EXPECT_FALSE(entry(rep, "moments").passed);
  EXPECT_GT(moment(base_bump(), {2}), 0.0);
}

TEST(Certify, MomentsUnchangedByScaling) {
  const auto a = at_scale(2, 1, Rational(1, 10));
  const auto b = at_scale(2, 1, Rational(1, 1000));
  EXPECT_TRUE(entry(certify(a, 2), "moments").passed);
  EXPECT_TRUE(entry(certify(b, 2), "moments").passed);
  EXPECT_NEAR(moment(a, {}), moment(b, {}), 1e-12);
}

TEST(MollifierJson, RoundTripEvaluatesIdentically) {
  for (auto [n, d] : {std::pair{1, 1}, std::pair{3, 1}, std::pair{2, 2}}) {
    const auto phi = level_mollifier(n, d);
    const auto back = from_json(to_json(phi));
    EXPECT_EQ(back.dim, phi.dim);
    EXPECT_EQ(back.level, phi.level);
    for (double f : {0.0, 0.13, -0.41, 0.77}) {
      std::vector<double> x(d, f * phi.radius);
      EXPECT_EQ(eval(back, x), eval(phi, x));
    }
  }
  EXPECT_THROW(from_json("{\"dim\":1}"), FormatError);
}

TEST(MollifierJson, SampleCsv) {
  std::ostringstream out;
  write_samples_csv(out, level_mollifier(1, 1), 5);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x1,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

}  // namespace
}  // namespace asymptotica::mollifier
