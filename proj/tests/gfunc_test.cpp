#include "asymptotica/bump.hpp"
#include "asymptotica/errors.hpp"
#include "asymptotica/pairing.hpp"
#include "asymptotica/sweep.hpp"
#include "support.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>

namespace asymptotica::gfunc {
namespace {

using asymptotica::testing::tau_bump;
using asymptotica::testing::tau_bump_prime;
using pairing::default_tau;

double pair_re(const GenFunction& g, const Rational& eps, int n = 3) {
  return pairing::pairing(g, default_tau(), eps, n).real();
}

TEST(Nets, DeltaIsTheMollifier) {
  const Rational eps(1, 8);
  for (double x : {-0.1, 0.0, 0.05, 0.12, 0.2}) {
    EXPECT_NEAR(pairing::net_value(delta(), eps, 0, x), bump0(x * 8) * 8, 1e-13) << x;
  }
}

TEST(Nets, HeavisideIsTheIntegratedMollifier) {
  const Rational eps(1, 4);
  for (double x : {-0.3, -0.1, 0.0, 0.1, 0.3}) {
    EXPECT_NEAR(pairing::net_value(heaviside(), eps, 0, x), bump0_antiderivative(x * 4), 1e-13) << x;
  }
}

TEST(Structure, HeavisideDerivativeIsDelta) {
  EXPECT_TRUE(structurally_equal(derive(heaviside()), delta()));
  EXPECT_TRUE(structurally_equal(derive(heaviside(Rational(1, 3))), delta(Rational(1, 3))));
  EXPECT_TRUE(structurally_equal(derive(delta()), delta(Rational(0), 1)));
}

TEST(Structure, ChainRuleForPowers) {
  for (int n = 2; n <= 4; ++n) {
    const GenFunction lhs = derive(pow(heaviside(), n));
    const GenFunction rhs = Rational(n) * (pow(heaviside(), n - 1) * delta());
    EXPECT_TRUE(structurally_equal(lhs, rhs)) << n;
  }
}

TEST(Structure, LeibnizRule) {
  const GenFunction f = embed_smooth(sym::parse("sin(x)"));
  const GenFunction g = heaviside();
  EXPECT_TRUE(structurally_equal(derive(f * g), derive(f) * g + f * derive(g)));
}

TEST(Structure, AdditiveInverse) {
  for (const char* s : {"H^2 * delta", "smooth(exp(x)) + ddelta(1/2)", "kernel(abs(x)) * H"}) {
    const GenFunction f = parse(s);
    EXPECT_TRUE((f + (-f)).is_zero()) << s;
    EXPECT_TRUE((f - f).is_zero()) << s;
  }
}

TEST(Structure, ParsedMatchesBuilt) {
  EXPECT_TRUE(structurally_equal(parse("derive(H^3)"), parse("3 * H^2 * delta")));
  EXPECT_TRUE(structurally_equal(parse("scale(2, H) - H"), heaviside()));
}

TEST(Cutoff, ValuesInsideAndOutside) {
  const Interval box{-1, 1};
  const Rational eps(1, 16);
  EXPECT_NEAR(pairing::cutoff_value(box, eps, 2, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(pairing::cutoff_value(box, eps, 2, 0.5), 1.0, 1e-12);
  EXPECT_NEAR(pairing::cutoff_value(box, eps, 2, 1.5), 0.0, 1e-12);
  EXPECT_NEAR(pairing::cutoff_value(box, eps, 2, -3.0), 0.0, 1e-12);
  for (double x : {-1.0, 0.99, 1.0, 1.01}) {
    const double v = pairing::cutoff_value(box, eps, 0, x);
    EXPECT_GE(v, 0.0) << x;
    EXPECT_LE(v, 1.0) << x;
  }
}

TEST(Pairing, DeltaTendsToTauAtZero) {
  const double err = std::abs(pair_re(delta(), Rational(1, 256)) - tau_bump(0));
  EXPECT_LT(err, 1e-8);
  EXPECT_NEAR(*pairing::limit(delta(), default_tau()), tau_bump(0), 1e-15);
}

TEST(Pairing, DeltaDerivativeLimit) {
  EXPECT_NEAR(*pairing::limit(delta(Rational(0), 1), default_tau()), -tau_bump_prime(0), 1e-13);
  EXPECT_NEAR(pair_re(delta(Rational(0), 1), Rational(1, 256)), -tau_bump_prime(0), 1e-7);
}

TEST(Pairing, HeavisideDeltaHalf) {
  const GenFunction hd = heaviside() * delta();
  EXPECT_NEAR(*pairing::limit(hd, default_tau()), tau_bump(0) / 2, 1e-15);
  EXPECT_NEAR(pair_re(hd, Rational(1, 1024)), tau_bump(0) / 2, 5e-3);
}

TEST(Pairing, SmoothEmbeddingMatchesIntegral) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double oracle = ts.integrate([](double x) { return std::sin(x) * tau_bump(x); }, -0.8, 1.2);
  const GenFunction s = embed_smooth(sym::parse("sin(x)"));
  EXPECT_NEAR(*pairing::limit(s, default_tau()), oracle, 1e-12);
  EXPECT_NEAR(pair_re(s, Rational(1, 64)), oracle, 1e-9);
}

TEST(Pairing, ComposeWithIdentity) {
  const Diffeo id = make_diffeo(sym::parse("x"));
  const GenFunction h = heaviside();
  const Rational eps(1, 32);
  EXPECT_NEAR(pair_re(compose_diffeo(h, id), eps), pair_re(h, eps), 1e-12);
}

TEST(Pairing, PullbackOfDeltaByDilation) {
  const GenFunction t = pullback(delta(), make_diffeo(sym::parse("2*x")));
  EXPECT_NEAR(*pairing::limit(t, default_tau()), tau_bump(0) / 2, 1e-14);
}

TEST(Pairing, NetSupOfDeltaGrows) {
  const double a = pairing::net_sup(delta(), -1, 1, 0, Rational(1, 8), 2);
  const double b = pairing::net_sup(delta(), -1, 1, 0, Rational(1, 64), 2);
  EXPECT_NEAR(b / a, 8.0, 1e-6);
}

TEST(Sweep, ZeroDifferenceIsNegligible) {
  const GenFunction diff = derive(heaviside()) - delta();
  EXPECT_TRUE(diff.is_zero());
  sweep::VerdictOptions opts{3, sweep::dyadic_scales(5, 12), sweep::Precision::standard, 4};
  const auto v = sweep::weak_equal(derive(heaviside()), delta(), pairing::tau_catalog(), opts);
  EXPECT_EQ(v.verdict, sweep::Verdict::holds);
}

TEST(Sweep, HeavisideSquaredIsAssociatedButNotEqual) {
  const GenFunction h2 = pow(heaviside(), 2);
  const auto assoc = sweep::associated(h2, heaviside(), pairing::tau_catalog());
  EXPECT_EQ(assoc.verdict, sweep::Verdict::holds);
  sweep::VerdictOptions opts{3, sweep::dyadic_scales(5, 12), sweep::Precision::standard, 4};
  const auto eq = sweep::weak_equal(h2, heaviside(), pairing::tau_catalog(), opts);
  EXPECT_EQ(eq.verdict, sweep::Verdict::fails);
  for (const auto& t : eq.per_tau) EXPECT_NEAR(t.slope, 1.0, 0.05) << t.tau;
}

TEST(Sweep, SlopeOfDeltaError) {
  sweep::SweepOptions so;
  so.n = 2;
  so.scales = sweep::dyadic_scales(2, 9);
  so.fit_last = 0;
  const auto s = sweep::run(delta(), default_tau(), so);
  ASSERT_TRUE(s.fit.has_value());
  EXPECT_GE(sweep::estimate_valuation(s), 2.9);
}

TEST(Sweep, RejectsNarrowScaleRange) {
  sweep::SweepOptions so;
  so.scales = sweep::dyadic_scales(3, 5);
  EXPECT_THROW(sweep::run(delta(), default_tau(), so), IllConditionedFit);
  so.scales = {Rational(1, 8), Rational(1, 9), Rational(1, 10), Rational(1, 11)};
  EXPECT_THROW(sweep::run(delta(), default_tau(), so), IllConditionedFit);
}

TEST(Errors, NonMonotoneDiffeo) {
  EXPECT_THROW(make_diffeo(sym::parse("x^2"), {-1, 1}), DomainMismatch);
  EXPECT_NO_THROW(make_diffeo(sym::parse("x^2"), {0.5, 2}));
}

TEST(Errors, Parse) {
  EXPECT_THROW(parse("H +"), ParseError);
  EXPECT_THROW(parse("pow(H, -1)"), DomainMismatch);
  EXPECT_THROW(parse("nosuch(x)"), ParseError);
  EXPECT_THROW(pairing::parse_tau("bump(x)@1:0"), ParseError);
}

}  // namespace
}  // namespace asymptotica::gfunc
