#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "melc/kde.hpp"
#include "oracles.hpp"

using namespace melc;

namespace {

Kde1d random_kde(std::mt19937_64& rng, std::size_t max_centers = 10, double lo_sigma = 0.05,
                 double hi_sigma = 1.0)
{
  std::uniform_int_distribution<std::size_t> n(1, max_centers);
  std::uniform_real_distribution<double> s(lo_sigma, hi_sigma);
  return Kde1d(oracle::uniform_vector(rng, n(rng), -3.0, 3.0), s(rng));
}

} // namespace

TEST(Silverman, HundredUnitStdSamples)
{
  // 50 copies each of -1 and +1: population std exactly 1
  Vector x;
  for (int i = 0; i < 50; ++i) {
    x.push_back(-1.0);
    x.push_back(1.0);
  }
  // (4/300)^(1/5), evaluated independently at 30 digits
  EXPECT_NEAR(silverman_bandwidth(x), 0.421684606342749962, 1e-15);
}

TEST(Silverman, DegenerateInputs)
{
  try {
    silverman_bandwidth(Vector{2.0, 2.0, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "degenerate bandwidth");
  }
  EXPECT_THROW(silverman_bandwidth(Vector{1.0}), Error);
}

TEST(Silverman, ScalesWithData)
{
  std::mt19937_64 rng(1);
  auto x = oracle::uniform_vector(rng, 37, -2.0, 5.0);
  const double base = silverman_bandwidth(x);
  for (double& v : x)
    v *= 3.5;
  EXPECT_NEAR(silverman_bandwidth(x), 3.5 * base, 1e-13);
}

TEST(Kde1d, Evaluate)
{
  const Kde1d f({0.0}, 1.0);
  EXPECT_NEAR(f(0.0), 0.398942280401432678, 1e-16);
  EXPECT_NEAR(f(1.0), 0.241970724519143350, 1e-16);
  const Kde1d two({-1.0, 1.0}, 1.0);
  EXPECT_NEAR(two(0.0), 0.5 * (Kde1d({-1.0}, 1.0)(0.0) + Kde1d({1.0}, 1.0)(0.0)), 1e-16);
  EXPECT_THROW(Kde1d({}, 1.0), Error);
  EXPECT_THROW(Kde1d({0.0}, 0.0), Error);
}

TEST(Kde1d, NormalizedByQuadrature)
{
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_kde(rng);
    const double pad = 10.0 * f.bandwidth();
    const double mass = oracle::trapezoid([&](double x) { return f(x); }, f.min_center() - pad,
                                          f.max_center() + pad, 20000);
    EXPECT_NEAR(mass, 1.0, 1e-8);
  }
}

TEST(Kde1d, GridMatchesPointwise)
{
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_kde(rng, 30, 0.001, 2.0);
    const double lo = f.min_center() - 4.0, step = (f.max_center() - f.min_center() + 8.0) / 999.0;
    const auto g = f.evaluate_grid(lo, step, 1000);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double exact = oracle::mixture_pdf(f.centers(), f.bandwidth(), lo + step * static_cast<double>(k));
      EXPECT_NEAR(g[k], exact, 1e-12 * exact + 1e-290) << "trial " << trial << " k " << k;
    }
  }
}

TEST(CrossIntegral, ClosedFormExamples)
{
  const Kde1d a({0.0}, 1.0), b({1.0}, 1.0);
  EXPECT_NEAR(cross_integral(a, a), 0.282094791773878143, 1e-16);
  EXPECT_NEAR(cross_integral(a, b), 0.219695644733861199, 1e-16);
  EXPECT_NEAR(self_integral(a), 0.282094791773878143, 1e-16);
}

TEST(CrossIntegral, MatchesQuadratureOracle)
{
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_kde(rng);
    const auto g = random_kde(rng);
    const double pad = 8.0 * std::max(f.bandwidth(), g.bandwidth());
    const double lo = std::min(f.min_center(), g.min_center()) - pad;
    const double hi = std::max(f.max_center(), g.max_center()) + pad;
    auto prod = [&](double x) {
      return oracle::mixture_pdf(f.centers(), f.bandwidth(), x) * oracle::mixture_pdf(g.centers(), g.bandwidth(), x);
    };
    const double quad = oracle::trapezoid_doubling(prod, lo, hi, 1e-11);
    EXPECT_NEAR(cross_integral(f, g), quad, 1e-6 * quad) << trial;

    auto sq = [&](double x) { return std::pow(oracle::mixture_pdf(f.centers(), f.bandwidth(), x), 2); };
    const double fpad = 8.0 * f.bandwidth();
    const double sq_quad = oracle::trapezoid_doubling(sq, f.min_center() - fpad, f.max_center() + fpad, 1e-11);
    EXPECT_NEAR(self_integral(f), sq_quad, 1e-6 * sq_quad) << trial;
  }
}

TEST(CrossIntegral, SymmetricExactlyPositiveAndCauchySchwarz)
{
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = random_kde(rng, 12, 0.01, 2.0);
    const auto g = random_kde(rng, 12, 0.01, 2.0);
    const double fg = cross_integral(f, g);
    EXPECT_EQ(fg, cross_integral(g, f));
    EXPECT_GT(fg, 0.0);
    EXPECT_LE(fg * fg, self_integral(f) * self_integral(g) * (1.0 + 1e-12));
  }
}

TEST(CrossIntegral, LogDomainSurvivesUnderflow)
{
  const Kde1d a({0.0}, 0.01), b({100.0}, 0.01);
  // exp(-100^2 / (4 * 1e-4)) underflows; the log form does not
  const double expected = -1e4 / (2.0 * 2e-4) - 0.5 * std::log(2.0 * std::numbers::pi * 2e-4);
  EXPECT_NEAR(log_cross_integral(a, b), expected, 1e-9 * std::abs(expected));
  EXPECT_EQ(cross_integral(a, b), 0.0);
}

TEST(CrossIntegral, FastMatchesExact)
{
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<std::size_t> n(1, 400);
  std::uniform_real_distribution<double> s(0.002, 3.0), spread(0.1, 20.0), shift(-30.0, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double w = spread(rng);
    auto c1 = oracle::uniform_vector(rng, n(rng), -w, w);
    auto c2 = oracle::uniform_vector(rng, n(rng), -w, w);
    if (trial % 4 == 0)
      for (double& x : c2)
        x += shift(rng);
    const Kde1d f(c1, s(rng)), g(c2, s(rng));
    const double exact = log_cross_integral(f, g, SumMethod::exact);
    const double fast = log_cross_integral(f, g, SumMethod::fast);
    EXPECT_NEAR(fast, exact, 1e-11 * std::max(1.0, std::abs(exact))) << trial;
    EXPECT_NEAR(log_self_integral(f, SumMethod::fast), log_self_integral(f), 1e-11) << trial;
  }
}

TEST(SelfIntegral, ShrinksWithBandwidth)
{
  const Vector c{-0.3, 0.1, 2.0};
  double prev = self_integral(Kde1d(c, 0.05));
  for (double s : {0.1, 0.2, 0.5, 1.0, 3.0}) {
    const double cur = self_integral(Kde1d(c, s));
    EXPECT_LT(cur, prev);
    prev = cur;
  }
  EXPECT_NEAR(self_integral(Kde1d({4.0}, 1.0)), 1.0 / (2.0 * std::sqrt(std::numbers::pi)), 1e-16);
}

TEST(RescaleKde, IdentityAndWorkedExample)
{
  const Kde1d f({-1.0, 3.0}, 0.5);
  const auto same = rescale_kde(f, AffineMap1d::identity());
  EXPECT_EQ(same.centers(), f.centers());
  EXPECT_EQ(same.bandwidth(), f.bandwidth());

  const AffineMap1d m(1.0 / 7.0, 2.5 / 7.0);
  const auto r = rescale_kde(f, m);
  EXPECT_NEAR(r.centers()[0], 3.0 / 14.0, 1e-15);
  EXPECT_NEAR(r.bandwidth(), 0.5 / 7.0, 1e-15);
}

TEST(RescaleKde, ChangeOfVariables)
{
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> sc(0.01, 10.0), off(-5.0, 5.0), x(-4.0, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_kde(rng);
    const auto g = random_kde(rng);
    const AffineMap1d m(sc(rng), off(rng));
    const auto fr = rescale_kde(f, m), gr = rescale_kde(g, m);
    const double xi = x(rng);
    EXPECT_NEAR(fr(m.apply(xi)), f(xi) / m.scale, 1e-12 * (f(xi) / m.scale) + 1e-300);
    const double expected = cross_integral(f, g) / m.scale;
    EXPECT_NEAR(cross_integral(fr, gr), expected, 1e-12 * expected);
  }
}
