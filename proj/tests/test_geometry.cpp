#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "melc/geometry.hpp"

using namespace melc;

TEST(LabeledDataset, RejectsBadInput)
{
  EXPECT_THROW(LabeledDataset({}, {}), Error);
  EXPECT_THROW(LabeledDataset({{1.0}}, {1, -1}), Error);
  EXPECT_THROW(LabeledDataset({{1.0}, {1.0, 2.0}}, {1, -1}), Error);
  EXPECT_THROW(LabeledDataset({{1.0}}, {0}), Error);
  LabeledDataset one({{1.0}}, {1});
  EXPECT_THROW(one.require_both_classes(), Error);
}

TEST(UnitDirection, NormIsChecked)
{
  EXPECT_THROW(UnitDirection({1.0, 1.0}), Error);
  EXPECT_NO_THROW(UnitDirection({0.6, 0.8}));
  const auto v = UnitDirection::normalized({3.0, 4.0});
  EXPECT_DOUBLE_EQ(v[0], 0.6);
  EXPECT_THROW(UnitDirection::normalized({0.0, 0.0}), Error);
}

TEST(Project, AxisProjection)
{
  LabeledDataset d({{1.0, 0.0}, {0.0, 1.0}}, {-1, 1});
  const auto p = project(d, UnitDirection({1.0, 0.0}));
  ASSERT_EQ(p.minus.size(), 1u);
  ASSERT_EQ(p.plus.size(), 1u);
  EXPECT_EQ(p.minus[0], 1.0);
  EXPECT_EQ(p.plus[0], 0.0);
}

TEST(Project, OwnDirectionGivesNorm)
{
  LabeledDataset d({{3.0, 4.0}}, {1});
  const auto p = project(d, UnitDirection({0.6, 0.8}));
  EXPECT_TRUE(p.minus.empty());
  ASSERT_EQ(p.plus.size(), 1u);
  EXPECT_NEAR(p.plus[0], 5.0, 1e-15);
}

TEST(Project, NegatedDirectionNegatesAndKeepsOrder)
{
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  std::vector<Vector> pts;
  std::vector<int> ys;
  for (int i = 0; i < 50; ++i) {
    pts.push_back({z(rng), z(rng)});
    ys.push_back(i % 3 == 0 ? 1 : -1);
  }
  LabeledDataset d(pts, ys);
  const UnitDirection v({0.0, 1.0});
  const auto a = project(d, v);
  const auto b = project(d, v.negated());
  ASSERT_EQ(a.minus.size(), b.minus.size());
  for (std::size_t i = 0; i < a.minus.size(); ++i)
    EXPECT_EQ(a.minus[i], -b.minus[i]);
  for (std::size_t i = 0; i < a.plus.size(); ++i)
    EXPECT_EQ(a.plus[i], -b.plus[i]);
  // order within a class follows the input order
  std::size_t k = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.label(i) > 0)
      EXPECT_EQ(a.plus[k++], d.point(i)[1]);
}

TEST(Project, Linearity)
{
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x{z(rng), z(rng), z(rng)};
    const double alpha = 10.0 * z(rng);
    const auto v = UnitDirection::normalized({z(rng), z(rng), z(rng)});
    LabeledDataset a({x}, {1});
    LabeledDataset b({{alpha * x[0], alpha * x[1], alpha * x[2]}}, {1});
    EXPECT_NEAR(project(b, v).plus[0], alpha * project(a, v).plus[0], 1e-12 * (1 + std::abs(alpha)));
  }
}

TEST(Project, DimensionMismatch)
{
  LabeledDataset d({{1.0, 2.0}}, {1});
  try {
    project(d, UnitDirection({1.0, 0.0, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "dimension mismatch");
  }
}

TEST(UnitRescale, WorkedExample)
{
  // interval [-2.5, 4.5] -> [0, 1]
  const Vector minus{-1.0}, plus{3.0};
  const auto r = unit_rescale(minus, plus, 0.5, 0.2, 3.0);
  EXPECT_NEAR(r.map.scale, 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(r.map.offset, 2.5 / 7.0, 1e-15);
  EXPECT_NEAR(r.minus[0], 3.0 / 14.0, 1e-15);
  EXPECT_NEAR(r.plus[0], 11.0 / 14.0, 1e-15);
}

TEST(UnitRescale, IdentityWhenAlreadyUnit)
{
  const Vector minus{0.0}, plus{1.0};
  const auto r = unit_rescale(minus, plus, 0.0, 0.0, 3.0);
  EXPECT_EQ(r.map.scale, 1.0);
  EXPECT_EQ(r.map.offset, 0.0);
  EXPECT_EQ(r.minus[0], 0.0);
  EXPECT_EQ(r.plus[0], 1.0);
}

TEST(UnitRescale, DegenerateSupport)
{
  const Vector minus{2.0}, plus{2.0};
  try {
    unit_rescale(minus, plus, 0.0, 0.0, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "degenerate support");
  }
}

TEST(UnitRescale, PropertyInUnitIntervalAndInvertible)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::uniform_real_distribution<double> s(0.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    Vector minus(1 + trial % 7), plus(trial % 5);
    for (double& x : minus)
      x = u(rng);
    for (double& x : plus)
      x = u(rng);
    const auto r = unit_rescale(minus, plus, s(rng), s(rng), 1.0 + trial % 5);
    for (const auto* side : {&r.minus, &r.plus})
      for (double x : *side) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
      }
    for (std::size_t i = 0; i < minus.size(); ++i)
      EXPECT_NEAR(r.map.inverse(r.minus[i]), minus[i], 1e-10);
    for (std::size_t i = 0; i < plus.size(); ++i)
      EXPECT_NEAR(r.map.inverse(r.plus[i]), plus[i], 1e-10);
  }
}

TEST(CosineAlignment, Examples)
{
  const UnitDirection a({1.0, 0.0}), b({0.0, 1.0});
  EXPECT_DOUBLE_EQ(cosine_alignment(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine_alignment(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_alignment(a, a.negated()), 1.0);
  EXPECT_THROW(cosine_alignment(a, UnitDirection({1.0, 0.0, 0.0})), Error);
}

TEST(CosineAlignment, SymmetricAndSignInvariant)
{
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = UnitDirection::normalized({z(rng), z(rng), z(rng)});
    const auto b = UnitDirection::normalized({z(rng), z(rng), z(rng)});
    const double c = cosine_alignment(a, b);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    EXPECT_EQ(c, cosine_alignment(b, a));
    EXPECT_EQ(c, cosine_alignment(a.negated(), b));
    EXPECT_EQ(c, cosine_alignment(a, b.negated()));
  }
}
