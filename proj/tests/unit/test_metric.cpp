#include <gtest/gtest.h>

#include "lipfree/metric.hpp"
#include "test_support.hpp"

namespace lipfree {
namespace {

using testing::three_point;

TEST(Normalize, SinglePointGetsBasepoint) {
  const auto x = normalize_and_adjoin_basepoint({{0.0}});
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x.distance(0, 1), 1.0);
  EXPECT_EQ(x.distance(1, 1), 0.0);
}

TEST(Normalize, ScalesByDiameter) {
  const auto x = normalize_and_adjoin_basepoint({{0, 2}, {2, 0}});
  ASSERT_EQ(x.size(), 3u);
  EXPECT_EQ(x.distance(1, 2), 1.0);
  EXPECT_EQ(x.distance(0, 1), 1.0);
  EXPECT_EQ(x.distance(0, 2), 1.0);
}

TEST(Normalize, TriangleViolationReportsWitness) {
  try {
    normalize_and_adjoin_basepoint({{0, 1, 1}, {1, 0, 3}, {1, 3, 0}});
    FAIL() << "expected MetricError";
  } catch (const MetricError& e) {
    EXPECT_EQ(e.witness(), (std::array<PointIndex, 3>{0, 1, 2}));
  }
}

TEST(Normalize, RejectsDegenerateInput) {
  EXPECT_THROW(normalize_and_adjoin_basepoint({{0, 0}, {0, 0}}), MetricError);
  EXPECT_THROW(normalize_and_adjoin_basepoint({{0, 1}, {2, 0}}), MetricError);
  EXPECT_THROW(normalize_and_adjoin_basepoint({{0, -1}, {-1, 0}}), MetricError);
  EXPECT_THROW(normalize_and_adjoin_basepoint({{1, 1}, {1, 0}}), MetricError);
  EXPECT_THROW(normalize_and_adjoin_basepoint({}), std::invalid_argument);
  EXPECT_THROW(normalize_and_adjoin_basepoint({{0, 1}}), std::invalid_argument);
}

TEST(FromNormalized, EnforcesConventions) {
  EXPECT_NO_THROW(three_point());
  // d(0,p) != 1
  EXPECT_THROW(PointedMetricSpace::from_normalized({0, 0.5, 0.5, 0}, 2), MetricError);
}

TEST(DistanceMatrix, EuclideanAndSup) {
  const std::vector<std::vector<double>> pts = {{0, 0}, {3, 4}};
  EXPECT_EQ(distance_matrix(pts, PointMetric::kEuclidean)[0][1], 5.0);
  EXPECT_EQ(distance_matrix(pts, PointMetric::kLInf)[0][1], 4.0);
}

TEST(Ball, Examples) {
  const auto x = three_point();
  EXPECT_EQ(ball(x, 1, 0.0), PointSet(3, {1}));
  EXPECT_EQ(ball(x, 1, 1.0), PointSet::all(3));
  EXPECT_EQ(ball(x, 1, 0.5), PointSet(3, {1, 2}));
}

TEST(BallOfSet, Examples) {
  const auto x = three_point();
  EXPECT_TRUE(ball_of_set(x, PointSet(3), 0.7).empty());
  EXPECT_EQ(ball_of_set(x, PointSet(3, {2}), 0.5), ball(x, 2, 0.5));
  EXPECT_EQ(ball_of_set(x, PointSet::all(3), 0.0), PointSet::all(3));
}

TEST(DistToSet, Examples) {
  const auto x = three_point();
  EXPECT_EQ(dist_to_set(x, PointSet(3, {1, 2}), 2), 0.0);
  EXPECT_EQ(dist_to_set(x, PointSet(3), 1), kInfinity);
  EXPECT_EQ(dist_to_set(x, PointSet(3, {2}), 1), 0.5);
}

TEST(PointSetOps, Basics) {
  PointSet a(5, {1, 3});
  const PointSet b(5, {3, 4});
  EXPECT_EQ(a.set_union(b), PointSet(5, {1, 3, 4}));
  EXPECT_EQ(a.set_intersection(b), PointSet(5, {3}));
  EXPECT_EQ(a.set_difference(b), PointSet(5, {1}));
  EXPECT_TRUE(PointSet(5, {3}).is_subset_of(a));
  EXPECT_THROW(a.insert(5), std::out_of_range);
  a.erase(1);
  EXPECT_EQ(a.members(), std::vector<PointIndex>{3});
}

class MetricProperties : public ::testing::TestWithParam<std::size_t> {};

TEST_P(MetricProperties, BallMonotoneNestingAndSetDistance) {
  Rng rng(5, {GetParam()});
  for (const auto& x : testing::random_spaces(6, GetParam())) {
    const std::size_t n = x.size();
    for (PointIndex p = 0; p < n; ++p) EXPECT_EQ(x.distance(0, p), p == 0 ? 0.0 : 1.0);
    for (int t = 0; t < 20; ++t) {
      const PointIndex p = rng.index(n);
      const double r = rng.uniform();
      const double r2 = rng.uniform(r, 1.0);
      EXPECT_TRUE(ball(x, p, r).is_subset_of(ball(x, p, r2)));
      const double s = rng.uniform(0.0, 0.5);
      for (PointIndex q : ball(x, p, r).members()) {
        EXPECT_TRUE(ball(x, q, s).is_subset_of(ball(x, p, r + s)));
      }
      PointSet e(n, {rng.index(n)});
      e.insert(rng.index(n));
      const PointSet grown = ball_of_set(x, e, r);
      for (PointIndex y = 0; y < n; ++y) EXPECT_EQ(grown.contains(y), dist_to_set(x, e, y) <= r);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, MetricProperties, ::testing::Values(1, 4, 8, 12));

}  // namespace
}  // namespace lipfree
