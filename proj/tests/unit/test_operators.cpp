#include <gtest/gtest.h>

#include <cmath>

#include "lipfree/lipschitz.hpp"
#include "lipfree/operators.hpp"
#include "test_support.hpp"

namespace lipfree {
namespace {

using testing::three_point;

TEST(Weight, Examples) {
  const auto x = three_point();
  const auto near = PointedMetricSpace::from_normalized({0, 1, 1, 1, 0, 0.375, 1, 0.375, 0}, 3);
  const auto w = weight(near, PointSet(3, {1}), 0.5);  // d(E,q) = 3 theta / 4
  EXPECT_EQ(w.w[1], 1.0);
  EXPECT_EQ(w.w[2], 0.5);
  EXPECT_EQ(w.w[0], 0.0);  // d(E,0) = 1 >= theta
  EXPECT_EQ(weight(x, PointSet(3, {1}), 0.5).w[2], 0.0);
  EXPECT_THROW(weight(x, PointSet(3), 0.5), std::invalid_argument);
  EXPECT_THROW(weight(x, PointSet(3, {1}), 0.0), std::invalid_argument);
}

TEST(Weight, BoundaryValuesAreExact) {
  const auto x = three_point();
  EXPECT_EQ(weight(x, PointSet(3, {1}), 1.0).w[2], 1.0);   // d = theta / 2
  EXPECT_EQ(weight(x, PointSet(3, {1}), 0.5).w[2], 0.0);   // d = theta
  EXPECT_EQ(operator_bound(0.5), 5.0);
}

TEST(ApplyTStar, Examples) {
  const auto x = three_point();
  const LipFunction inside({0, 0.4, 0});
  EXPECT_EQ(apply_T_star(x, inside, PointSet(3, {1}), 0.3), inside);
  const LipFunction outside({0, 0, 0.7});
  EXPECT_EQ(apply_T_star(x, outside, PointSet(3, {1}), 0.5), LipFunction::zero(3));
}

TEST(ApplyT, Examples) {
  const auto x = three_point();
  const MomentVector v({0, 0.3, 0});
  EXPECT_EQ(apply_T(x, v, PointSet(3, {1}), 0.2), v);
  EXPECT_TRUE(apply_T(x, MomentVector::delta(3, 2), PointSet(3, {1}), 0.5).is_zero());
}

TEST(FixedPoint, Examples) {
  const auto x = three_point();
  const MomentVector v({0, 0.3, -1.2});
  EXPECT_TRUE(fixed_point_check(x, v, 0.01));
  EXPECT_TRUE(fixed_point_check(x, MomentVector(3), 0.3));
  // d(p,q) = 0.5 lies in (theta/2, theta) for theta = 0.8: w(p) = 0.75.
  EXPECT_FALSE(fixed_point_check(x, MomentVector::delta(3, 2), PointSet(3, {1}), 0.8));
}

class OperatorProperties : public ::testing::TestWithParam<std::size_t> {};

TEST_P(OperatorProperties, SupportNormAndAdjointness) {
  Rng rng(44, {GetParam()});
  for (const auto& x : testing::random_spaces(6, GetParam())) {
    const std::size_t n = x.size();
    for (int t = 0; t < 6; ++t) {
      PointSet e(n, {rng.index(n)});
      const double theta = rng.uniform(0.05, 1.2);
      const auto prof = weight(x, e, theta);
      EXPECT_LE(lip_constant_on(x, PointSet::all(n), prof.w), 2.0 / theta + 1e-9);
      MomentVector v(n);
      std::vector<double> fv(n, 0.0);
      for (PointIndex p = 1; p < n; ++p) {
        if (rng.bernoulli(0.6)) v.set(p, rng.uniform(-1, 1));
        fv[p] = rng.uniform(-1, 1);
      }
      const LipFunction f(fv);
      const auto tv = apply_T(v, prof);
      const auto sv = v.support();
      EXPECT_TRUE(tv.support().is_subset_of(sv.set_intersection(ball_of_set(x, e, theta))));
      EXPECT_TRUE((v - tv).support().is_subset_of(sv.set_difference(ball_of_set(x, e, theta / 2))));
      EXPECT_LE(free_norm_dual(x, tv).value, operator_bound(theta) * free_norm_dual(x, v).value + 1e-6);
      const auto tf = apply_T_star(f, prof);
      EXPECT_TRUE(tf.support().is_subset_of(f.support().set_intersection(ball_of_set(x, e, theta))));
      EXPECT_LE(lip_norm(x, tf), lip_norm(x, f) + 2.0 / theta * sup_norm(f) + 1e-9);
      EXPECT_NEAR(eval(tv, f), eval(v, tf), 1e-12);
      const auto ttv = apply_T(tv, prof);
      EXPECT_EQ(ttv.support(), tv.support());
      for (PointIndex p = 0; p < n; ++p) EXPECT_NEAR(ttv[p], prof.w[p] * prof.w[p] * v[p], 1e-15);
      const MomentVector u = MomentVector::delta(n, rng.index(n));
      const auto lin = apply_T(u * 2.0 + v * -0.5, prof);
      const auto sep = apply_T(u, prof) * 2.0 + tv * -0.5;
      for (PointIndex p = 0; p < n; ++p) EXPECT_NEAR(lin[p], sep[p], 1e-12);
      EXPECT_TRUE(fixed_point_check(x, v, theta));
      EXPECT_TRUE(fixed_point_check(x, v, sv.set_union(e), theta));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, OperatorProperties, ::testing::Values(1, 4, 8, 12));

}  // namespace
}  // namespace lipfree
