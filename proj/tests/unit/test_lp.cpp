#include <gtest/gtest.h>

#include "lipfree/lp.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/random_instance.hpp"

namespace lipfree::lp {
namespace {

TEST(Simplex, BoundedSingleVariable) {
  LinearProgram p;
  p.objective = {1.0};
  p.add({1.0}, Relation::kLessEqual, 1.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_DOUBLE_EQ(s.objective, 1.0);
  EXPECT_FALSE(s.unstable);
}

TEST(Simplex, Unbounded) {
  LinearProgram p;
  p.objective = {1.0};
  EXPECT_EQ(solve(p).status, Status::kUnbounded);
}

TEST(Simplex, Infeasible) {
  LinearProgram p;
  p.objective = {1.0};
  p.add({1.0}, Relation::kLessEqual, -1.0);
  EXPECT_EQ(solve(p).status, Status::kInfeasible);
}

TEST(Simplex, MixedRelationsAndBounds) {
  // max x + 2y  s.t. x + y = 3, x - y >= -1, -2 <= x <= 5, y free, y <= 10
  LinearProgram p;
  p.objective = {1.0, 2.0};
  p.bounds = {{-2.0, 5.0}, {-kInfinity, 10.0}};
  p.add({1.0, 1.0}, Relation::kEqual, 3.0);
  p.add({1.0, -1.0}, Relation::kGreaterEqual, -1.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.x[0], 1.0, 1e-12);
  EXPECT_NEAR(s.x[1], 2.0, 1e-12);
  EXPECT_NEAR(s.objective, 5.0, 1e-12);
}

TEST(Simplex, RedundantEqualities) {
  LinearProgram p;
  p.objective = {-1.0, -1.0};
  p.add({1.0, 1.0}, Relation::kEqual, 2.0);
  p.add({2.0, 2.0}, Relation::kEqual, 4.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, -2.0, 1e-12);
  EXPECT_LE(max_violation(p, s.x), kFeasibilityTolerance);
}

TEST(Simplex, RandomFeasibilityBySubstitutionAndDeterminism) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 2 + rng.index(6);
    const std::size_t m = 1 + rng.index(8);
    LinearProgram p;
    p.objective.resize(k);
    for (double& c : p.objective) c = rng.uniform(-1, 1);
    std::vector<double> x0(k);
    for (std::size_t j = 0; j < k; ++j) {
      p.bounds.push_back({-rng.uniform(0, 2), rng.uniform(0.5, 3)});
      x0[j] = rng.uniform(p.bounds[j].lo, p.bounds[j].hi);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> row(k);
      double at = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        row[j] = rng.uniform(-1, 1);
        at += row[j] * x0[j];
      }
      const int kind = static_cast<int>(rng.index(3));
      if (kind == 0) p.add(row, Relation::kEqual, at);
      if (kind == 1) p.add(row, Relation::kLessEqual, at + rng.uniform(0, 1));
      if (kind == 2) p.add(row, Relation::kGreaterEqual, at - rng.uniform(0, 1));
    }
    const Solution s = solve(p);
    ASSERT_EQ(s.status, Status::kOptimal) << "trial " << t;
    EXPECT_FALSE(s.unstable);
    EXPECT_LE(max_violation(p, s.x), kFeasibilityTolerance);
    double obj = 0.0;
    for (std::size_t j = 0; j < k; ++j) obj += p.objective[j] * s.x[j];
    EXPECT_NEAR(obj, s.objective, kFeasibilityTolerance);
    // The known feasible point can never beat the optimum.
    double at0 = 0.0;
    for (std::size_t j = 0; j < k; ++j) at0 += p.objective[j] * x0[j];
    EXPECT_LE(at0, s.objective + 1e-9);

    const Solution again = solve(p);
    EXPECT_EQ(again.x, s.x);
    EXPECT_EQ(again.objective, s.objective);
  }
}

TEST(Simplex, MaxViolationMeasuresRowsAndBounds) {
  LinearProgram p;
  p.objective = {1.0};
  p.add({1.0}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(max_violation(p, {0.5}), 0.0);
  EXPECT_DOUBLE_EQ(max_violation(p, {1.5}), 0.5);
  EXPECT_DOUBLE_EQ(max_violation(p, {-0.25}), 0.25);
}

}  // namespace
}  // namespace lipfree::lp
