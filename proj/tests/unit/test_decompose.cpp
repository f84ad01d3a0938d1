#include <gtest/gtest.h>

#include <cmath>

#include "lipfree/decompose.hpp"
#include "test_support.hpp"

namespace lipfree {
namespace {

using testing::three_point;

const IdealCarrier kAll3(PointSet::all(3));

TEST(OptimalLift, Examples) {
  const auto x = three_point();
  const IdealCarrier a(PointSet(3, {1}));
  const auto lift = optimal_lift(x, a, MomentVector::delta(3, 1));
  EXPECT_NEAR(lift.cost, 0.5, 1e-12);
  EXPECT_LE(reconstruction_error(a, lift, MomentVector::delta(3, 1)), 1e-12);

  EXPECT_EQ(optimal_lift(x, a, MomentVector(3)).cost, 0.0);

  const MomentVector pq = MomentVector::delta(3, 1) - MomentVector::delta(3, 2);
  const auto pure = optimal_lift(x, kAll3, pq);
  EXPECT_NEAR(pure.cost, 0.5, 1e-12);
  EXPECT_TRUE(pure.atoms.support().empty());
}

TEST(ClosePairs, FarPairBecomesAtoms) {
  const auto x = three_point();
  const MomentVector pq = MomentVector::delta(3, 1) - MomentVector::delta(3, 2);
  const auto cp = close_pairs_decompose(x, kAll3, pq, 0.4);  // rho = 0.4 < d = 0.5
  EXPECT_TRUE(cp.plan.flows().empty());
  EXPECT_NEAR(cp.atoms[1], 1.0, 1e-12);
  EXPECT_NEAR(cp.atoms[2], -1.0, 1e-12);
  EXPECT_NEAR(cp.cost, 2.0, 1e-12);
  EXPECT_LE(cp.cost, 3.0 / 0.4 * 0.5);
  ASSERT_EQ(cp.far_pairs.size(), 1u);
  EXPECT_TRUE(cp.far_pairs[0].ok);
}

TEST(ClosePairs, CloseFlowsStay) {
  const auto x = three_point();
  const MomentVector pq = MomentVector::delta(3, 1) - MomentVector::delta(3, 2);
  const auto cp = close_pairs_decompose(x, kAll3, pq, 0.9);
  EXPECT_EQ(cp.cost, cp.lift_cost);
  EXPECT_TRUE(cp.far_pairs.empty());
  const auto zero = close_pairs_decompose(x, kAll3, MomentVector(3), 0.5);
  EXPECT_EQ(zero.cost, 0.0);
  EXPECT_TRUE(zero.plan.flows().empty());
}

TEST(ClosePairs, Errors) {
  const auto x = three_point();
  try {
    close_pairs_decompose(x, kAll3, MomentVector::delta(3, 1) * 2.0, 0.5);
    FAIL() << "expected NormTooLarge";
  } catch (const NormTooLarge& e) {
    EXPECT_NEAR(e.norm(), 2.0, 1e-12);
  }
  EXPECT_THROW(close_pairs_decompose(x, kAll3, MomentVector(3), 1.0), std::invalid_argument);
  EXPECT_THROW(close_pairs_decompose(x, kAll3, MomentVector(3), 0.0), std::invalid_argument);
}

TEST(FarPairInequality, Examples) {
  const auto x = three_point();
  EXPECT_TRUE(far_pair_inequality(x, IdealCarrier(PointSet(3)), 1, 2, 0.5));
  EXPECT_TRUE(far_pair_inequality(x, kAll3, 1, 2, 0.9));  // d <= rho: vacuous
  EXPECT_TRUE(far_pair_inequality(x, kAll3, 1, 2, 0.4));
  EXPECT_THROW(far_pair_inequality(x, kAll3, 1, 1, 0.4), std::invalid_argument);
}

TEST(Rebalance, Examples) {
  const auto x = three_point();
  const auto rad = rad_table(x, kAll3);
  const TransshipmentPlan empty(3);

  const AtomVector same({0, 1, 0.5}, rad);
  const auto r1 = separated_rebalance(x, kAll3, empty, same);
  EXPECT_TRUE(r1.steps.empty());
  EXPECT_EQ(r1.atoms, same);

  const AtomVector mixed({0, 1, -0.4}, rad);
  const auto r2 = separated_rebalance(x, kAll3, empty, mixed);
  ASSERT_EQ(r2.steps.size(), 1u);
  EXPECT_EQ(r2.steps[0].positive, 1u);
  EXPECT_EQ(r2.steps[0].negative, 2u);
  EXPECT_EQ(r2.steps[0].amount, 0.4);
  EXPECT_EQ(r2.atoms[2], 0.0);
  EXPECT_NEAR(r2.atoms[1], 0.6, 1e-15);
  EXPECT_NEAR(r2.steps[0].cost_before, 1.4, 1e-15);
  EXPECT_NEAR(r2.steps[0].cost_after, 0.6 + 0.4 * 0.5, 1e-15);
  EXPECT_TRUE(same_reconstruction_exact(kAll3, empty, mixed, r2.plan, r2.atoms));

  const auto r3 = separated_rebalance(x, kAll3, empty, AtomVector(3));
  EXPECT_TRUE(r3.steps.empty());
}

TEST(MassBound, Examples) {
  const auto x = three_point();
  const IdealCarrier a(PointSet(3, {1}));
  const auto rad = rad_table(x, a);
  const auto zero = mass_bound_check(x, a, AtomVector(3), 1, 0.2);
  EXPECT_EQ(zero.mass, 0.0);
  const AtomVector single({0, 1 - 1e-6, 0}, rad);
  const auto mb = mass_bound_check(x, a, single, 1, 0.0);
  EXPECT_EQ(mb.theta, 0.5);
  EXPECT_EQ(mb.bound, 8.0);
  EXPECT_LE(mb.mass, mb.bound);
  EXPECT_THROW(mass_bound_check(x, a, single, 1, 0.5), BallNotInCarrier);
}

class DecomposeProperties : public ::testing::TestWithParam<std::size_t> {};

TEST_P(DecomposeProperties, PipelineCertificates) {
  Rng rng(55, {GetParam()});
  for (const auto& x : testing::random_spaces(4, GetParam())) {
    const std::size_t n = x.size();
    for (int t = 0; t < 3; ++t) {
      PointSet s(n);
      for (PointIndex p = 1; p < n; ++p) {
        if (t == 0 || rng.bernoulli(0.6)) s.insert(p);
      }
      if (s.empty()) continue;
      const IdealCarrier a(s);
      const auto rad = rad_table(x, a);
      MomentVector v(n);
      for (PointIndex p = 1; p < n; ++p) v.set(p, rng.uniform(-1, 1));
      const double norm = ideal_norm(x, a, v).value;
      const auto lift = optimal_lift(x, a, v);
      EXPECT_NEAR(lift.cost, norm, 1e-6);
      const AtomVector trivial(std::vector<double>(v.coeffs().begin(), v.coeffs().end()), rad);
      EXPECT_GE(trivial.weighted_cost(rad), norm - 1e-6);
      if (norm <= 1e-9) continue;
      const MomentVector u = v * ((1 - 1e-6) / norm);
      for (double c : {0.5, 0.9, 0.99}) {
        const auto cp = close_pairs_decompose(x, a, u, c);
        for (const auto& f : cp.plan.flows()) {
          EXPECT_LE(x.distance(f.from, f.to), close_radius(rad, f.from, f.to, c));
        }
        EXPECT_LE(cp.cost, 3.0 / c + 1e-6);
        for (PointIndex p = 0; p < n; ++p) {
          for (PointIndex q = p + 1; q < n; ++q) EXPECT_TRUE(far_pair_inequality(x, a, p, q, c));
        }
        const auto rb = separated_rebalance(x, a, cp.plan, cp.atoms);
        EXPECT_LE(rb.steps.size(), cp.atoms.support().size());
        EXPECT_TRUE(same_reconstruction_exact(a, cp.plan, cp.atoms, rb.plan, rb.atoms));
        for (const auto& st : rb.steps) EXPECT_LE(st.cost_after, st.cost_before + 1e-9);
        EXPECT_FALSE(find_separation_violation(x, rad, rb.atoms).found);
        const QuotientDecomposition end{rb.plan, rb.atoms, 0.0};
        EXPECT_LE(reconstruction_error(a, end, u), 1e-9);
      }
      const auto lift_u = optimal_lift(x, a, u);
      const auto sep = separated_rebalance(x, a, lift_u.plan, lift_u.atoms);
      ASSERT_LT(decomposition_cost(x, rad, sep.plan, sep.atoms), 1.0);
      for (PointIndex p : s.members()) {
        const double r = rad[p] * rng.uniform(0, 0.9);
        const auto mb = mass_bound_check(x, a, sep.atoms, p, r);
        EXPECT_LE(mb.mass, mb.bound + 1e-6);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, DecomposeProperties, ::testing::Values(1, 4, 8, 12));

}  // namespace
}  // namespace lipfree
