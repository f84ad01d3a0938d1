#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipfree/free_norm.hpp"
#include "lipfree/ideal.hpp"
#include "lipfree/metric.hpp"

namespace lipfree {

/// v = R_I(pi(plan)) + Q_I(atoms) as functionals on Lipschitz functions
/// supported in the carrier, i.e. coordinate-wise on the carrier.
struct QuotientDecomposition {
  TransshipmentPlan plan;
  AtomVector atoms;
  double cost = 0.0;  // plan cost + weighted atom cost
};

/// plan.cost + atoms.weighted_cost
double decomposition_cost(const PointedMetricSpace& space, std::span<const double> rad,
                          const TransshipmentPlan& plan, const AtomVector& atoms);

/// net flow + atoms at every point of the carrier (0 elsewhere).
std::vector<double> reconstruction(const IdealCarrier& ideal, const TransshipmentPlan& plan,
                                   const AtomVector& atoms);

/// Largest |reconstruction(p) - v_p| over the carrier.
double reconstruction_error(const IdealCarrier& ideal, const QuotientDecomposition& d,
                            const MomentVector& v);

/// Exact rational comparison of two reconstructions on the carrier.
bool same_reconstruction_exact(const IdealCarrier& ideal, const TransshipmentPlan& plan_a,
                               const AtomVector& atoms_a, const TransshipmentPlan& plan_b,
                               const AtomVector& atoms_b);

/// Cheapest decomposition of v, found by LP over all ordered-pair flows and
/// carrier atoms. Its cost equals ideal_norm(v).
QuotientDecomposition optimal_lift(const PointedMetricSpace& space, const IdealCarrier& ideal,
                                   const MomentVector& v);

/// Raised when an input must have restricted norm below 1.
class NormTooLarge : public std::invalid_argument {
 public:
  NormTooLarge(const std::string& what, double norm) : std::invalid_argument(what), norm_(norm) {}
  double norm() const { return norm_; }

 private:
  double norm_;
};

struct InequalityRecord {
  std::string name;
  double lhs;
  double rhs;
  bool ok;
};

struct FarPair {
  PointIndex p;
  PointIndex q;
  double rad_sum;       // rad(p) + rad(q)
  double scaled_dist;   // 3 d(p,q) / c
  bool ok;
};

struct ClosePairDecomposition {
  TransshipmentPlan plan;  // only pairs with d(p,q) <= c min(rad p, rad q)
  AtomVector atoms;
  double c = 0.0;
  double cost = 0.0;
  double lift_cost = 0.0;
  std::vector<FarPair> far_pairs;  // one per flow moved into the atom part
};

/// c * min(rad p, rad q)
inline double close_radius(std::span<const double> rad, PointIndex p, PointIndex q, double c) {
  return c * std::min(rad[p], rad[q]);
}

/// Requires c in (0,1) and ideal_norm(u) < 1 (NormTooLarge otherwise). Takes
/// the optimal lift and moves every flow between far points into the atom
/// part; the result costs at most 3/c.
ClosePairDecomposition close_pairs_decompose(const PointedMetricSpace& space,
                                             const IdealCarrier& ideal, const MomentVector& u,
                                             double c);

/// rad(p) + rad(q) <= 3 d(p,q) / c whenever d(p,q) > c min(rad p, rad q).
bool far_pair_inequality(const PointedMetricSpace& space, const IdealCarrier& ideal, PointIndex p,
                         PointIndex q, double c);

struct RebalanceStep {
  PointIndex positive;
  PointIndex negative;
  double amount;
  double cost_before;
  double cost_after;
};

struct RebalanceResult {
  TransshipmentPlan plan;
  AtomVector atoms;
  std::vector<RebalanceStep> steps;
  std::size_t initial_support = 0;
};

/// Opposite-sign atoms p, q with d(p,q) < (rad p + rad q)/2; (0,0) when none.
struct SeparationViolation {
  bool found = false;
  PointIndex p = 0;
  PointIndex q = 0;
};
SeparationViolation find_separation_violation(const PointedMetricSpace& space,
                                              std::span<const double> rad,
                                              const AtomVector& atoms);

/// Cancels opposite-sign atoms that sit closer than the mean of their radii,
/// moving the cancelled mass into the plan. Each step zeroes the smaller
/// atom, so the loop ends after at most |supp a| steps. Pair order: largest
/// atom magnitude first, ties by lexicographic (p, q).
RebalanceResult separated_rebalance(const PointedMetricSpace& space, const IdealCarrier& ideal,
                                    const TransshipmentPlan& plan, const AtomVector& atoms);

struct MassBound {
  double bound;  // 4 / theta
  double mass;   // sum over B_r(p) of |a_q|
  double theta;  // min over B_r(p) of rad
};

/// Throws BallNotInCarrier when B_r(p) leaves the carrier (theta = 0).
MassBound mass_bound_check(const PointedMetricSpace& space, const IdealCarrier& ideal,
                           const AtomVector& atoms, PointIndex p, double r);

}  // namespace lipfree
