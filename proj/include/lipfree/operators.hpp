#pragma once

#include <vector>

#include "lipfree/free_norm.hpp"
#include "lipfree/lipschitz.hpp"
#include "lipfree/metric.hpp"

namespace lipfree {

/// Multiplier w(x) = max(0, min(1, 2 - 2 d(E,x) / theta)): 1 on E, 0 from
/// distance theta on, Lipschitz with constant 2 / theta.
struct WeightProfile {
  std::vector<double> w;
  PointSet set;
  double theta = 0.0;
};

/// Throws std::invalid_argument for an empty set or theta <= 0.
WeightProfile weight(const PointedMetricSpace& space, const PointSet& set, double theta);

/// Operator-norm constant 1 + 2/theta, from ||fw|| <= ||f|| ||w||_inf + ||f||_inf ||w||.
inline double operator_bound(double theta) { return 1.0 + 2.0 / theta; }

/// (T* f)(x) = f(x) w(x).
LipFunction apply_T_star(const LipFunction& f, const WeightProfile& profile);
LipFunction apply_T_star(const PointedMetricSpace& space, const LipFunction& f,
                         const PointSet& set, double theta);

/// Predual of T*: v_p -> w(p) v_p.
MomentVector apply_T(const MomentVector& v, const WeightProfile& profile);
MomentVector apply_T(const PointedMetricSpace& space, const MomentVector& v, const PointSet& set,
                     double theta);

/// Whether apply_T(v, set, theta) == v coefficient-wise (exact comparison).
bool fixed_point_check(const PointedMetricSpace& space, const MomentVector& v,
                       const PointSet& set, double theta);
/// Same with set = supp v; always true.
bool fixed_point_check(const PointedMetricSpace& space, const MomentVector& v, double theta);

}  // namespace lipfree
