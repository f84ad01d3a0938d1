#include "lipfree/operators.hpp"

#include "lipfree/kernels.hpp"

namespace lipfree {

WeightProfile weight(const PointedMetricSpace& space, const PointSet& set, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (set.universe() != space.size()) throw std::invalid_argument("point set universe mismatch");
  if (set.empty()) throw std::invalid_argument("weight profile needs a nonempty set");
  WeightProfile profile{std::vector<double>(space.size()), set, theta};
  const auto dist = dist_to_set_all(space, set);
  kernels::ramp_weight(profile.w, dist, theta);
  return profile;
}

LipFunction apply_T_star(const LipFunction& f, const WeightProfile& profile) {
  if (f.size() != profile.w.size()) throw std::invalid_argument("function size mismatch");
  std::vector<double> out(f.size());
  for (PointIndex x = 0; x < f.size(); ++x) out[x] = f[x] * profile.w[x];
  return LipFunction(std::move(out));
}

LipFunction apply_T_star(const PointedMetricSpace& space, const LipFunction& f,
                         const PointSet& set, double theta) {
  return apply_T_star(f, weight(space, set, theta));
}

MomentVector apply_T(const MomentVector& v, const WeightProfile& profile) {
  if (v.size() != profile.w.size()) throw std::invalid_argument("moment vector size mismatch");
  std::vector<double> out(v.size());
  for (PointIndex p = 0; p < v.size(); ++p) out[p] = v[p] * profile.w[p];
  return MomentVector(std::move(out));
}

MomentVector apply_T(const PointedMetricSpace& space, const MomentVector& v, const PointSet& set,
                     double theta) {
  return apply_T(v, weight(space, set, theta));
}

bool fixed_point_check(const PointedMetricSpace& space, const MomentVector& v,
                       const PointSet& set, double theta) {
  if (v.is_zero()) return true;
  return apply_T(space, v, set, theta) == v;
}

bool fixed_point_check(const PointedMetricSpace& space, const MomentVector& v, double theta) {
  return fixed_point_check(space, v, v.support(), theta);
}

}  // namespace lipfree
