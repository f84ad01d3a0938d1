#include "lipfree/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lipfree/kernels.hpp"

namespace lipfree {

IdealCarrier::IdealCarrier(PointSet carrier) : carrier_(std::move(carrier)) {
  carrier_.erase(kBasepoint);
}

PointSet IdealCarrier::vanishing_set() const {
  PointSet out = PointSet::all(carrier_.universe()).set_difference(carrier_);
  out.insert(kBasepoint);
  return out;
}

double rad(const PointedMetricSpace& space, const IdealCarrier& ideal, PointIndex p) {
  if (ideal.universe() != space.size()) throw std::invalid_argument("carrier universe mismatch");
  if (!ideal.contains(p)) return 0.0;
  const PointSet outside = ideal.vanishing_set();
  return std::min(1.0, kernels::masked_min(space.row(p), outside.mask()));
}

std::vector<double> rad_table(const PointedMetricSpace& space, const IdealCarrier& ideal) {
  if (ideal.universe() != space.size()) throw std::invalid_argument("carrier universe mismatch");
  const PointSet outside = ideal.vanishing_set();
  std::vector<double> out(space.size(), 0.0);
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (ideal.contains(p)) out[p] = std::min(1.0, kernels::masked_min(space.row(p), outside.mask()));
  }
  return out;
}

DualNorm ideal_norm(const PointedMetricSpace& space, const IdealCarrier& ideal,
                    const MomentVector& v) {
  if (ideal.universe() != space.size()) throw std::invalid_argument("carrier universe mismatch");
  return lipschitz_dual_norm(space, v, ideal.vanishing_set());
}

AtomVector::AtomVector(std::vector<double> a, std::span<const double> rad) : a_(std::move(a)) {
  if (rad.size() != a_.size()) throw std::invalid_argument("atom vector / rad table mismatch");
  for (PointIndex p = 0; p < a_.size(); ++p) {
    if (rad[p] == 0.0) a_[p] = 0.0;
  }
}

PointSet AtomVector::support() const {
  PointSet out(a_.size());
  for (PointIndex p = 0; p < a_.size(); ++p) {
    if (a_[p] != 0.0) out.insert(p);
  }
  return out;
}

double AtomVector::weighted_cost(std::span<const double> rad) const {
  double s = 0.0;
  for (PointIndex p = 0; p < a_.size(); ++p) s += std::fabs(a_[p]) * rad[p];
  return s;
}

MomentVector q_map(const PointedMetricSpace& space, const IdealCarrier& ideal,
                   const AtomVector& a) {
  const auto table = rad_table(space, ideal);
  const AtomVector canonical(std::vector<double>(a.coeffs().begin(), a.coeffs().end()), table);
  return MomentVector(std::vector<double>(canonical.coeffs().begin(), canonical.coeffs().end()));
}

double radiinf_margin(const PointedMetricSpace& space, const IdealCarrier& ideal, PointIndex p,
                      double r, double r_outer) {
  if (!(r >= 0.0 && r < r_outer)) {
    throw std::invalid_argument("radiinf margin needs 0 <= r < r_outer");
  }
  const PointSet outer = ball(space, p, r_outer);
  for (PointIndex x : outer.members()) {
    if (!ideal.contains(x)) {
      std::ostringstream os;
      os << "ball of radius " << r_outer << " around " << p << " leaves the carrier at point " << x;
      throw BallNotInCarrier(os.str(), x);
    }
  }
  const auto table = rad_table(space, ideal);
  double margin = kInfinity;
  for (PointIndex q : ball(space, p, r).members()) margin = std::min(margin, table[q]);
  return margin;
}

}  // namespace lipfree
