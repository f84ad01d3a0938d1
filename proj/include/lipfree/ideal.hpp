#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "lipfree/free_norm.hpp"
#include "lipfree/metric.hpp"

namespace lipfree {

/// Carrier A of the ideal <A> of all subsets of A. On a finite space every
/// ideal of closed sets has this form. The basepoint is never kept in the
/// carrier: admissible functions vanish there anyway, and d(0,p) = 1 equals
/// the radius cap, so dropping it changes no radius of another point.
class IdealCarrier {
 public:
  IdealCarrier() = default;
  explicit IdealCarrier(PointSet carrier);

  const PointSet& points() const { return carrier_; }
  std::size_t universe() const { return carrier_.universe(); }
  bool contains(PointIndex p) const { return carrier_.contains(p); }

  /// Points whose functions are forced to vanish: the basepoint plus X \ A.
  PointSet vanishing_set() const;

  bool operator==(const IdealCarrier&) const = default;

 private:
  PointSet carrier_;
};

/// sup{r <= 1 : B_r(p) subset of A}: 0 off A, else min(1, d(p, X \ A)).
double rad(const PointedMetricSpace& space, const IdealCarrier& ideal, PointIndex p);

/// rad for every point, computed once per (space, carrier).
std::vector<double> rad_table(const PointedMetricSpace& space, const IdealCarrier& ideal);

/// Norm of v against 1-Lipschitz functions supported inside the carrier.
DualNorm ideal_norm(const PointedMetricSpace& space, const IdealCarrier& ideal,
                    const MomentVector& v);

/// Element of l1_I(X): per-point coefficients with weighted norm
/// sum |a_p| rad(p). Canonical form zeroes coefficients where rad vanishes.
class AtomVector {
 public:
  AtomVector() = default;
  explicit AtomVector(std::size_t n) : a_(n, 0.0) {}
  /// Stores `a` and zeroes every coordinate with rad == 0.
  AtomVector(std::vector<double> a, std::span<const double> rad);

  std::size_t size() const { return a_.size(); }
  double operator[](PointIndex p) const { return a_[p]; }
  std::span<const double> coeffs() const { return a_; }
  void set(PointIndex p, double value) { a_.at(p) = value; }

  PointSet support() const;
  double weighted_cost(std::span<const double> rad) const;

  bool operator==(const AtomVector&) const = default;

 private:
  std::vector<double> a_;
};

/// Q_I(a) = sum a_p delta_p.
MomentVector q_map(const PointedMetricSpace& space, const IdealCarrier& ideal,
                   const AtomVector& a);

class BallNotInCarrier : public std::invalid_argument {
 public:
  BallNotInCarrier(const std::string& what, PointIndex witness)
      : std::invalid_argument(what), witness_(witness) {}
  PointIndex witness() const { return witness_; }

 private:
  PointIndex witness_;
};

/// min over q in B_r(p) of rad(q). Requires 0 <= r < r_outer and
/// B_{r_outer}(p) inside the carrier, in which case the result is at least
/// r_outer - r. Throws BallNotInCarrier naming a point of the outer ball
/// outside the carrier.
double radiinf_margin(const PointedMetricSpace& space, const IdealCarrier& ideal, PointIndex p,
                      double r, double r_outer);

}  // namespace lipfree
