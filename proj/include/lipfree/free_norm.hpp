#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipfree/lipschitz.hpp"
#include "lipfree/metric.hpp"

namespace lipfree {

/// Thrown when an LP backing a norm computation reports numerical trouble or
/// an impossible status.
class SolverInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finitely supported element sum_p a_p delta_p of the free space. The
/// basepoint coefficient is identified with 0 (delta_0 = 0) and never stored.
class MomentVector {
 public:
  MomentVector() = default;
  explicit MomentVector(std::size_t n) : coeffs_(n, 0.0) {}
  /// coeffs[0] is discarded.
  explicit MomentVector(std::vector<double> coeffs);
  static MomentVector delta(std::size_t n, PointIndex p);

  std::size_t size() const { return coeffs_.size(); }
  double operator[](PointIndex p) const { return coeffs_[p]; }
  std::span<const double> coeffs() const { return coeffs_; }
  void set(PointIndex p, double value);
  void add(PointIndex p, double value);

  PointSet support() const;
  bool is_zero() const;
  double l1_mass() const;

  MomentVector operator+(const MomentVector& other) const;
  MomentVector operator-(const MomentVector& other) const;
  MomentVector operator*(double t) const;

  bool operator==(const MomentVector&) const = default;

 private:
  std::vector<double> coeffs_;
};

struct Flow {
  PointIndex from;
  PointIndex to;
  double amount;

  bool operator==(const Flow&) const = default;
};

/// Element b of l1(X~)/d, kept as an (unmerged) list of flows; it represents
/// pi(b) = sum b_(p,q) (delta_p - delta_q).
class TransshipmentPlan {
 public:
  TransshipmentPlan() = default;
  explicit TransshipmentPlan(std::size_t n) : n_(n) {}

  std::size_t size() const { return n_; }
  const std::vector<Flow>& flows() const { return flows_; }
  void add(PointIndex from, PointIndex to, double amount);

  /// sum |b| d
  double cost(const PointedMetricSpace& space) const;
  /// outflow - inflow at every point, basepoint included.
  std::vector<double> net_flow() const;
  /// pi(b), with the basepoint coordinate dropped.
  MomentVector moments() const;

  bool operator==(const TransshipmentPlan&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Flow> flows_;
};

struct DualNorm {
  double value;
  LipFunction witness;
};

struct PrimalNorm {
  double value;
  TransshipmentPlan plan;
};

/// sum_p v_p f(p)
double eval(const MomentVector& v, const LipFunction& f);

/// max eval(v, f) over 1-Lipschitz f vanishing on `vanishing` (which must
/// contain the basepoint). The free-space norm takes vanishing = {0}.
DualNorm lipschitz_dual_norm(const PointedMetricSpace& space, const MomentVector& v,
                             const PointSet& vanishing);

/// Norm via the dual LP over Lipschitz functions.
DualNorm free_norm_dual(const PointedMetricSpace& space, const MomentVector& v);

/// Norm via min-cost transshipment over all ordered pairs.
PrimalNorm free_norm_primal(const PointedMetricSpace& space, const MomentVector& v);

}  // namespace lipfree
