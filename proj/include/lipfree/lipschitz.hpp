#pragma once

#include <span>
#include <vector>

#include "lipfree/metric.hpp"

namespace lipfree {

/// Real function on the points of a finite pointed space, vanishing at the
/// basepoint.
class LipFunction {
 public:
  LipFunction() = default;
  /// Throws std::invalid_argument unless values[0] == 0.
  explicit LipFunction(std::vector<double> values);
  /// Zero function on n points.
  static LipFunction zero(std::size_t n) { return LipFunction(std::vector<double>(n, 0.0)); }
  /// Subtracts values[0] from every entry.
  static LipFunction shifted(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](PointIndex p) const { return values_[p]; }
  std::span<const double> values() const { return values_; }

  /// Points where the function is nonzero.
  PointSet support() const;

  bool operator==(const LipFunction&) const = default;

 private:
  std::vector<double> values_;
};

/// max over unordered pairs of |f(p) - f(q)| / d(p,q).
double lip_norm(const PointedMetricSpace& space, const LipFunction& f);

/// Lipschitz constant of `values` restricted to the pairs inside `set`.
double lip_constant_on(const PointedMetricSpace& space, const PointSet& set,
                       std::span<const double> values);

/// max |f(p)|.
double sup_norm(const LipFunction& f);

/// Extends `partial` (read only on `set`, which must contain the basepoint
/// with partial[0] == 0) by f(x) = min_{s in set} (partial[s] + L d(s,x)),
/// L being the Lipschitz constant of `partial` on `set`.
LipFunction mcshane_extend(const PointedMetricSpace& space, const PointSet& set,
                           std::span<const double> partial);

/// f(x) = max(0, h - d(p,x)); requires 0 <= h <= 1.
LipFunction tent_bump(const PointedMetricSpace& space, PointIndex p, double h);

/// max(g_minus, min(g_plus, f)); requires g_minus <= 0 <= g_plus pointwise.
LipFunction truncate_between(const LipFunction& g_minus, const LipFunction& f,
                             const LipFunction& g_plus);

LipFunction pointwise_product(const LipFunction& f, const LipFunction& g);
LipFunction pointwise_max(const LipFunction& f, const LipFunction& g);
LipFunction pointwise_min(const LipFunction& f, const LipFunction& g);

struct GluePiece {
  PointSet set;
  std::vector<double> values;  // indexed by point; only entries in `set` are read
};

struct GlueResult {
  LipFunction function;
  double bound;          // max(1, 4 / theta)
  double computed_norm;  // lip_norm(function), recomputed by pair scan
};

/// Glues functions living on pairwise (theta/2)-separated sets. The glued
/// function equals each piece on its set and 0 at the basepoint; it is
/// extended to the remaining points by McShane, so the norm bound proven on
/// the union carries over to the whole space.
///
/// Throws SeparationError when two pieces are closer than theta/2 and
/// std::invalid_argument when a piece exceeds unit Lipschitz or sup norm.
GlueResult glue_separated(const PointedMetricSpace& space, std::span<const GluePiece> pieces,
                          double theta);

class SeparationError : public std::invalid_argument {
 public:
  SeparationError(const std::string& what, PointIndex p, PointIndex q)
      : std::invalid_argument(what), p_(p), q_(q) {}
  PointIndex first() const { return p_; }
  PointIndex second() const { return q_; }

 private:
  PointIndex p_;
  PointIndex q_;
};

}  // namespace lipfree
