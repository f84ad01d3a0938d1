#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipfree {

using PointIndex = std::size_t;

inline constexpr PointIndex kBasepoint = 0;

// Tolerance used when validating metric axioms after normalization.
inline constexpr double kMetricTolerance = 1e-12;
// Tolerance used for every downstream numerical comparison.
inline constexpr double kEpsilon = 1e-9;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Thrown when a distance matrix fails a metric axiom. `witness` holds the
/// sorted point indices involved (unused slots are equal to the first one).
class MetricError : public std::invalid_argument {
 public:
  MetricError(const std::string& what, std::array<PointIndex, 3> witness)
      : std::invalid_argument(what), witness_(witness) {}

  const std::array<PointIndex, 3>& witness() const { return witness_; }

 private:
  std::array<PointIndex, 3> witness_;
};

/// Subset of the points {0, ..., n-1} of a fixed finite space.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : mask_(universe, 0) {}
  PointSet(std::size_t universe, std::initializer_list<PointIndex> members);
  PointSet(std::size_t universe, std::span<const PointIndex> members);

  static PointSet all(std::size_t universe);

  std::size_t universe() const { return mask_.size(); }
  bool contains(PointIndex p) const { return p < mask_.size() && mask_[p] != 0; }
  void insert(PointIndex p);
  void erase(PointIndex p);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<PointIndex> members() const;

  /// 0/1 byte mask of length universe(), consumed by the vector kernels.
  std::span<const unsigned char> mask() const { return mask_; }

  bool is_subset_of(const PointSet& other) const;
  PointSet set_union(const PointSet& other) const;
  PointSet set_intersection(const PointSet& other) const;
  PointSet set_difference(const PointSet& other) const;

  bool operator==(const PointSet&) const = default;

 private:
  std::vector<unsigned char> mask_;
};

/// Finite metric space with basepoint 0, normalized so that the diameter is
/// 1 and every point sits at distance exactly 1 from the basepoint.
class PointedMetricSpace {
 public:
  /// Validates an already-normalized row-major n x n matrix.
  static PointedMetricSpace from_normalized(std::vector<double> dist, std::size_t n);

  std::size_t size() const { return n_; }
  double distance(PointIndex p, PointIndex q) const { return dist_[p * n_ + q]; }
  std::span<const double> row(PointIndex p) const {
    return std::span<const double>(dist_).subspan(p * n_, n_);
  }
  const std::vector<double>& matrix() const { return dist_; }
  std::vector<std::vector<double>> matrix_rows() const;

  bool operator==(const PointedMetricSpace&) const = default;

 private:
  PointedMetricSpace(std::vector<double> dist, std::size_t n)
      : n_(n), dist_(std::move(dist)) {}

  std::size_t n_ = 0;
  std::vector<double> dist_;
};

/// Scales `raw` to diameter 1 and adjoins a fresh basepoint (index 0) at
/// distance 1 from every point; raw point i becomes index i + 1.
PointedMetricSpace normalize_and_adjoin_basepoint(const std::vector<std::vector<double>>& raw);

enum class PointMetric { kEuclidean, kLInf };

/// Distance matrix of a point cloud; every point must have the same dimension.
std::vector<std::vector<double>> distance_matrix(const std::vector<std::vector<double>>& points,
                                                 PointMetric metric);

/// Closed ball {x : d(x,p) <= r}.
PointSet ball(const PointedMetricSpace& space, PointIndex p, double r);

/// Union of the closed balls of radius r around the members of `set`.
PointSet ball_of_set(const PointedMetricSpace& space, const PointSet& set, double r);

/// min over e in `set` of d(x, e); +infinity when `set` is empty.
double dist_to_set(const PointedMetricSpace& space, const PointSet& set, PointIndex x);

/// d(E, x) for every x at once.
std::vector<double> dist_to_set_all(const PointedMetricSpace& space, const PointSet& set);

}  // namespace lipfree
