#include "lipfree/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lipfree/kernels.hpp"

namespace lipfree {
namespace {

std::array<PointIndex, 3> sorted_triple(PointIndex a, PointIndex b, PointIndex c) {
  std::array<PointIndex, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

std::string describe(const char* axiom, PointIndex i, PointIndex j) {
  std::ostringstream os;
  os << axiom << " violated at (" << i << ", " << j << ")";
  return os.str();
}

// Checks every metric axiom on a row-major n x n matrix.
void validate_metric(const std::vector<double>& d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d[i * n + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw MetricError(describe("finite nonnegative distance", i, j), sorted_triple(i, j, j));
      }
      if (i == j && v != 0.0) {
        throw MetricError(describe("zero diagonal", i, i), sorted_triple(i, i, i));
      }
      if (i != j && v <= 0.0) {
        throw MetricError(describe("positive distance between distinct points", i, j),
                          sorted_triple(i, j, j));
      }
      if (std::fabs(v - d[j * n + i]) > kMetricTolerance) {
        throw MetricError(describe("symmetry", i, j), sorted_triple(i, j, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i * n + k] > d[i * n + j] + d[j * n + k] + kMetricTolerance) {
          std::ostringstream os;
          os << "triangle inequality violated: d(" << i << "," << k << ") > d(" << i << "," << j
             << ") + d(" << j << "," << k << ")";
          throw MetricError(os.str(), sorted_triple(i, j, k));
        }
      }
    }
  }
}

}  // namespace

PointSet::PointSet(std::size_t universe, std::initializer_list<PointIndex> members)
    : mask_(universe, 0) {
  for (PointIndex p : members) insert(p);
}

PointSet::PointSet(std::size_t universe, std::span<const PointIndex> members)
    : mask_(universe, 0) {
  for (PointIndex p : members) insert(p);
}

PointSet PointSet::all(std::size_t universe) {
  PointSet s(universe);
  std::fill(s.mask_.begin(), s.mask_.end(), 1);
  return s;
}

void PointSet::insert(PointIndex p) {
  if (p >= mask_.size()) throw std::out_of_range("point index out of range");
  mask_[p] = 1;
}

void PointSet::erase(PointIndex p) {
  if (p < mask_.size()) mask_[p] = 0;
}

std::size_t PointSet::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

std::vector<PointIndex> PointSet::members() const {
  std::vector<PointIndex> out;
  for (PointIndex p = 0; p < mask_.size(); ++p) {
    if (mask_[p] != 0) out.push_back(p);
  }
  return out;
}

bool PointSet::is_subset_of(const PointSet& other) const {
  for (PointIndex p = 0; p < mask_.size(); ++p) {
    if (mask_[p] != 0 && !other.contains(p)) return false;
  }
  return true;
}

PointSet PointSet::set_union(const PointSet& other) const {
  PointSet out(std::max(universe(), other.universe()));
  for (PointIndex p = 0; p < out.universe(); ++p) {
    if (contains(p) || other.contains(p)) out.mask_[p] = 1;
  }
  return out;
}

PointSet PointSet::set_intersection(const PointSet& other) const {
  PointSet out(universe());
  for (PointIndex p = 0; p < universe(); ++p) {
    if (contains(p) && other.contains(p)) out.mask_[p] = 1;
  }
  return out;
}

PointSet PointSet::set_difference(const PointSet& other) const {
  PointSet out(universe());
  for (PointIndex p = 0; p < universe(); ++p) {
    if (contains(p) && !other.contains(p)) out.mask_[p] = 1;
  }
  return out;
}

PointedMetricSpace PointedMetricSpace::from_normalized(std::vector<double> dist, std::size_t n) {
  if (n == 0 || dist.size() != n * n) {
    throw std::invalid_argument("distance matrix must be a nonempty square matrix");
  }
  validate_metric(dist, n);
  for (PointIndex p = 1; p < n; ++p) {
    if (dist[p] != 1.0) {
      throw MetricError(describe("unit distance to the basepoint", 0, p), sorted_triple(0, p, p));
    }
  }
  const double diam = *std::max_element(dist.begin(), dist.end());
  if (n > 1 && diam != 1.0) {
    throw std::invalid_argument("normalized space must have diameter exactly 1");
  }
  // Exact symmetry downstream.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) dist[j * n + i] = dist[i * n + j];
  }
  return PointedMetricSpace(std::move(dist), n);
}

std::vector<std::vector<double>> PointedMetricSpace::matrix_rows() const {
  std::vector<std::vector<double>> rows(n_);
  for (PointIndex p = 0; p < n_; ++p) rows[p].assign(row(p).begin(), row(p).end());
  return rows;
}

PointedMetricSpace normalize_and_adjoin_basepoint(const std::vector<std::vector<double>>& raw) {
  const std::size_t m = raw.size();
  if (m == 0) throw std::invalid_argument("distance matrix is empty");
  for (const auto& r : raw) {
    if (r.size() != m) throw std::invalid_argument("distance matrix is not square");
  }

  double diam = 0.0;
  for (const auto& r : raw) {
    for (double v : r) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("distance matrix contains a non-finite entry");
      }
      diam = std::max(diam, v);
    }
  }
  if (m == 1) {
    if (raw[0][0] != 0.0) throw MetricError(describe("zero diagonal", 0, 0), {0, 0, 0});
    diam = 1.0;
  } else if (diam <= 0.0) {
    // Report the offending entries rather than the collapsed diameter.
    std::vector<double> flat;
    for (const auto& r : raw) flat.insert(flat.end(), r.begin(), r.end());
    validate_metric(flat, m);
    throw std::invalid_argument("diameter is zero: all points coincide");
  }

  std::vector<double> scaled(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) scaled[i * m + j] = raw[i][j] / diam;
  }
  validate_metric(scaled, m);

  const std::size_t n = m + 1;
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    dist[i] = 1.0;
    dist[i * n] = 1.0;
    for (std::size_t j = 1; j < n; ++j) dist[i * n + j] = scaled[(i - 1) * m + (j - 1)];
  }
  return PointedMetricSpace::from_normalized(std::move(dist), n);
}

std::vector<std::vector<double>> distance_matrix(const std::vector<std::vector<double>>& points,
                                                 PointMetric metric) {
  const std::size_t m = points.size();
  if (m == 0) throw std::invalid_argument("point cloud is empty");
  const std::size_t dim = points.front().size();
  for (const auto& pt : points) {
    if (pt.size() != dim) throw std::invalid_argument("points have inconsistent dimensions");
  }
  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = std::fabs(points[i][k] - points[j][k]);
        acc = metric == PointMetric::kEuclidean ? acc + diff * diff : std::max(acc, diff);
      }
      d[i][j] = d[j][i] = metric == PointMetric::kEuclidean ? std::sqrt(acc) : acc;
    }
  }
  return d;
}

PointSet ball(const PointedMetricSpace& space, PointIndex p, double r) {
  if (p >= space.size()) throw std::out_of_range("point index out of range");
  if (!(r >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  PointSet out(space.size());
  const auto row = space.row(p);
  for (PointIndex x = 0; x < space.size(); ++x) {
    if (row[x] <= r) out.insert(x);
  }
  return out;
}

PointSet ball_of_set(const PointedMetricSpace& space, const PointSet& set, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  PointSet out(space.size());
  const auto dist = dist_to_set_all(space, set);
  for (PointIndex x = 0; x < space.size(); ++x) {
    if (dist[x] <= r) out.insert(x);
  }
  return out;
}

double dist_to_set(const PointedMetricSpace& space, const PointSet& set, PointIndex x) {
  if (set.universe() != space.size()) throw std::invalid_argument("point set universe mismatch");
  return kernels::masked_min(space.row(x), set.mask());
}

std::vector<double> dist_to_set_all(const PointedMetricSpace& space, const PointSet& set) {
  if (set.universe() != space.size()) throw std::invalid_argument("point set universe mismatch");
  std::vector<double> out(space.size());
  for (PointIndex x = 0; x < space.size(); ++x) {
    out[x] = kernels::masked_min(space.row(x), set.mask());
  }
  return out;
}

}  // namespace lipfree
