#include "lipfree/free_norm.hpp"

#include <cmath>

#include "lipfree/lp.hpp"

namespace lipfree {

MomentVector::MomentVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (!coeffs_.empty()) coeffs_[kBasepoint] = 0.0;
}

MomentVector MomentVector::delta(std::size_t n, PointIndex p) {
  MomentVector v(n);
  v.set(p, 1.0);
  return v;
}

void MomentVector::set(PointIndex p, double value) {
  if (p >= coeffs_.size()) throw std::out_of_range("moment index out of range");
  if (p != kBasepoint) coeffs_[p] = value;
}

void MomentVector::add(PointIndex p, double value) {
  if (p >= coeffs_.size()) throw std::out_of_range("moment index out of range");
  if (p != kBasepoint) coeffs_[p] += value;
}

PointSet MomentVector::support() const {
  PointSet out(coeffs_.size());
  for (PointIndex p = 1; p < coeffs_.size(); ++p) {
    if (coeffs_[p] != 0.0) out.insert(p);
  }
  return out;
}

bool MomentVector::is_zero() const {
  for (double c : coeffs_) {
    if (c != 0.0) return false;
  }
  return true;
}

double MomentVector::l1_mass() const {
  double s = 0.0;
  for (double c : coeffs_) s += std::fabs(c);
  return s;
}

MomentVector MomentVector::operator+(const MomentVector& other) const {
  if (other.size() != size()) throw std::invalid_argument("moment vector size mismatch");
  MomentVector out(*this);
  for (PointIndex p = 0; p < size(); ++p) out.coeffs_[p] += other.coeffs_[p];
  return out;
}

MomentVector MomentVector::operator-(const MomentVector& other) const {
  if (other.size() != size()) throw std::invalid_argument("moment vector size mismatch");
  MomentVector out(*this);
  for (PointIndex p = 0; p < size(); ++p) out.coeffs_[p] -= other.coeffs_[p];
  return out;
}

MomentVector MomentVector::operator*(double t) const {
  MomentVector out(*this);
  for (double& c : out.coeffs_) c *= t;
  return out;
}

void TransshipmentPlan::add(PointIndex from, PointIndex to, double amount) {
  if (from >= n_ || to >= n_ || from == to) throw std::invalid_argument("invalid flow endpoints");
  flows_.push_back({from, to, amount});
}

double TransshipmentPlan::cost(const PointedMetricSpace& space) const {
  double total = 0.0;
  for (const auto& f : flows_) total += std::fabs(f.amount) * space.distance(f.from, f.to);
  return total;
}

std::vector<double> TransshipmentPlan::net_flow() const {
  std::vector<double> net(n_, 0.0);
  for (const auto& f : flows_) {
    net[f.from] += f.amount;
    net[f.to] -= f.amount;
  }
  return net;
}

MomentVector TransshipmentPlan::moments() const { return MomentVector(net_flow()); }

double eval(const MomentVector& v, const LipFunction& f) {
  if (v.size() != f.size()) throw std::invalid_argument("moment/function size mismatch");
  double s = 0.0;
  for (PointIndex p = 0; p < v.size(); ++p) s += v[p] * f[p];
  return s;
}

DualNorm lipschitz_dual_norm(const PointedMetricSpace& space, const MomentVector& v,
                             const PointSet& vanishing) {
  const std::size_t n = space.size();
  if (v.size() != n || vanishing.universe() != n) {
    throw std::invalid_argument("moment vector / point set size mismatch");
  }
  if (!vanishing.contains(kBasepoint)) {
    throw std::invalid_argument("the vanishing set must contain the basepoint");
  }
  // One free LP variable per point outside the vanishing set.
  std::vector<std::ptrdiff_t> var(n, -1);
  std::vector<PointIndex> points;
  for (PointIndex p = 0; p < n; ++p) {
    if (!vanishing.contains(p)) {
      var[p] = static_cast<std::ptrdiff_t>(points.size());
      points.push_back(p);
    }
  }
  if (points.empty()) return {0.0, LipFunction::zero(n)};

  lp::LinearProgram program;
  const std::size_t k = points.size();
  program.objective.resize(k);
  for (std::size_t i = 0; i < k; ++i) program.objective[i] = v[points[i]];
  program.bounds.assign(k, lp::Bounds{-kInfinity, kInfinity});
  auto add_pair = [&](std::vector<double> row, double d) {
    std::vector<double> neg(row);
    for (double& a : neg) a = -a;
    program.add(std::move(row), lp::Relation::kLessEqual, d);
    program.add(std::move(neg), lp::Relation::kLessEqual, d);
  };
  // Against the vanishing set only the nearest point binds: |f(p)| <= d(p, Z).
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> row(k, 0.0);
    row[i] = 1.0;
    add_pair(std::move(row), dist_to_set(space, vanishing, points[i]));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<double> row(k, 0.0);
      row[i] = 1.0;
      row[j] = -1.0;
      add_pair(std::move(row), space.distance(points[i], points[j]));
    }
  }
  const lp::Solution sol = lp::solve(program);
  if (sol.unstable || sol.status != lp::Status::kOptimal) {
    throw SolverInstability(std::string("dual norm LP ended ") + lp::to_string(sol.status) +
                            (sol.unstable ? " (unstable)" : ""));
  }
  std::vector<double> values(n, 0.0);
  for (std::size_t i = 0; i < k; ++i) values[points[i]] = sol.x[i];
  return {sol.objective, LipFunction(std::move(values))};
}

DualNorm free_norm_dual(const PointedMetricSpace& space, const MomentVector& v) {
  return lipschitz_dual_norm(space, v, PointSet(space.size(), {kBasepoint}));
}

PrimalNorm free_norm_primal(const PointedMetricSpace& space, const MomentVector& v) {
  const std::size_t n = space.size();
  if (v.size() != n) throw std::invalid_argument("moment vector size mismatch");
  TransshipmentPlan plan(n);
  if (v.is_zero()) return {0.0, plan};

  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  for (PointIndex p = 0; p < n; ++p) {
    for (PointIndex q = 0; q < n; ++q) {
      if (p != q) pairs.emplace_back(p, q);
    }
  }
  lp::LinearProgram program;
  program.objective.resize(pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    program.objective[j] = -space.distance(pairs[j].first, pairs[j].second);
  }
  // Balance at every non-basepoint; the basepoint absorbs the imbalance.
  for (PointIndex p = 1; p < n; ++p) {
    std::vector<double> row(pairs.size(), 0.0);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (pairs[j].first == p) row[j] = 1.0;
      if (pairs[j].second == p) row[j] = -1.0;
    }
    program.add(std::move(row), lp::Relation::kEqual, v[p]);
  }
  const lp::Solution sol = lp::solve(program);
  if (sol.unstable || sol.status != lp::Status::kOptimal) {
    throw SolverInstability(std::string("transshipment LP ended ") + lp::to_string(sol.status) +
                            (sol.unstable ? " (unstable)" : ""));
  }
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (sol.x[j] > 0.0) plan.add(pairs[j].first, pairs[j].second, sol.x[j]);
  }
  return {-sol.objective, plan};
}

}  // namespace lipfree
