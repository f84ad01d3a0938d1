#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace lipfree::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct Bounds {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// maximize objective . x subject to constraints and per-variable bounds.
/// An empty `bounds` vector means x >= 0 for every variable.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<Bounds> bounds;

  std::size_t num_variables() const { return objective.size(); }
  void add(std::vector<double> coeffs, Relation relation, double rhs) {
    constraints.push_back({std::move(coeffs), relation, rhs});
  }
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

const char* to_string(Status status);

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  // Set when a pivot candidate fell below the pivot tolerance, the iteration
  // cap was hit, or the returned point failed the a-posteriori residual check.
  bool unstable = false;
  std::size_t iterations = 0;
};

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kPivotTolerance = 1e-12;

/// Dense two-phase primal simplex with Bland's rule. Deterministic: identical
/// input yields a bit-identical Solution.
Solution solve(const LinearProgram& program);

/// Largest violation of any constraint or bound at `x` (0 when feasible).
double max_violation(const LinearProgram& program, const std::vector<double>& x);

}  // namespace lipfree::lp
