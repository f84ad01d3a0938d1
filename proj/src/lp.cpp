#include "lipfree/lp.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "lipfree/kernels.hpp"

namespace lipfree::lp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard-form column j stands for sign * y_j inside original variable `orig`.
struct StdColumn {
  std::size_t orig;
  double sign;
};

struct StdRow {
  std::vector<double> coeffs;  // over standard columns
  Relation relation;
  double rhs;
};

enum class ColumnKind { kStructural, kSlack, kArtificial };

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), width_(cols + 1), data_(rows * (cols + 1), 0.0),
        z_(cols + 1, 0.0), basis_(rows, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return data_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * width_ + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * width_, width_);
  }
  std::span<double> z() { return z_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    auto pivot_row = row(r);
    kernels::divide(pivot_row, pivot_row[c]);
    pivot_row[c] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      auto other = row(i);
      const double factor = other[c];
      if (factor == 0.0) continue;
      kernels::sub_scaled(other, pivot_row, factor);
      other[c] = 0.0;
    }
    const double factor = z_[c];
    if (factor != 0.0) {
      kernels::sub_scaled(z_, pivot_row, factor);
      z_[c] = 0.0;
    }
    basis_[r] = c;
  }

  void erase_row(std::size_t r) {
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * width_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<double> data_;
  std::vector<double> z_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

struct PhaseOutcome {
  PhaseResult result;
  bool unstable;
};

// Maximizes with the reduced costs currently stored in z. Bland's rule: the
// lowest-index improving column enters; ratio ties leave by lowest basis index.
PhaseOutcome run_phase(Tableau& t, const std::vector<ColumnKind>& kinds, bool allow_artificial,
                       std::size_t& iterations, std::size_t limit) {
  bool unstable = false;
  while (true) {
    auto z = t.z();
    std::size_t entering = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allow_artificial && kinds[j] == ColumnKind::kArtificial) continue;
      if (z[j] > kFeasibilityTolerance) {
        entering = j;
        break;
      }
    }
    if (entering == t.cols()) return {PhaseResult::kOptimal, unstable};
    if (iterations >= limit) return {PhaseResult::kIterationLimit, true};

    std::size_t leaving = t.rows();
    double best_ratio = kInf;
    bool tiny_candidate = false;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, entering);
      if (a <= 0.0) continue;
      if (a <= kPivotTolerance) {
        tiny_candidate = true;
        continue;
      }
      const double ratio = std::max(t.rhs(i), 0.0) / a;
      if (leaving == t.rows() || ratio < best_ratio ||
          (ratio == best_ratio && t.basis()[i] < t.basis()[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving == t.rows()) return {PhaseResult::kUnbounded, unstable || tiny_candidate};
    t.pivot(leaving, entering);
    ++iterations;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.rhs(i) < 0.0 && t.rhs(i) > -kFeasibilityTolerance) t.rhs(i) = 0.0;
    }
  }
}

void validate(const LinearProgram& program) {
  const std::size_t n = program.num_variables();
  if (!program.bounds.empty() && program.bounds.size() != n) {
    throw std::invalid_argument("bounds must be empty or match the objective width");
  }
  for (double c : program.objective) {
    if (!std::isfinite(c)) throw std::invalid_argument("objective coefficients must be finite");
  }
  for (const auto& row : program.constraints) {
    if (row.coeffs.size() != n) {
      throw std::invalid_argument("constraint width does not match the objective");
    }
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("constraint rhs must be finite");
    for (double a : row.coeffs) {
      if (!std::isfinite(a)) throw std::invalid_argument("constraint coefficients must be finite");
    }
  }
  for (const auto& b : program.bounds) {
    if (std::isnan(b.lo) || std::isnan(b.hi) || b.lo == kInf || b.hi == -kInf) {
      throw std::invalid_argument("invalid variable bounds");
    }
  }
}

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

double max_violation(const LinearProgram& program, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : program.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coeffs[j] * x[j];
    const double scale = std::max(1.0, std::fabs(row.rhs));
    double v = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual:
        v = lhs - row.rhs;
        break;
      case Relation::kGreaterEqual:
        v = row.rhs - lhs;
        break;
      case Relation::kEqual:
        v = std::fabs(lhs - row.rhs);
        break;
    }
    worst = std::max(worst, v / scale);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Bounds b = program.bounds.empty() ? Bounds{} : program.bounds[j];
    worst = std::max({worst, b.lo - x[j], x[j] - b.hi});
  }
  return worst;
}

Solution solve(const LinearProgram& program) {
  validate(program);
  const std::size_t n = program.num_variables();

  // Shift or split variables so every standard column is >= 0.
  std::vector<StdColumn> columns;
  std::vector<double> offset(n, 0.0);
  std::vector<StdRow> rows;
  for (std::size_t v = 0; v < n; ++v) {
    const Bounds b = program.bounds.empty() ? Bounds{} : program.bounds[v];
    const bool lo_finite = std::isfinite(b.lo);
    const bool hi_finite = std::isfinite(b.hi);
    if (lo_finite) {
      offset[v] = b.lo;
      columns.push_back({v, 1.0});
      if (hi_finite) {
        // Placeholder coefficients; filled once the column count is known.
        rows.push_back({{static_cast<double>(columns.size() - 1)}, Relation::kLessEqual,
                        b.hi - b.lo});
      }
    } else if (hi_finite) {
      offset[v] = b.hi;
      columns.push_back({v, -1.0});
    } else {
      columns.push_back({v, 1.0});
      columns.push_back({v, -1.0});
    }
  }
  const std::size_t num_std = columns.size();
  for (auto& row : rows) {
    const auto col = static_cast<std::size_t>(row.coeffs[0]);
    row.coeffs.assign(num_std, 0.0);
    row.coeffs[col] = 1.0;
  }
  for (const auto& c : program.constraints) {
    StdRow row{std::vector<double>(num_std, 0.0), c.relation, c.rhs};
    for (std::size_t j = 0; j < num_std; ++j) {
      row.coeffs[j] = c.coeffs[columns[j].orig] * columns[j].sign;
    }
    for (std::size_t v = 0; v < n; ++v) row.rhs -= c.coeffs[v] * offset[v];
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    if (row.rhs < 0.0) {
      for (double& a : row.coeffs) a = -a;
      row.rhs = -row.rhs;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
  }

  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::kEqual) ++num_slack;
    if (row.relation != Relation::kLessEqual) ++num_art;
  }
  const std::size_t total_cols = num_std + num_slack + num_art;
  std::vector<ColumnKind> kinds(total_cols, ColumnKind::kStructural);
  std::fill(kinds.begin() + static_cast<std::ptrdiff_t>(num_std),
            kinds.begin() + static_cast<std::ptrdiff_t>(num_std + num_slack), ColumnKind::kSlack);
  std::fill(kinds.begin() + static_cast<std::ptrdiff_t>(num_std + num_slack), kinds.end(),
            ColumnKind::kArtificial);

  Tableau t(rows.size(), total_cols);
  std::size_t next_slack = num_std;
  std::size_t next_art = num_std + num_slack;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < num_std; ++j) t.at(i, j) = rows[i].coeffs[j];
    t.rhs(i) = rows[i].rhs;
    switch (rows[i].relation) {
      case Relation::kLessEqual:
        t.at(i, next_slack) = 1.0;
        t.basis()[i] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t.at(i, next_slack++) = -1.0;
        t.at(i, next_art) = 1.0;
        t.basis()[i] = next_art++;
        break;
      case Relation::kEqual:
        t.at(i, next_art) = 1.0;
        t.basis()[i] = next_art++;
        break;
    }
  }

  Solution solution;
  const std::size_t limit = 50 * (rows.size() + total_cols) + 1000;
  std::size_t iterations = 0;

  if (num_art > 0) {
    // Phase 1: maximize -(sum of artificials).
    auto z = t.z();
    double bnorm = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      bnorm = std::max(bnorm, t.rhs(i));
      if (kinds[t.basis()[i]] != ColumnKind::kArtificial) continue;
      auto r = t.row(i);
      for (std::size_t j = 0; j <= total_cols; ++j) z[j] += r[j];
    }
    for (std::size_t j = 0; j < total_cols; ++j) {
      if (kinds[j] == ColumnKind::kArtificial) z[j] = 0.0;
    }
    const PhaseOutcome phase1 = run_phase(t, kinds, false, iterations, limit);
    solution.unstable = phase1.unstable;
    if (phase1.result == PhaseResult::kIterationLimit) {
      solution.iterations = iterations;
      return solution;
    }
    if (t.z()[total_cols] > kFeasibilityTolerance * (1.0 + bnorm)) {
      solution.status = Status::kInfeasible;
      solution.iterations = iterations;
      return solution;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (std::size_t i = 0; i < t.rows();) {
      if (kinds[t.basis()[i]] != ColumnKind::kArtificial) {
        ++i;
        continue;
      }
      t.rhs(i) = 0.0;
      std::size_t col = total_cols;
      for (std::size_t j = 0; j < total_cols; ++j) {
        if (kinds[j] != ColumnKind::kArtificial && std::fabs(t.at(i, j)) > kFeasibilityTolerance) {
          col = j;
          break;
        }
      }
      if (col == total_cols) {
        t.erase_row(i);  // redundant constraint
        continue;
      }
      t.pivot(i, col);
      ++i;
    }
  }

  // Phase 2 reduced costs: z = c - c_B B^-1 A.
  std::vector<double> cost(total_cols + 1, 0.0);
  for (std::size_t j = 0; j < num_std; ++j) {
    cost[j] = program.objective[columns[j].orig] * columns[j].sign;
  }
  auto z = t.z();
  std::copy(cost.begin(), cost.end(), z.begin());
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const double cb = cost[t.basis()[i]];
    if (cb != 0.0) kernels::sub_scaled(z, t.row(i), cb);
  }
  for (std::size_t i = 0; i < t.rows(); ++i) z[t.basis()[i]] = 0.0;

  const PhaseOutcome phase2 = run_phase(t, kinds, false, iterations, limit);
  solution.unstable = solution.unstable || phase2.unstable;
  solution.iterations = iterations;
  if (phase2.result == PhaseResult::kIterationLimit) return solution;
  if (phase2.result == PhaseResult::kUnbounded) {
    solution.status = Status::kUnbounded;
    return solution;
  }

  std::vector<double> y(total_cols, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) y[t.basis()[i]] = std::max(t.rhs(i), 0.0);
  solution.x = offset;
  for (std::size_t j = 0; j < num_std; ++j) solution.x[columns[j].orig] += columns[j].sign * y[j];
  solution.objective = 0.0;
  for (std::size_t v = 0; v < n; ++v) solution.objective += program.objective[v] * solution.x[v];
  solution.status = Status::kOptimal;
  if (max_violation(program, solution.x) > kFeasibilityTolerance) solution.unstable = true;
  return solution;
}

}  // namespace lipfree::lp
