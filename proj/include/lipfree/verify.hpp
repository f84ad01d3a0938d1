#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipfree/instance_io.hpp"
#include "lipfree/metric.hpp"

namespace lipfree {

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Trials per size; with a fixed instance, the total trial count.
  std::size_t trials = 50;
  /// Raw point counts of the random instances (basepoint not included).
  std::vector<std::size_t> sizes{4, 8, 12};
  std::optional<PointedMetricSpace> instance;
  /// Tolerance for LP-valued comparisons.
  double tolerance = 1e-6;
};

struct InstanceDescriptor {
  std::size_t trial;
  std::size_t n;  // raw points
  std::string generator;
  std::uint64_t seed;
};

/// One check aggregated over a trial. `lhs`/`rhs` are the worst observed
/// comparison; relation "<=" means lhs <= rhs + tolerance, "==" means
/// |lhs - rhs| <= tolerance and "exact" counts violations in lhs.
struct CheckRecord {
  std::string name;
  std::string anchor;  // theorem label or "plumbing"
  std::size_t trial;
  std::string relation;
  double lhs;
  double rhs;
  double tolerance;
  std::size_t observations;
  bool pass;
  std::string detail;
};

struct VerificationReport {
  VerifyOptions options;
  std::vector<InstanceDescriptor> instances;
  std::vector<CheckRecord> records;  // sorted by name, then trial
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool instability = false;
  double duration_seconds = 0.0;
};

/// Throws std::invalid_argument when trials == 0.
VerificationReport run_verification(const VerifyOptions& options);

/// Wall-clock duration is left out unless `with_timing`, which keeps reports
/// byte-identical across runs.
Json report_to_json(const VerificationReport& report, bool with_timing);

/// Every check name the suite can emit.
const std::vector<std::string>& check_names();

}  // namespace lipfree
