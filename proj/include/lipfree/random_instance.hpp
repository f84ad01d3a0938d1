#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lipfree/metric.hpp"

namespace lipfree {

enum class Generator { kUniformCube, kClustered, kTwoScale };

const char* to_string(Generator g);
bool parse_generator(std::string_view name, Generator& out);

/// mt19937_64 with a portable double mapping, so seeded streams are identical
/// on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> salt);

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in {0, ..., n-1}.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct RandomInstance {
  std::vector<std::vector<double>> raw;  // pre-normalization matrix
  PointedMetricSpace space;
};

/// Deterministic per (seed, n, generator); the result has n + 1 points.
/// `clusters` applies to the clustered and two-scale generators (0 picks
/// max(2, ceil(n/4)), capped at n). Two-scale clusters sit at mutual
/// distance exactly 1 with small intra-cluster diameters.
RandomInstance random_instance(std::uint64_t seed, std::size_t n, Generator generator,
                               std::size_t clusters = 0);

}  // namespace lipfree
