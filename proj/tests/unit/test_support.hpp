#pragma once

#include <vector>

#include "lipfree/metric.hpp"
#include "lipfree/random_instance.hpp"

namespace lipfree::testing {

// Basepoint 0, p = 1, q = 2 with d(p,q) = 0.5.
inline PointedMetricSpace three_point() {
  return PointedMetricSpace::from_normalized({0, 1, 1, 1, 0, 0.5, 1, 0.5, 0}, 3);
}

// Random spaces cycling through the generators.
inline std::vector<PointedMetricSpace> random_spaces(std::size_t count, std::size_t n,
                                                     std::uint64_t seed = 17) {
  const Generator gens[] = {Generator::kUniformCube, Generator::kClustered, Generator::kTwoScale};
  std::vector<PointedMetricSpace> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_instance(seed + i, n, gens[i % 3]).space);
  }
  return out;
}

}  // namespace lipfree::testing
