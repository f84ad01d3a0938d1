#include "lipfree/random_instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace lipfree {

const char* to_string(Generator g) {
  switch (g) {
    case Generator::kUniformCube:
      return "uniform-cube";
    case Generator::kClustered:
      return "clustered";
    case Generator::kTwoScale:
      return "two-scale";
  }
  return "unknown";
}

bool parse_generator(std::string_view name, Generator& out) {
  for (Generator g : {Generator::kUniformCube, Generator::kClustered, Generator::kTwoScale}) {
    if (name == to_string(g)) {
      out = g;
      return true;
    }
  }
  return false;
}

Rng::Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> salt) {
  std::vector<std::uint32_t> words;
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (std::uint64_t s : salt) push(s);
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

namespace {

constexpr std::size_t kDim = 2;

std::size_t cluster_count(std::size_t n, std::size_t requested) {
  const std::size_t k = requested != 0 ? requested : std::max<std::size_t>(2, (n + 3) / 4);
  return std::min(k, n);
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, std::size_t n, Generator generator,
                               std::size_t clusters) {
  if (n == 0) throw std::invalid_argument("random instance needs at least one point");
  Rng rng(seed, {n, static_cast<std::uint64_t>(generator)});
  std::vector<std::vector<double>> raw;

  switch (generator) {
    case Generator::kUniformCube: {
      std::vector<std::vector<double>> pts(n, std::vector<double>(kDim));
      for (auto& p : pts) {
        for (double& x : p) x = rng.uniform();
      }
      raw = distance_matrix(pts, PointMetric::kEuclidean);
      break;
    }
    case Generator::kClustered: {
      const std::size_t k = cluster_count(n, clusters);
      std::vector<std::vector<double>> centers(k, std::vector<double>(kDim));
      for (auto& c : centers) {
        for (double& x : c) x = rng.uniform();
      }
      std::vector<std::vector<double>> pts(n, std::vector<double>(kDim));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) pts[i][j] = centers[i % k][j] + rng.uniform(-0.1, 0.1);
      }
      raw = distance_matrix(pts, PointMetric::kEuclidean);
      break;
    }
    case Generator::kTwoScale: {
      const std::size_t k = cluster_count(n, clusters);
      std::vector<double> scale(k);
      for (double& s : scale) s = rng.uniform(0.02, 0.2);
      std::vector<std::vector<double>> pts(n, std::vector<double>(kDim));
      for (std::size_t i = 0; i < n; ++i) {
        for (double& x : pts[i]) x = rng.uniform() * scale[i % k];
      }
      raw = distance_matrix(pts, PointMetric::kEuclidean);
      if (k > 1) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (i % k != j % k) raw[i][j] = 1.0;
          }
        }
      }
      break;
    }
  }
  // Coincident random points would be rejected; nudge them apart.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && raw[i][j] == 0.0) raw[i][j] = 1e-6;
    }
  }
  PointedMetricSpace space = normalize_and_adjoin_basepoint(raw);
  return {std::move(raw), std::move(space)};
}

}  // namespace lipfree
