#include <gtest/gtest.h>

#include <set>

#include "lipfree/random_instance.hpp"
#include "lipfree/verify.hpp"

namespace lipfree {
namespace {

TEST(RandomInstance, DeterministicPerSeedSizeGenerator) {
  for (Generator g : {Generator::kUniformCube, Generator::kClustered, Generator::kTwoScale}) {
    const auto a = random_instance(7, 9, g);
    const auto b = random_instance(7, 9, g);
    EXPECT_EQ(a.space, b.space);
    EXPECT_EQ(a.raw, b.raw);
    EXPECT_EQ(a.space.size(), 10u);
    EXPECT_NE(random_instance(8, 9, g).space, a.space);
  }
}

TEST(RandomInstance, SinglePoint) {
  const auto r = random_instance(3, 1, Generator::kUniformCube);
  EXPECT_EQ(r.space.size(), 2u);
  EXPECT_EQ(r.space.distance(0, 1), 1.0);
}

TEST(RandomInstance, RejectsEmpty) {
  EXPECT_THROW(random_instance(3, 0, Generator::kClustered), std::invalid_argument);
}

TEST(RandomInstance, TwoScaleClustersSitAtDistanceOne) {
  const auto r = random_instance(5, 10, Generator::kTwoScale, 2);
  const auto& x = r.space;
  for (PointIndex p = 1; p < x.size(); ++p) {
    for (PointIndex q = 1; q < x.size(); ++q) {
      const bool same = (p - 1) % 2 == (q - 1) % 2;
      if (!same) EXPECT_EQ(x.distance(p, q), 1.0);
      if (same) EXPECT_LT(x.distance(p, q), 0.3);
    }
  }
}

TEST(RandomInstance, GeneratorNames) {
  Generator g;
  EXPECT_TRUE(parse_generator("two-scale", g));
  EXPECT_EQ(g, Generator::kTwoScale);
  EXPECT_FALSE(parse_generator("gaussian", g));
}

TEST(Verify, TrivialTwoPointInstance) {
  VerifyOptions o;
  o.trials = 1;
  o.instance = normalize_and_adjoin_basepoint({{0.0}});
  const auto report = run_verification(o);
  EXPECT_EQ(report.failed, 0u);
  EXPECT_GT(report.passed, 0u);
  const Json j = report_to_json(report, false);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_FALSE(j.contains("duration_seconds"));
}

TEST(Verify, RejectsZeroTrials) {
  VerifyOptions o;
  o.trials = 0;
  EXPECT_THROW(run_verification(o), std::invalid_argument);
}

TEST(Verify, ReportIsByteStableAndSorted) {
  VerifyOptions o;
  o.trials = 2;
  o.sizes = {3, 6};
  const auto a = run_verification(o);
  const auto b = run_verification(o);
  EXPECT_EQ(report_to_json(a, false).dump(), report_to_json(b, false).dump());
  EXPECT_EQ(a.failed, 0u);
  EXPECT_EQ(a.passed + a.failed, a.records.size());
  for (std::size_t i = 1; i < a.records.size(); ++i) {
    const auto& p = a.records[i - 1];
    const auto& q = a.records[i];
    EXPECT_TRUE(p.name < q.name || (p.name == q.name && p.trial < q.trial));
  }
  for (const auto& r : a.records) EXPECT_FALSE(r.anchor.empty());
  // Every registered check fires on a default-shaped run.
  std::set<std::string> seen;
  for (const auto& r : a.records) seen.insert(r.name);
  for (const auto& name : check_names()) EXPECT_TRUE(seen.count(name)) << name;
}

}  // namespace
}  // namespace lipfree
