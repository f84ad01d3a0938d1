// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "lipfree/free_norm.hpp"
#include "lipfree/random_instance.hpp"
#include "lipfree/verify.hpp"

namespace {

using lipfree::CheckRecord;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
  std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  if (!o.pass) ++failures;
}

Outcome duality_oracle() {
  const auto start = Clock::now();
  const lipfree::Generator generators[] = {lipfree::Generator::kUniformCube,
                                           lipfree::Generator::kClustered,
                                           lipfree::Generator::kTwoScale};
  std::size_t instances = 0, vectors = 0;
  double worst = 0.0;
  for (std::size_t n : {4u, 8u, 12u}) {
    for (std::size_t t = 0; t < 50; ++t) {
      const auto inst = lipfree::random_instance(1000 + t, n, generators[t % 3]);
      lipfree::Rng rng(t, {n, 0xacce});
      ++instances;
      for (int k = 0; k < 10; ++k) {
        lipfree::MomentVector v(inst.space.size());
        for (lipfree::PointIndex p = 1; p < inst.space.size(); ++p) {
          if (rng.bernoulli(0.7)) v.set(p, rng.uniform(-1.0, 1.0));
        }
        const double dual = lipfree::free_norm_dual(inst.space, v).value;
        const double primal = lipfree::free_norm_primal(inst.space, v).value;
        worst = std::max(worst, std::abs(primal - dual));
        ++vectors;
      }
    }
  }
  const double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu instances, %zu vectors, max gap %.3g, %.2f s", instances,
                vectors, worst, elapsed);
  return {worst <= 1e-6 && elapsed <= 30.0, buf};
}

Outcome group(const std::vector<CheckRecord>& records, const std::vector<std::string>& names) {
  std::map<std::string, std::size_t> seen;
  std::size_t bad = 0;
  std::string first_bad;
  for (const auto& r : records) {
    for (const auto& name : names) {
      if (r.name != name) continue;
      seen[name] += r.observations;
      if (!r.pass) {
        if (bad++ == 0) first_bad = name + " trial " + std::to_string(r.trial) + ": " + r.detail;
      }
    }
  }
  std::size_t total = 0;
  for (const auto& name : names) {
    if (seen[name] == 0) return {false, "no observations for " + name};
    total += seen[name];
  }
  if (bad > 0) return {false, std::to_string(bad) + " failing records, first " + first_bad};
  return {true, std::to_string(total) + " comparisons"};
}

}  // namespace

int main() {
  try {
    report(1, "primal and dual free norms agree", duality_oracle());

    const auto start = Clock::now();
    const auto suite = lipfree::run_verification({});
    const double elapsed = seconds_since(start);
    const auto& rec = suite.records;

    report(2, "isometric embedding of the point masses",
           group(rec, {"free_norm.embedding_isometry", "free_norm.delta_unit"}));
    report(3, "restricted norms of point masses and pairs",
           group(rec, {"ideal.radInorm_delta", "ideal.radInorm_pair", "ideal.rad_oracle"}));
    report(4, "optimal lift cost equals the restricted norm",
           group(rec, {"decompose.quotient_equality"}));
    report(5, "close-pair decomposition",
           group(rec, {"decompose.close_support", "decompose.close_cost",
                       "decompose.far_pair_certificate", "decompose.far_pair_exhaustive"}));
    report(6, "separated rebalance",
           group(rec, {"decompose.rebalance_termination", "decompose.rebalance_exact",
                       "decompose.rebalance_cost", "decompose.rebalance_separation"}));
    report(7, "local mass bound and finite margin",
           group(rec, {"decompose.mass_bound", "ideal.radIinf_margin"}));
    report(8, "cutoff operator supports, norm bound and fixed points",
           group(rec, {"operators.support_T", "operators.support_residual",
                       "operators.norm_bound", "operators.fixed_point"}));
    report(9, "glued Lipschitz bound and tightness", group(rec, {"glue.bound", "glue.tightness"}));

    const auto again = lipfree::run_verification({});
    const bool stable =
        lipfree::report_to_json(suite, false).dump() == lipfree::report_to_json(again, false).dump();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu records, %zu failed, %.2f s, %s", rec.size(), suite.failed,
                  elapsed, stable ? "byte-stable" : "reports differ");
    report(10, "default verification suite",
           {suite.failed == 0 && !suite.instability && elapsed < 60.0 && stable, buf});
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
