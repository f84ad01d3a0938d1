// lipfree: norms, operators and certified decompositions on finite pointed
// metric spaces. Every subcommand prints a JSON certificate.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lipfree/decompose.hpp"
#include "lipfree/free_norm.hpp"
#include "lipfree/ideal.hpp"
#include "lipfree/instance_io.hpp"
#include "lipfree/kernels.hpp"
#include "lipfree/lipschitz.hpp"
#include "lipfree/operators.hpp"
#include "lipfree/random_instance.hpp"
#include "lipfree/verify.hpp"

namespace {

using lipfree::Json;

enum ExitCode { kOk = 0, kCheckFailed = 1, kInputError = 2, kInstability = 3 };

struct Globals {
  std::string instance_path;
  std::uint64_t seed = 1;
  std::string out_path;
  double tolerance = 1e-6;
  std::string isa;
};

class Certificate {
 public:
  explicit Certificate(std::string command) { doc_["command"] = std::move(command); }

  Json& inputs() { return doc_["inputs"]; }
  Json& outputs() { return doc_["outputs"]; }

  /// lhs <= rhs + tol
  void assert_le(const std::string& name, double lhs, double rhs, double tol) {
    push(name, "<=", lhs, rhs, tol, lhs <= rhs + tol);
  }
  /// |lhs - rhs| <= tol
  void assert_eq(const std::string& name, double lhs, double rhs, double tol) {
    push(name, "==", lhs, rhs, tol, std::fabs(lhs - rhs) <= tol);
  }
  void assert_true(const std::string& name, bool ok) {
    push(name, "exact", ok ? 0.0 : 1.0, 0.0, 0.0, ok);
  }

  bool ok() const { return ok_; }
  Json finish() {
    if (!doc_.contains("asserted_inequalities")) doc_["asserted_inequalities"] = Json::array();
    doc_["ok"] = ok_;
    return doc_;
  }

 private:
  void push(const std::string& name, const char* relation, double lhs, double rhs, double tol,
            bool ok) {
    doc_["asserted_inequalities"].push_back({{"name", name},
                                             {"relation", relation},
                                             {"lhs", lhs},
                                             {"rhs", rhs},
                                             {"tolerance", tol},
                                             {"ok", ok}});
    ok_ = ok_ && ok;
  }

  Json doc_;
  bool ok_ = true;
};

void emit(const Globals& g, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) throw lipfree::InputError("cannot write " + g.out_path);
  out << text;
}

struct Loaded {
  Json doc;
  lipfree::PointedMetricSpace space;
};

Loaded load(const Globals& g) {
  if (g.instance_path.empty()) throw lipfree::InputError("--instance is required");
  Json doc = lipfree::read_json_file(g.instance_path);
  lipfree::PointedMetricSpace space = lipfree::load_instance(doc);
  return {std::move(doc), std::move(space)};
}

lipfree::MomentVector moments_of(const Loaded& in) {
  if (!in.doc.contains("moments")) throw lipfree::InputError("input needs \"moments\"");
  return lipfree::moments_from_json(in.doc.at("moments"), in.space.size());
}

lipfree::IdealCarrier carrier_of(const Loaded& in) {
  if (!in.doc.contains("carrier")) throw lipfree::InputError("input needs \"carrier\"");
  return lipfree::IdealCarrier(lipfree::point_set_from_json(in.doc.at("carrier"), in.space.size()));
}

Json plan_atoms_outputs(const lipfree::TransshipmentPlan& plan, const lipfree::AtomVector& atoms,
                        double cost) {
  return {{"plan", lipfree::plan_to_json(plan)},
          {"atoms", lipfree::atoms_to_json(atoms)},
          {"cost", cost}};
}

int run_norm(const Globals& g, bool ideal) {
  const Loaded in = load(g);
  const auto v = moments_of(in);
  Certificate cert(ideal ? "norm --ideal" : "norm");
  cert.inputs() = {{"instance", lipfree::instance_to_json(in.space)},
                   {"moments", lipfree::moments_to_json(v)}};
  const auto dual = lipfree::free_norm_dual(in.space, v);
  const auto primal = lipfree::free_norm_primal(in.space, v);
  if (!ideal) {
    cert.outputs() = {{"value", dual.value},
                      {"primal_cost", primal.value},
                      {"dual_value", dual.value},
                      {"witness", lipfree::function_to_json(dual.witness)},
                      {"plan", lipfree::plan_to_json(primal.plan)}};
    cert.assert_eq("primal_cost == dual_value", primal.value, dual.value, g.tolerance);
    cert.assert_le("lip(witness) <= 1", lipfree::lip_norm(in.space, dual.witness), 1.0,
                   lipfree::kEpsilon);
  } else {
    const auto carrier = carrier_of(in);
    cert.inputs()["carrier"] = lipfree::point_set_to_json(carrier.points());
    const auto restricted = lipfree::ideal_norm(in.space, carrier, v);
    const auto lift = lipfree::optimal_lift(in.space, carrier, v);
    cert.outputs() = {{"value", restricted.value},
                      {"primal_cost", lift.cost},
                      {"dual_value", restricted.value},
                      {"free_norm", dual.value},
                      {"witness", lipfree::function_to_json(restricted.witness)},
                      {"plan", lipfree::plan_to_json(lift.plan)},
                      {"atoms", lipfree::atoms_to_json(lift.atoms)}};
    cert.assert_eq("lift cost == restricted norm", lift.cost, restricted.value, g.tolerance);
    cert.assert_le("restricted norm <= free norm", restricted.value, dual.value, g.tolerance);
    cert.assert_le("lip(witness) <= 1", lipfree::lip_norm(in.space, restricted.witness), 1.0,
                   lipfree::kEpsilon);
  }
  emit(g, cert.finish());
  return cert.ok() ? kOk : kCheckFailed;
}

int run_rad(const Globals& g) {
  const Loaded in = load(g);
  const auto carrier = carrier_of(in);
  Certificate cert("rad");
  cert.inputs() = {{"instance", lipfree::instance_to_json(in.space)},
                   {"carrier", lipfree::point_set_to_json(carrier.points())}};
  const auto table = lipfree::rad_table(in.space, carrier);
  cert.outputs() = {{"rad", table}};
  for (lipfree::PointIndex p = 0; p < table.size(); ++p) {
    cert.assert_le("rad(" + std::to_string(p) + ") <= 1", table[p], 1.0, 0.0);
  }
  emit(g, cert.finish());
  return cert.ok() ? kOk : kCheckFailed;
}

int run_lift(const Globals& g) {
  const Loaded in = load(g);
  const auto v = moments_of(in);
  const auto carrier = carrier_of(in);
  Certificate cert("lift");
  cert.inputs() = {{"instance", lipfree::instance_to_json(in.space)},
                   {"moments", lipfree::moments_to_json(v)},
                   {"carrier", lipfree::point_set_to_json(carrier.points())}};
  const auto lift = lipfree::optimal_lift(in.space, carrier, v);
  const double norm = lipfree::ideal_norm(in.space, carrier, v).value;
  cert.outputs() = plan_atoms_outputs(lift.plan, lift.atoms, lift.cost);
  cert.outputs()["restricted_norm"] = norm;
  cert.assert_eq("lift cost == restricted norm", lift.cost, norm, g.tolerance);
  cert.assert_le("reconstruction error on carrier",
                 lipfree::reconstruction_error(carrier, lift, v), 0.0, lipfree::kEpsilon);
  emit(g, cert.finish());
  return cert.ok() ? kOk : kCheckFailed;
}

int run_decompose(const Globals& g, double c, bool rescale) {
  const Loaded in = load(g);
  auto u = moments_of(in);
  const auto carrier = carrier_of(in);
  Certificate cert("decompose");
  cert.inputs() = {{"instance", lipfree::instance_to_json(in.space)},
                   {"moments", lipfree::moments_to_json(u)},
                   {"carrier", lipfree::point_set_to_json(carrier.points())},
                   {"c", c}};
  const double norm = lipfree::ideal_norm(in.space, carrier, u).value;
  if (rescale && norm > 0.0) {
    u = u * ((1.0 - 1e-6) / norm);
    cert.inputs()["rescaled_moments"] = lipfree::moments_to_json(u);
  }
  const auto cp = lipfree::close_pairs_decompose(in.space, carrier, u, c);
  const auto rad = lipfree::rad_table(in.space, carrier);
  Json far = Json::array();
  for (const auto& fp : cp.far_pairs) {
    far.push_back({{"p", fp.p}, {"q", fp.q}, {"rad_sum", fp.rad_sum}, {"scaled_dist", fp.scaled_dist}});
  }
  cert.outputs() = plan_atoms_outputs(cp.plan, cp.atoms, cp.cost);
  cert.outputs()["lift_cost"] = cp.lift_cost;
  cert.outputs()["far_pairs"] = std::move(far);
  bool close = true;
  for (const auto& f : cp.plan.flows()) {
    close = close && in.space.distance(f.from, f.to) <= lipfree::close_radius(rad, f.from, f.to, c);
  }
  cert.assert_true("plan flows only on close pairs", close);
  cert.assert_le("cost <= 3/c", cp.cost, 3.0 / c, g.tolerance);
  for (const auto& fp : cp.far_pairs) {
    cert.assert_le("rad(" + std::to_string(fp.p) + ") + rad(" + std::to_string(fp.q) + ") <= 3 d / c",
                   fp.rad_sum, fp.scaled_dist, lipfree::kEpsilon);
  }
  const lipfree::QuotientDecomposition as_quotient{cp.plan, cp.atoms, cp.cost};
  cert.assert_le("reconstruction error on carrier",
                 lipfree::reconstruction_error(carrier, as_quotient, u), 0.0, lipfree::kEpsilon);
  emit(g, cert.finish());
  return cert.ok() ? kOk : kCheckFailed;
}

// Starting decomposition for rebalance / masscheck: the given plan and atoms,
// or, from moments alone, every carrier coefficient as an atom.
std::pair<lipfree::TransshipmentPlan, lipfree::AtomVector> starting_decomposition(
    const Loaded& in, std::span<const double> rad) {
  const std::size_t n = in.space.size();
  if (in.doc.contains("atoms") || in.doc.contains("plan")) {
    lipfree::TransshipmentPlan plan = in.doc.contains("plan")
                                          ? lipfree::plan_from_json(in.doc.at("plan"), n)
                                          : lipfree::TransshipmentPlan(n);
    lipfree::AtomVector atoms = in.doc.contains("atoms")
                                    ? lipfree::atoms_from_json(in.doc.at("atoms"), rad)
                                    : lipfree::AtomVector(n);
    return {std::move(plan), std::move(atoms)};
  }
  const auto v = moments_of(in);
  return {lipfree::TransshipmentPlan(n),
          lipfree::AtomVector(std::vector<double>(v.coeffs().begin(), v.coeffs().end()), rad)};
}

int run_rebalance(const Globals& g) {
  const Loaded in = load(g);
  const auto carrier = carrier_of(in);
  const auto rad = lipfree::rad_table(in.space, carrier);
  const auto [plan, atoms] = starting_decomposition(in, rad);
  Certificate cert("rebalance");
  cert.inputs() = {{"instance", lipfree::instance_to_json(in.space)},
                   {"carrier", lipfree::point_set_to_json(carrier.points())},
                   {"plan", lipfree::plan_to_json(plan)},
                   {"atoms", lipfree::atoms_to_json(atoms)}};
  const auto rb = lipfree::separated_rebalance(in.space, carrier, plan, atoms);
  Json steps = Json::array();
  for (const auto& s : rb.steps) {
    steps.push_back({{"positive", s.positive},
                     {"negative", s.negative},
                     {"amount", s.amount},
                     {"cost_before", s.cost_before},
                     {"cost_after", s.cost_after}});
  }
  const double cost = lipfree::decomposition_cost(in.space, rad, rb.plan, rb.atoms);
  cert.outputs() = plan_atoms_outputs(rb.plan, rb.atoms, cost);
  cert.outputs()["steps"] = std::move(steps);
  cert.assert_le("steps <= |supp a|", static_cast<double>(rb.steps.size()),
                 static_cast<double>(rb.initial_support), 0.0);
  for (const auto& s : rb.steps) {
    cert.assert_le("step cost non-increasing", s.cost_after, s.cost_before, lipfree::kEpsilon);
  }
  cert.assert_true("reconstruction preserved exactly",
                   lipfree::same_reconstruction_exact(carrier, plan, atoms, rb.plan, rb.atoms));
  cert.assert_true("opposite-sign atoms separated",
                   !lipfree::find_separation_violation(in.space, rad, rb.atoms).found);
  emit(g, cert.finish());
  return cert.ok() ? kOk : kCheckFailed;
}

int run_masscheck(const Globals& g, lipfree::PointIndex p, double r) {
  const Loaded in = load(g);
  const auto carrier = carrier_of(in);
  const auto rad = lipfree::rad_table(in.space, carrier);
  if (p >= in.space.size()) throw lipfree::InputError("--p out of range");
  const auto [plan, atoms] = starting_decomposition(in, rad);
  const auto rb = lipfree::separated_rebalance(in.space, carrier, plan, atoms);
  Certificate cert("masscheck");
  cert.inputs() = {{"instance", lipfree::instance_to_json(in.space)},
                   {"carrier", lipfree::point_set_to_json(carrier.points())},
                   {"plan", lipfree::plan_to_json(plan)},
                   {"atoms", lipfree::atoms_to_json(atoms)},
                   {"p", p},
                   {"r", r}};
  const double cost = lipfree::decomposition_cost(in.space, rad, rb.plan, rb.atoms);
  const auto mb = lipfree::mass_bound_check(in.space, carrier, rb.atoms, p, r);
  cert.outputs() = plan_atoms_outputs(rb.plan, rb.atoms, cost);
  cert.outputs()["theta"] = mb.theta;
  cert.outputs()["mass"] = mb.mass;
  cert.outputs()["bound"] = mb.bound;
  cert.outputs()["note"] =
      "only the local mass inequality is checked; finiteness of the support inside the ball "
      "holds trivially on a finite space";
  cert.assert_true("decomposition is separated",
                   !lipfree::find_separation_violation(in.space, rad, rb.atoms).found);
  cert.assert_le("combined cost < 1", cost, 1.0, 0.0);
  cert.assert_le("mass <= 4 / theta", mb.mass, mb.bound, g.tolerance);
  emit(g, cert.finish());
  return cert.ok() ? kOk : kCheckFailed;
}

int run_operator(const Globals& g, const std::vector<lipfree::PointIndex>& set, double theta) {
  const Loaded in = load(g);
  const auto v = moments_of(in);
  const std::size_t n = in.space.size();
  lipfree::PointSet e(n);
  for (auto p : set) {
    if (p >= n) throw lipfree::InputError("--set index out of range");
    e.insert(p);
  }
  Certificate cert("operator");
  cert.inputs() = {{"instance", lipfree::instance_to_json(in.space)},
                   {"moments", lipfree::moments_to_json(v)},
                   {"set", lipfree::point_set_to_json(e)},
                   {"theta", theta}};
  const auto prof = lipfree::weight(in.space, e, theta);
  const auto tv = lipfree::apply_T(v, prof);
  const auto sv = v.support();
  cert.outputs() = {{"weights", prof.w},
                    {"moments", lipfree::moments_to_json(tv)},
                    {"bound", lipfree::operator_bound(theta)}};
  cert.assert_true("supp Tv within supp v and the theta-ball of E",
                   tv.support().is_subset_of(
                       sv.set_intersection(lipfree::ball_of_set(in.space, e, theta))));
  cert.assert_true("supp (v - Tv) avoids the theta/2-ball of E",
                   (v - tv).support().is_subset_of(
                       sv.set_difference(lipfree::ball_of_set(in.space, e, theta / 2.0))));
  const double norm_v = lipfree::free_norm_dual(in.space, v).value;
  const double norm_tv = lipfree::free_norm_dual(in.space, tv).value;
  cert.outputs()["norm_v"] = norm_v;
  cert.outputs()["norm_Tv"] = norm_tv;
  cert.assert_le("||Tv|| <= (1 + 2/theta) ||v||", norm_tv, lipfree::operator_bound(theta) * norm_v,
                 g.tolerance);
  emit(g, cert.finish());
  return cert.ok() ? kOk : kCheckFailed;
}

int run_random(const Globals& g, std::size_t n, const std::string& generator_name,
               std::size_t clusters) {
  lipfree::Generator gen;
  if (!lipfree::parse_generator(generator_name, gen)) {
    throw lipfree::InputError("unknown generator " + generator_name);
  }
  const auto inst = lipfree::random_instance(g.seed, n, gen, clusters);
  Json doc = {{"generator", generator_name},
              {"seed", g.seed},
              {"n", n},
              {"matrix", inst.raw},
              {"normalized", lipfree::instance_to_json(inst.space)}};
  emit(g, doc);
  return kOk;
}

int run_verify(const Globals& g, std::size_t trials, const std::vector<std::size_t>& sizes,
               bool with_timing) {
  lipfree::VerifyOptions options;
  options.seed = g.seed;
  options.trials = trials;
  options.tolerance = g.tolerance;
  if (!sizes.empty()) options.sizes = sizes;
  if (!g.instance_path.empty()) options.instance = load(g).space;
  const auto report = lipfree::run_verification(options);
  emit(g, lipfree::report_to_json(report, with_timing));
  std::cerr << "verify: " << report.passed << " passed, " << report.failed << " failed in "
            << report.duration_seconds << " s\n";
  if (report.instability) return kInstability;
  return report.failed == 0 ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norms and certified decompositions in Lipschitz free spaces of finite metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--instance", g.instance_path, "JSON instance (optionally with moments, carrier, plan, atoms)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out_path, "Write JSON here instead of stdout");
  app.add_option("--tolerance", g.tolerance, "Tolerance for LP-valued comparisons")->capture_default_str();
  app.add_option("--isa", g.isa, "Kernel variant: scalar or avx2 (default: best available)");

  bool ideal = false;
  auto* norm = app.add_subcommand("norm", "Free-space norm by both LP formulations");
  norm->add_flag("--ideal", ideal, "Restrict to functions supported in the carrier");

  auto* rad = app.add_subcommand("rad", "Radius table of the carrier");
  auto* lift = app.add_subcommand("lift", "Optimal quotient lift");

  double c = 0.5;
  bool rescale = false;
  auto* decompose = app.add_subcommand("decompose", "Close-pair decomposition");
  decompose->add_option("--c", c, "Closeness parameter in (0,1)")->required();
  decompose->add_flag("--rescale", rescale, "Rescale the moments to restricted norm 1 - 1e-6");

  auto* rebalance = app.add_subcommand("rebalance", "Sign-separation rebalance");

  std::size_t mass_p = 0;
  double mass_r = 0.0;
  auto* masscheck = app.add_subcommand("masscheck", "Local atom mass bound");
  masscheck->add_option("--p", mass_p, "Ball center")->required();
  masscheck->add_option("--r", mass_r, "Ball radius")->required()->check(CLI::NonNegativeNumber);

  std::vector<lipfree::PointIndex> op_set;
  double theta = 0.0;
  auto* op = app.add_subcommand("operator", "Weighted multiplication operator");
  op->add_option("--set", op_set, "Comma-separated point indices")->required()->delimiter(',');
  op->add_option("--theta", theta, "Ramp width")->required()->check(CLI::PositiveNumber);

  std::size_t rand_n = 8;
  std::string generator = "uniform-cube";
  std::size_t clusters = 0;
  auto* random = app.add_subcommand("random", "Seeded random instance");
  random->add_option("--n", rand_n, "Number of points before adjoining the basepoint")->capture_default_str();
  random->add_option("--generator", generator, "uniform-cube, clustered or two-scale")->capture_default_str();
  random->add_option("--clusters", clusters, "Cluster count (0: automatic)");

  std::size_t trials = 50;
  std::vector<std::size_t> sizes;
  bool with_timing = false;
  auto* verify = app.add_subcommand("verify", "Run the property verification suite");
  verify->add_option("--trials", trials, "Trials per size (or total with --instance)")->capture_default_str();
  verify->add_option("--sizes", sizes, "Comma-separated point counts")->delimiter(',');
  verify->add_flag("--with-timing", with_timing, "Include wall-clock duration in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (!g.isa.empty()) {
      lipfree::kernels::Isa isa;
      if (!lipfree::kernels::parse_isa(g.isa, isa)) throw lipfree::InputError("unknown --isa " + g.isa);
      if (!lipfree::kernels::select(isa)) throw lipfree::InputError(g.isa + " kernels unavailable here");
    }
    if (norm->parsed()) return run_norm(g, ideal);
    if (rad->parsed()) return run_rad(g);
    if (lift->parsed()) return run_lift(g);
    if (decompose->parsed()) return run_decompose(g, c, rescale);
    if (rebalance->parsed()) return run_rebalance(g);
    if (masscheck->parsed()) return run_masscheck(g, mass_p, mass_r);
    if (op->parsed()) return run_operator(g, op_set, theta);
    if (random->parsed()) return run_random(g, rand_n, generator, clusters);
    if (verify->parsed()) return run_verify(g, trials, sizes, with_timing);
  } catch (const lipfree::SolverInstability& e) {
    std::cerr << "solver instability: " << e.what() << "\n";
    return kInstability;
  } catch (const lipfree::NormTooLarge& e) {
    std::cerr << "input error: " << e.what() << " (norm " << e.norm() << ")\n";
    return kInputError;
  } catch (const lipfree::MetricError& e) {
    const auto& w = e.witness();
    std::cerr << "input error: " << e.what() << " (witness " << w[0] << ", " << w[1] << ", " << w[2]
              << ")\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
