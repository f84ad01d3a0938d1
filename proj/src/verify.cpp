#include "lipfree/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lipfree/decompose.hpp"
#include "lipfree/free_norm.hpp"
#include "lipfree/ideal.hpp"
#include "lipfree/lipschitz.hpp"
#include "lipfree/lp.hpp"
#include "lipfree/operators.hpp"
#include "lipfree/random_instance.hpp"

namespace lipfree {

namespace {

enum class Rel { kLessEqual, kEqual, kExact };

struct CheckDef {
  const char* name;
  const char* anchor;
  Rel rel;
};

// Every check the suite emits, with its anchor and comparison kind.
const std::vector<CheckDef>& check_table() {
  static const std::vector<CheckDef> table = {
      {"decompose.close_cost", "lem:quotientclose", Rel::kLessEqual},
      {"decompose.close_reconstruction", "lem:quotientclose", Rel::kEqual},
      {"decompose.close_support", "lem:quotientclose", Rel::kExact},
      {"decompose.far_pair_certificate", "lem:quotientclose", Rel::kLessEqual},
      {"decompose.far_pair_exhaustive", "lem:quotientclose", Rel::kExact},
      {"decompose.lift_canonical", "thm:quotient", Rel::kExact},
      {"decompose.lift_reconstruction", "thm:quotient", Rel::kEqual},
      {"decompose.lower_bound", "thm:quotient", Rel::kLessEqual},
      {"decompose.mass_bound", "lem:quotientfinite", Rel::kLessEqual},
      {"decompose.mass_bound_consistency", "lem:quotientfinite", Rel::kExact},
      {"decompose.pipeline", "lem:quotientseparated", Rel::kEqual},
      {"decompose.quotient_equality", "thm:quotient", Rel::kEqual},
      {"decompose.rebalance_cost", "lem:quotientseparated", Rel::kLessEqual},
      {"decompose.rebalance_exact", "lem:quotientseparated", Rel::kExact},
      {"decompose.rebalance_separation", "lem:quotientseparated", Rel::kExact},
      {"decompose.rebalance_termination", "lem:quotientseparated", Rel::kLessEqual},
      {"free_norm.delta_unit", "sec:prelims", Rel::kEqual},
      {"free_norm.duality", "sec:prelims", Rel::kEqual},
      {"free_norm.embedding_isometry", "sec:prelims", Rel::kEqual},
      {"free_norm.homogeneity", "sec:prelims", Rel::kEqual},
      {"free_norm.plan_cost", "sec:prelims", Rel::kEqual},
      {"free_norm.plan_reconstruction", "sec:prelims", Rel::kEqual},
      {"free_norm.triangle", "sec:prelims", Rel::kLessEqual},
      {"free_norm.weak_upper_bound", "sec:prelims", Rel::kLessEqual},
      {"free_norm.witness_lipschitz", "sec:prelims", Rel::kLessEqual},
      {"free_norm.witness_value", "sec:prelims", Rel::kEqual},
      {"glue.agreement", "thm:Schur", Rel::kExact},
      {"glue.bound", "thm:Schur", Rel::kLessEqual},
      {"glue.tightness", "thm:Schur", Rel::kEqual},
      {"ideal.full_carrier", "sec:ideals", Rel::kEqual},
      {"ideal.monotonicity", "sec:ideals", Rel::kLessEqual},
      {"ideal.q_map_canonical", "sec:ideals", Rel::kExact},
      {"ideal.q_map_contraction", "sec:ideals", Rel::kLessEqual},
      {"ideal.radIinf_margin", "prop:radIinf", Rel::kLessEqual},
      {"ideal.radInorm_delta", "prop:radInorm", Rel::kEqual},
      {"ideal.radInorm_pair", "prop:radInorm", Rel::kEqual},
      {"ideal.rad_lipschitz", "lem:quotientclose", Rel::kLessEqual},
      {"ideal.rad_oracle", "sec:ideals", Rel::kExact},
      {"ideal.rad_range", "sec:ideals", Rel::kExact},
      {"ideal.vanishing", "sec:ideals", Rel::kEqual},
      {"lip.lattice_max", "thm:quotient", Rel::kLessEqual},
      {"lip.lattice_min", "thm:quotient", Rel::kLessEqual},
      {"lip.leibniz", "prop:T", Rel::kLessEqual},
      {"lip.mcshane_agreement", "sec:prelims", Rel::kExact},
      {"lip.mcshane_idempotent", "sec:prelims", Rel::kExact},
      {"lip.mcshane_norm", "sec:prelims", Rel::kEqual},
      {"lip.sup_le_lip", "sec:prelims", Rel::kLessEqual},
      {"lip.tent_bump", "prop:radInorm", Rel::kLessEqual},
      {"lip.truncate_lipschitz", "thm:quotient", Rel::kLessEqual},
      {"lip.truncate_range", "thm:quotient", Rel::kExact},
      {"metric.axioms", "plumbing", Rel::kExact},
      {"metric.ball_monotone", "plumbing", Rel::kExact},
      {"metric.ball_nesting", "prop:radIinf", Rel::kExact},
      {"metric.ball_of_set", "plumbing", Rel::kExact},
      {"operators.adjointness", "prop:T", Rel::kEqual},
      {"operators.fixed_point", "prop:Tconv", Rel::kExact},
      {"operators.idempotent_support", "def:T", Rel::kExact},
      {"operators.linearity", "prop:T", Rel::kEqual},
      {"operators.norm_bound", "prop:T", Rel::kLessEqual},
      {"operators.support_T", "prop:T", Rel::kExact},
      {"operators.support_T_star", "prop:T", Rel::kExact},
      {"operators.support_residual", "prop:T", Rel::kExact},
      {"operators.T_star_bound", "prop:T", Rel::kLessEqual},
      {"operators.T_star_leibniz", "prop:T", Rel::kLessEqual},
      {"operators.weight_formula", "def:T", Rel::kExact},
      {"operators.weight_lipschitz", "def:T", Rel::kLessEqual},
      {"operators.weight_squared", "def:T", Rel::kEqual},
      {"solver.random_lp_feasibility", "plumbing", Rel::kLessEqual},
      {"solver.random_lp_status", "plumbing", Rel::kExact},
      {"solver.stable", "plumbing", Rel::kExact},
  };
  return table;
}

const CheckDef& lookup(const std::string& name) {
  static const std::map<std::string, const CheckDef*> index = [] {
    std::map<std::string, const CheckDef*> m;
    for (const auto& s : check_table()) m[s.name] = &s;
    return m;
  }();
  const auto it = index.find(name);
  if (it == index.end()) throw std::logic_error("unregistered check " + name);
  return *it->second;
}

const char* relation_name(Rel r) {
  switch (r) {
    case Rel::kLessEqual:
      return "<=";
    case Rel::kEqual:
      return "==";
    case Rel::kExact:
      return "exact";
  }
  return "?";
}

// Per-trial aggregation: each check keeps its worst comparison.
class TrialLog {
 public:
  void le(const std::string& name, double lhs, double rhs, double tol) {
    observe(name, Rel::kLessEqual, lhs, rhs, tol, lhs - rhs);
  }
  void eq(const std::string& name, double lhs, double rhs, double tol) {
    observe(name, Rel::kEqual, lhs, rhs, tol, std::fabs(lhs - rhs));
  }
  void exact(const std::string& name, bool ok) {
    Entry& e = entry(name, Rel::kExact, 0.0);
    ++e.observations;
    if (!ok) {
      ++e.violations;
      e.lhs += 1.0;
    }
  }
  void fail(const std::string& name, const std::string& detail) {
    exact(name, false);
    entries_[name].detail = detail;
  }

  void append_records(std::size_t trial, std::vector<CheckRecord>& out) const {
    for (const auto& [name, e] : entries_) {
      out.push_back({name, lookup(name).anchor, trial, relation_name(e.rel), e.lhs, e.rhs, e.tol,
                     e.observations, e.violations == 0, e.detail});
    }
  }

 private:
  struct Entry {
    Rel rel = Rel::kExact;
    double tol = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double worst = 0.0;
    std::size_t observations = 0;
    std::size_t violations = 0;
    std::string detail;
  };

  Entry& entry(const std::string& name, Rel rel, double tol) {
    const CheckDef& def = lookup(name);
    if (def.rel != rel) throw std::logic_error("check " + name + " used with another relation");
    auto [it, fresh] = entries_.try_emplace(name);
    if (fresh) {
      it->second.rel = rel;
      it->second.tol = tol;
    }
    return it->second;
  }

  void observe(const std::string& name, Rel rel, double lhs, double rhs, double tol,
               double margin) {
    Entry& e = entry(name, rel, tol);
    const bool bad = !(margin <= tol);
    const bool first_bad = bad && e.violations == 0;
    if (e.observations == 0 || first_bad || (bad == (e.violations > 0) && margin > e.worst)) {
      e.worst = margin;
      e.lhs = lhs;
      e.rhs = rhs;
      e.tol = tol;
    }
    ++e.observations;
    if (bad) ++e.violations;
  }

  std::map<std::string, Entry> entries_;
};

constexpr double kTight = 1e-9;
constexpr double kRound = 1e-12;

MomentVector random_moments(Rng& rng, std::size_t n) {
  MomentVector v(n);
  if (n < 2) return v;
  for (PointIndex p = 1; p < n; ++p) {
    if (rng.bernoulli(0.5)) v.set(p, rng.uniform(-1.0, 1.0));
  }
  v.set(1 + rng.index(n - 1), rng.uniform(-1.0, 1.0));
  return v;
}

LipFunction random_function(Rng& rng, std::size_t n) {
  std::vector<double> values(n, 0.0);
  for (PointIndex p = 1; p < n; ++p) values[p] = rng.uniform(-1.0, 1.0);
  return LipFunction(std::move(values));
}

PointSet random_subset(Rng& rng, std::size_t n, double prob, bool with_basepoint) {
  PointSet s(n);
  for (PointIndex p = with_basepoint ? 0 : 1; p < n; ++p) {
    if (rng.bernoulli(prob)) s.insert(p);
  }
  return s;
}

PointIndex random_member(Rng& rng, const PointSet& s) {
  const auto m = s.members();
  return m[rng.index(m.size())];
}

std::vector<PointIndex> shuffled_points(Rng& rng, std::size_t n) {
  std::vector<PointIndex> order;
  for (PointIndex p = 1; p < n; ++p) order.push_back(p);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  return order;
}

double brute_dist_to_set(const PointedMetricSpace& X, const PointSet& s, PointIndex x) {
  double best = kInfinity;
  for (PointIndex e = 0; e < X.size(); ++e) {
    if (s.contains(e)) best = std::min(best, X.distance(e, x));
  }
  return best;
}

// Exhaustive scan over candidate radii: the smallest d(p,x) whose closed ball
// leaves the carrier, capped at 1.
double rad_oracle(const PointedMetricSpace& X, const IdealCarrier& A, PointIndex p) {
  if (!A.contains(p)) return 0.0;
  double best = 1.0;
  for (PointIndex c = 0; c < X.size(); ++c) {
    const double r = X.distance(p, c);
    bool inside = true;
    for (PointIndex x = 0; x < X.size(); ++x) {
      if (X.distance(p, x) <= r && !A.contains(x)) inside = false;
    }
    if (!inside) best = std::min(best, r);
  }
  return best;
}

void check_metric(const PointedMetricSpace& X, Rng& rng, TrialLog& log) {
  bool ok = true;
  try {
    (void)PointedMetricSpace::from_normalized(X.matrix(), X.size());
  } catch (const MetricError&) {
    ok = false;
  }
  log.exact("metric.axioms", ok);
  const std::size_t n = X.size();
  for (int i = 0; i < 4; ++i) {
    const PointIndex p = rng.index(n);
    const double r = rng.uniform();
    const double r2 = rng.uniform(r, 1.0);
    const PointSet inner = ball(X, p, r);
    log.exact("metric.ball_monotone", inner.is_subset_of(ball(X, p, r2)) && inner.contains(p));
    const double s = rng.uniform(0.0, 0.5);
    for (PointIndex q : inner.members()) {
      log.exact("metric.ball_nesting", ball(X, q, s).is_subset_of(ball(X, p, r + s)));
    }
    PointSet e = random_subset(rng, n, 0.3, true);
    e.insert(rng.index(n));
    const double rr = rng.uniform();
    const PointSet grown = ball_of_set(X, e, rr);
    for (PointIndex x = 0; x < n; ++x) {
      log.exact("metric.ball_of_set", grown.contains(x) == (brute_dist_to_set(X, e, x) <= rr));
    }
  }
}

void check_solver(Rng& rng, TrialLog& log) {
  const std::size_t k = 3 + rng.index(4);
  const std::size_t m = 4 + rng.index(5);
  lp::LinearProgram program;
  program.objective.resize(k);
  for (double& c : program.objective) c = rng.uniform(-1.0, 1.0);
  std::vector<double> x0(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double hi = rng.uniform(1.0, 3.0);
    program.bounds.push_back({0.0, hi});
    x0[j] = rng.uniform(0.0, hi);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(k);
    for (double& a : row) a = rng.uniform(-1.0, 1.0);
    if (i == 0) {
      double rhs = 0.0;
      for (std::size_t j = 0; j < k; ++j) rhs += row[j] * x0[j];
      program.add(std::move(row), lp::Relation::kEqual, rhs);
    } else {
      double rhs = rng.uniform(0.5, 2.0);
      for (std::size_t j = 0; j < k; ++j) rhs += std::max(0.0, row[j] * x0[j]);
      program.add(std::move(row), lp::Relation::kLessEqual, rhs);
    }
  }
  const lp::Solution sol = lp::solve(program);
  log.exact("solver.random_lp_status", sol.status == lp::Status::kOptimal && !sol.unstable);
  if (sol.status == lp::Status::kOptimal) {
    log.le("solver.random_lp_feasibility", lp::max_violation(program, sol.x), 0.0, kTight);
  }
}

void check_free_norm(const PointedMetricSpace& X, Rng& rng, TrialLog& log, double tol) {
  const std::size_t n = X.size();
  std::vector<MomentVector> vs;
  std::vector<double> norms;
  for (int i = 0; i < 10; ++i) {
    MomentVector v = random_moments(rng, n);
    const DualNorm dual = free_norm_dual(X, v);
    const PrimalNorm primal = free_norm_primal(X, v);
    log.eq("free_norm.duality", primal.value, dual.value, tol);
    log.eq("free_norm.witness_value", eval(v, dual.witness), dual.value, tol);
    log.le("free_norm.witness_lipschitz", lip_norm(X, dual.witness), 1.0, kTight);
    const auto net = primal.plan.net_flow();
    for (PointIndex p = 1; p < n; ++p) log.eq("free_norm.plan_reconstruction", net[p], v[p], kTight);
    log.eq("free_norm.plan_cost", primal.plan.cost(X), primal.value, kTight);
    log.le("free_norm.weak_upper_bound", dual.value, v.l1_mass(), tol);
    vs.push_back(std::move(v));
    norms.push_back(dual.value);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = rng.uniform(-3.0, 3.0);
    log.eq("free_norm.homogeneity", free_norm_dual(X, vs[i] * t).value, std::fabs(t) * norms[i],
           tol);
    log.le("free_norm.triangle", free_norm_dual(X, vs[i] + vs[i + 1]).value,
           norms[i] + norms[i + 1], tol);
  }
  for (PointIndex p = 1; p < n; ++p) {
    log.eq("free_norm.delta_unit", free_norm_dual(X, MomentVector::delta(n, p)).value, 1.0, tol);
    for (PointIndex q = p + 1; q < n; ++q) {
      const MomentVector v = MomentVector::delta(n, p) - MomentVector::delta(n, q);
      log.eq("free_norm.embedding_isometry", free_norm_dual(X, v).value, X.distance(p, q), tol);
    }
  }
}

LipFunction negated(const LipFunction& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x = -x;
  return LipFunction(std::move(v));
}

void check_lipschitz(const PointedMetricSpace& X, Rng& rng, TrialLog& log) {
  const std::size_t n = X.size();
  for (int i = 0; i < 3; ++i) {
    const LipFunction f = random_function(rng, n);
    const LipFunction g = random_function(rng, n);
    const double lf = lip_norm(X, f);
    const double lg = lip_norm(X, g);
    const double sf = sup_norm(f);
    const double sg = sup_norm(g);
    log.le("lip.sup_le_lip", sf, lf, kRound);
    log.le("lip.leibniz", lip_norm(X, pointwise_product(f, g)), lf * sg + sf * lg, kTight);
    log.le("lip.lattice_max", lip_norm(X, pointwise_max(f, g)), std::max(lf, lg), kTight);
    log.le("lip.lattice_min", lip_norm(X, pointwise_min(f, g)), std::max(lf, lg), kTight);

    PointSet s = random_subset(rng, n, 0.5, false);
    s.insert(kBasepoint);
    const LipFunction ext = mcshane_extend(X, s, f.values());
    bool agree = true;
    for (PointIndex p : s.members()) agree = agree && ext[p] == f[p];
    log.exact("lip.mcshane_agreement", agree);
    log.eq("lip.mcshane_norm", lip_norm(X, ext), lip_constant_on(X, s, f.values()), kTight);
    log.exact("lip.mcshane_idempotent", mcshane_extend(X, PointSet::all(n), f.values()) == f);

    const PointIndex p = rng.index(n);
    const double h = rng.uniform();
    const LipFunction tent = tent_bump(X, p, h);
    log.le("lip.tent_bump", lip_norm(X, tent), 1.0, kRound);

    // Tents centred off the basepoint stay nonnegative.
    const LipFunction gp = tent_bump(X, 1 + rng.index(n - 1), rng.uniform());
    const LipFunction gm = negated(tent_bump(X, 1 + rng.index(n - 1), rng.uniform()));
    const LipFunction t = truncate_between(gm, f, gp);
    bool in_range = true;
    for (PointIndex x = 0; x < n; ++x) in_range = in_range && gm[x] <= t[x] && t[x] <= gp[x];
    log.exact("lip.truncate_range", in_range);
    log.le("lip.truncate_lipschitz", lip_norm(X, t),
           std::max({lip_norm(X, gm), lf, lip_norm(X, gp)}), kTight);
  }
}

void check_glue(const PointedMetricSpace& X, Rng& rng, TrialLog& log) {
  const std::size_t n = X.size();
  for (int i = 0; i < 2; ++i) {
    const double theta = rng.uniform(0.1, 1.5);
    std::vector<PointSet> sets;
    PointSet used(n);
    if (rng.bernoulli(0.3)) {
      sets.emplace_back(n, std::initializer_list<PointIndex>{kBasepoint});
      used.insert(kBasepoint);
    }
    for (PointIndex x : shuffled_points(rng, n)) {
      if (used.contains(x)) continue;
      const double radius = rng.uniform(0.0, theta / 2.0);
      PointSet piece(n);
      for (PointIndex y = 1; y < n; ++y) {
        if (!used.contains(y) && X.distance(x, y) <= radius) piece.insert(y);
      }
      bool separated = true;
      for (PointIndex y : piece.members()) {
        for (PointIndex z : used.members()) separated = separated && X.distance(y, z) >= theta / 2.0;
      }
      if (!separated) continue;
      used = used.set_union(piece);
      sets.push_back(std::move(piece));
    }
    std::vector<GluePiece> pieces;
    for (const PointSet& s : sets) {
      std::vector<double> values(n, 0.0);
      for (PointIndex p : s.members()) values[p] = p == kBasepoint ? 0.0 : rng.uniform(-1.0, 1.0);
      double sup = 0.0;
      for (double v : values) sup = std::max(sup, std::fabs(v));
      const double scale = std::max({1.0, sup, lip_constant_on(X, s, values)});
      for (double& v : values) v /= scale;
      pieces.push_back({s, std::move(values)});
    }
    const GlueResult glued = glue_separated(X, pieces, theta);
    log.le("glue.bound", glued.computed_norm, glued.bound, kTight);
    bool agree = glued.function[kBasepoint] == 0.0;
    for (const auto& piece : pieces) {
      for (PointIndex p : piece.set.members()) agree = agree && glued.function[p] == piece.values[p];
    }
    log.exact("glue.agreement", agree);
  }
  if (n >= 3) {
    const PointIndex p = 1 + rng.index(n - 1);
    PointIndex q = 1 + rng.index(n - 2);
    if (q >= p) ++q;
    const double theta = 2.0 * X.distance(p, q);
    std::vector<double> plus(n, 0.0), minus(n, 0.0);
    plus[p] = 1.0;
    minus[q] = -1.0;
    const std::vector<GluePiece> pieces = {{PointSet(n, {p}), plus}, {PointSet(n, {q}), minus}};
    const GlueResult glued = glue_separated(X, pieces, theta);
    log.eq("glue.tightness", glued.computed_norm, std::max(1.0, 4.0 / theta), kTight);
  }
}

std::vector<IdealCarrier> random_carriers(Rng& rng, std::size_t n) {
  std::vector<IdealCarrier> out;
  out.emplace_back(PointSet::all(n));
  for (int i = 0; i < 4; ++i) out.emplace_back(random_subset(rng, n, 0.6, false));
  return out;
}

void check_ideal(const PointedMetricSpace& X, const std::vector<IdealCarrier>& carriers, Rng& rng,
                 TrialLog& log, double tol) {
  const std::size_t n = X.size();
  for (std::size_t k = 0; k < carriers.size(); ++k) {
    const IdealCarrier& A = carriers[k];
    const auto table = rad_table(X, A);
    for (PointIndex p = 0; p < n; ++p) {
      log.exact("ideal.rad_oracle", table[p] == rad_oracle(X, A, p) && rad(X, A, p) == table[p]);
      log.exact("ideal.rad_range", table[p] <= 1.0 && (table[p] == 0.0) == !A.contains(p));
    }
    for (PointIndex p : A.points().members()) {
      for (PointIndex q : A.points().members()) {
        if (p < q) log.le("ideal.rad_lipschitz", std::fabs(table[p] - table[q]), X.distance(p, q), kRound);
      }
    }
    for (PointIndex p = 1; p < n; ++p) {
      log.eq("ideal.radInorm_delta", ideal_norm(X, A, MomentVector::delta(n, p)).value, table[p], tol);
      for (PointIndex q = p + 1; q < n; ++q) {
        const MomentVector v = MomentVector::delta(n, p) - MomentVector::delta(n, q);
        log.eq("ideal.radInorm_pair", ideal_norm(X, A, v).value,
               std::min(X.distance(p, q), table[p] + table[q]), tol);
      }
    }

    std::vector<double> raw(n);
    for (double& a : raw) a = rng.uniform(-1.0, 1.0);
    const AtomVector atoms(raw, table);
    const MomentVector qa = q_map(X, A, atoms);
    bool canonical = true;
    for (PointIndex p = 0; p < n; ++p) canonical = canonical && (table[p] > 0.0 || qa[p] == 0.0);
    log.exact("ideal.q_map_canonical", canonical);
    log.le("ideal.q_map_contraction", ideal_norm(X, A, qa).value, atoms.weighted_cost(table), tol);

    MomentVector off(n);
    for (PointIndex p = 1; p < n; ++p) {
      if (!A.contains(p)) off.set(p, rng.uniform(-1.0, 1.0));
    }
    if (!off.is_zero()) log.eq("ideal.vanishing", ideal_norm(X, A, off).value, 0.0, kTight);

    const MomentVector v = random_moments(rng, n);
    const IdealCarrier larger(A.points().set_union(carriers[(k + 1) % carriers.size()].points()));
    const double small_norm = ideal_norm(X, A, v).value;
    const double large_norm = ideal_norm(X, larger, v).value;
    const double free = free_norm_dual(X, v).value;
    log.le("ideal.monotonicity", small_norm, large_norm, tol);
    log.le("ideal.monotonicity", large_norm, free, tol);
    if (A.points().size() + 1 == n) log.eq("ideal.full_carrier", small_norm, free, tol);

    for (PointIndex p : A.points().members()) {
      const double outer = table[p] * rng.uniform(0.05, 1.0);
      const double r = rng.bernoulli(0.2) ? 0.0 : outer * rng.uniform();
      log.le("ideal.radIinf_margin", outer - r, radiinf_margin(X, A, p, r, outer), kRound);
    }
  }
}

void check_operators(const PointedMetricSpace& X, Rng& rng, TrialLog& log, double tol) {
  const std::size_t n = X.size();
  for (int i = 0; i < 3; ++i) {
    PointSet e = random_subset(rng, n, 0.3, true);
    e.insert(rng.index(n));
    const double theta = rng.uniform(0.05, 1.2);
    const WeightProfile prof = weight(X, e, theta);
    const PointSet near = ball_of_set(X, e, theta);
    const PointSet core = ball_of_set(X, e, theta / 2.0);

    bool formula = true;
    for (PointIndex x = 0; x < n; ++x) {
      const double d = brute_dist_to_set(X, e, x);
      const double expected = std::max(0.0, std::min(1.0, 2.0 - 2.0 * (d / theta)));
      formula = formula && prof.w[x] == expected && (d > 0.0 || prof.w[x] == 1.0) &&
                (d < theta || prof.w[x] == 0.0);
    }
    log.exact("operators.weight_formula", formula);
    log.le("operators.weight_lipschitz", lip_constant_on(X, PointSet::all(n), prof.w), 2.0 / theta,
           kTight);

    for (int j = 0; j < 2; ++j) {
      const MomentVector v = random_moments(rng, n);
      const MomentVector tv = apply_T(v, prof);
      const MomentVector rest = v - tv;
      const PointSet sv = v.support();
      log.exact("operators.support_T", tv.support().is_subset_of(sv.set_intersection(near)));
      log.exact("operators.support_residual", rest.support().is_subset_of(sv.set_difference(core)));
      log.le("operators.norm_bound", free_norm_dual(X, tv).value,
             operator_bound(theta) * free_norm_dual(X, v).value, tol);

      const MomentVector ttv = apply_T(tv, prof);
      log.exact("operators.idempotent_support", ttv.support() == tv.support());
      for (PointIndex p = 0; p < n; ++p) {
        log.eq("operators.weight_squared", ttv[p], v[p] * (prof.w[p] * prof.w[p]), kRound);
      }

      const MomentVector u = random_moments(rng, n);
      const double alpha = rng.uniform(-2.0, 2.0);
      const double beta = rng.uniform(-2.0, 2.0);
      const MomentVector lhs = apply_T(u * alpha + v * beta, prof);
      const MomentVector rhs = apply_T(u, prof) * alpha + tv * beta;
      for (PointIndex p = 0; p < n; ++p) log.eq("operators.linearity", lhs[p], rhs[p], kRound);

      const LipFunction f = random_function(rng, n);
      const LipFunction tf = apply_T_star(f, prof);
      log.eq("operators.adjointness", eval(tv, f), eval(v, tf), kRound);
      bool supported = true;
      for (PointIndex x = 0; x < n; ++x) {
        if (tf[x] != 0.0) supported = supported && f[x] != 0.0 && near.contains(x);
      }
      log.exact("operators.support_T_star", supported);
      const double lf = lip_norm(X, f);
      const double ltf = lip_norm(X, tf);
      log.le("operators.T_star_leibniz", ltf, lf + 2.0 / theta * sup_norm(f), kTight);
      log.le("operators.T_star_bound", ltf, operator_bound(theta) * lf, kTight);

      log.exact("operators.fixed_point", fixed_point_check(X, v, theta));
      const PointSet superset = sv.set_union(random_subset(rng, n, 0.3, true));
      log.exact("operators.fixed_point", fixed_point_check(X, v, superset, theta));
    }
  }
}

bool separated_exactly(const PointedMetricSpace& X, std::span<const double> table,
                       const AtomVector& a) {
  for (PointIndex p = 0; p < a.size(); ++p) {
    for (PointIndex q = p + 1; q < a.size(); ++q) {
      if (a[p] * a[q] < 0.0 && X.distance(p, q) < (table[p] + table[q]) / 2.0) return false;
    }
  }
  return true;
}

void check_rebalance(const PointedMetricSpace& X, const IdealCarrier& A,
                     std::span<const double> table, const TransshipmentPlan& plan,
                     const AtomVector& atoms, const RebalanceResult& rb, TrialLog& log) {
  log.le("decompose.rebalance_termination", static_cast<double>(rb.steps.size()),
         static_cast<double>(atoms.support().size()), 0.0);
  log.exact("decompose.rebalance_exact", same_reconstruction_exact(A, plan, atoms, rb.plan, rb.atoms));
  for (const auto& step : rb.steps) {
    log.le("decompose.rebalance_cost", step.cost_after, step.cost_before, kTight);
  }
  log.le("decompose.rebalance_cost", decomposition_cost(X, table, rb.plan, rb.atoms),
         decomposition_cost(X, table, plan, atoms), kTight);
  log.exact("decompose.rebalance_separation", separated_exactly(X, table, rb.atoms));
}

void check_mass(const PointedMetricSpace& X, const IdealCarrier& A, std::span<const double> table,
                const AtomVector& atoms, Rng& rng, TrialLog& log, double tol) {
  for (PointIndex p : A.points().members()) {
    const double outer = table[p] * rng.uniform(0.05, 1.0);
    const double r = rng.bernoulli(0.2) ? 0.0 : outer * rng.uniform();
    double theta = kInfinity;
    double mass = 0.0;
    for (PointIndex q = 0; q < X.size(); ++q) {
      if (X.distance(p, q) <= r) {
        theta = std::min(theta, table[q]);
        mass += std::fabs(atoms[q]);
      }
    }
    log.le("decompose.mass_bound", mass, 4.0 / theta, tol);
    const MassBound mb = mass_bound_check(X, A, atoms, p, r);
    log.exact("decompose.mass_bound_consistency", mb.mass == mass && mb.theta == theta &&
                                                      mb.bound == 4.0 / theta);
  }
}

void check_decompose(const PointedMetricSpace& X, const std::vector<IdealCarrier>& carriers,
                     Rng& rng, TrialLog& log, double tol) {
  const std::size_t n = X.size();
  for (const IdealCarrier& A : carriers) {
    if (A.points().empty()) continue;
    const auto table = rad_table(X, A);
    MomentVector v = random_moments(rng, n);
    v.set(random_member(rng, A.points()), rng.uniform(-1.0, 1.0));

    const double norm = ideal_norm(X, A, v).value;
    const QuotientDecomposition lift = optimal_lift(X, A, v);
    log.eq("decompose.quotient_equality", lift.cost, norm, tol);
    log.eq("decompose.lift_reconstruction", reconstruction_error(A, lift, v), 0.0, kTight);
    bool canonical = true;
    for (PointIndex p = 0; p < n; ++p) canonical = canonical && (table[p] > 0.0 || lift.atoms[p] == 0.0);
    log.exact("decompose.lift_canonical", canonical);

    // Feasible decompositions built without the lift LP.
    const AtomVector all_atoms(std::vector<double>(v.coeffs().begin(), v.coeffs().end()), table);
    log.le("decompose.lower_bound", norm, all_atoms.weighted_cost(table), tol);
    log.le("decompose.lower_bound", norm, free_norm_primal(X, v).value, tol);
    const double t = rng.uniform();
    std::vector<double> part(n, 0.0);
    for (PointIndex p : A.points().members()) part[p] = t * v[p];
    const AtomVector part_atoms(part, table);
    const PrimalNorm rest = free_norm_primal(X, v - MomentVector(part));
    log.le("decompose.lower_bound", norm,
           decomposition_cost(X, table, rest.plan, part_atoms), tol);

    if (!(norm > kTight)) continue;
    const MomentVector u = v * ((1.0 - 1e-6) / norm);
    for (double c : {0.5, 0.9, 0.99}) {
      const ClosePairDecomposition cp = close_pairs_decompose(X, A, u, c);
      bool close = true;
      for (const auto& f : cp.plan.flows()) {
        close = close && X.distance(f.from, f.to) <= c * std::min(table[f.from], table[f.to]);
      }
      log.exact("decompose.close_support", close);
      log.le("decompose.close_cost", cp.cost, 3.0 / c, tol);
      const QuotientDecomposition as_quotient{cp.plan, cp.atoms, cp.cost};
      log.eq("decompose.close_reconstruction", reconstruction_error(A, as_quotient, u), 0.0, kTight);
      for (const auto& fp : cp.far_pairs) {
        log.le("decompose.far_pair_certificate", table[fp.p] + table[fp.q],
               3.0 / c * X.distance(fp.p, fp.q), kTight);
      }
      for (PointIndex p = 0; p < n; ++p) {
        for (PointIndex q = p + 1; q < n; ++q) {
          log.exact("decompose.far_pair_exhaustive", far_pair_inequality(X, A, p, q, c));
        }
      }
      const RebalanceResult rb = separated_rebalance(X, A, cp.plan, cp.atoms);
      check_rebalance(X, A, table, cp.plan, cp.atoms, rb, log);
      const QuotientDecomposition final_d{rb.plan, rb.atoms, 0.0};
      log.eq("decompose.pipeline", reconstruction_error(A, final_d, u), 0.0, kTight);
    }

    // Separated decompositions of combined cost below 1 for the mass bound.
    const QuotientDecomposition lift_u = optimal_lift(X, A, u);
    const RebalanceResult sep_lift = separated_rebalance(X, A, lift_u.plan, lift_u.atoms);
    check_rebalance(X, A, table, lift_u.plan, lift_u.atoms, sep_lift, log);
    if (decomposition_cost(X, table, sep_lift.plan, sep_lift.atoms) < 1.0) {
      check_mass(X, A, table, sep_lift.atoms, rng, log, tol);
    }
    const double weighted = all_atoms.weighted_cost(table);
    if (weighted > 0.0) {
      std::vector<double> scaled(all_atoms.coeffs().begin(), all_atoms.coeffs().end());
      for (double& a : scaled) a *= 0.999 / weighted;
      const AtomVector start(std::move(scaled), table);
      const TransshipmentPlan empty(n);
      const RebalanceResult sep = separated_rebalance(X, A, empty, start);
      check_rebalance(X, A, table, empty, start, sep, log);
      if (decomposition_cost(X, table, sep.plan, sep.atoms) < 1.0) {
        check_mass(X, A, table, sep.atoms, rng, log, tol);
      }
    }
  }
}

void run_trial(const PointedMetricSpace& X, Rng& rng, TrialLog& log, double tol,
               bool& instability) {
  try {
    check_metric(X, rng, log);
    check_solver(rng, log);
    check_free_norm(X, rng, log, tol);
    check_lipschitz(X, rng, log);
    check_glue(X, rng, log);
    const auto carriers = random_carriers(rng, X.size());
    check_ideal(X, carriers, rng, log, tol);
    check_operators(X, rng, log, tol);
    check_decompose(X, carriers, rng, log, tol);
    log.exact("solver.stable", true);
  } catch (const SolverInstability& e) {
    instability = true;
    log.fail("solver.stable", e.what());
  }
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : check_table()) out.push_back(s.name);
    std::sort(out.begin(), out.end());
    return out;
  }();
  return names;
}

VerificationReport run_verification(const VerifyOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("verify needs at least one trial");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.options = options;

  const Generator generators[] = {Generator::kUniformCube, Generator::kClustered,
                                  Generator::kTwoScale};
  std::size_t trial = 0;
  auto run = [&](const PointedMetricSpace& X) {
    Rng rng(options.seed, {trial, X.size(), 0x7e57});
    TrialLog log;
    run_trial(X, rng, log, options.tolerance, report.instability);
    log.append_records(trial, report.records);
    ++trial;
  };

  if (options.instance) {
    for (std::size_t t = 0; t < options.trials; ++t) {
      report.instances.push_back({trial, options.instance->size() - 1, "instance", options.seed});
      run(*options.instance);
    }
  } else {
    for (std::size_t n : options.sizes) {
      for (std::size_t t = 0; t < options.trials; ++t) {
        const Generator g = generators[trial % 3];
        const std::uint64_t instance_seed = Rng(options.seed, {trial, n}).next();
        report.instances.push_back({trial, n, to_string(g), instance_seed});
        run(random_instance(instance_seed, n, g).space);
      }
    }
  }

  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) {
                     if (a.name != b.name) return a.name < b.name;
                     return a.trial < b.trial;
                   });
  for (const auto& r : report.records) (r.pass ? report.passed : report.failed)++;
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json report_to_json(const VerificationReport& report, bool with_timing) {
  auto record_json = [](const CheckRecord& r) {
    Json j = {{"name", r.name},         {"anchor", r.anchor},   {"trial", r.trial},
              {"relation", r.relation}, {"lhs", r.lhs},         {"rhs", r.rhs},
              {"tolerance", r.tolerance}, {"observations", r.observations}, {"pass", r.pass}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
  };
  Json out;
  out["schema"] = 1;
  const VerifyOptions& o = report.options;
  out["config"] = {{"seed", o.seed}, {"trials", o.trials}, {"tolerance", o.tolerance}};
  if (o.instance) {
    out["instance"] = instance_to_json(*o.instance);
  } else {
    out["config"]["sizes"] = o.sizes;
    out["config"]["generators"] = {"uniform-cube", "clustered", "two-scale"};
  }
  Json instances = Json::array();
  for (const auto& d : report.instances) {
    instances.push_back({{"trial", d.trial}, {"n", d.n}, {"generator", d.generator}, {"seed", d.seed}});
  }
  out["instances"] = std::move(instances);
  Json records = Json::array();
  Json failures = Json::array();
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_check;
  for (const auto& r : report.records) {
    records.push_back(record_json(r));
    if (!r.pass) failures.push_back(record_json(r));
    auto& counts = per_check[r.name];
    (r.pass ? counts.first : counts.second)++;
  }
  Json checks = Json::object();
  for (const auto& [name, counts] : per_check) {
    checks[name] = {{"anchor", lookup(name).anchor}, {"passed", counts.first}, {"failed", counts.second}};
  }
  out["summary"] = {{"records", report.records.size()},
                    {"passed", report.passed},
                    {"failed", report.failed},
                    {"instability", report.instability},
                    {"checks", std::move(checks)}};
  out["failures"] = std::move(failures);
  out["records"] = std::move(records);
  if (with_timing) out["duration_seconds"] = report.duration_seconds;
  return out;
}

}  // namespace lipfree
