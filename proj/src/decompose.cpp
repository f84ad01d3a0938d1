#include "lipfree/decompose.hpp"

#include <gmpxx.h>

#include <cmath>
#include <sstream>

#include "lipfree/lp.hpp"

namespace lipfree {

double decomposition_cost(const PointedMetricSpace& space, std::span<const double> rad,
                          const TransshipmentPlan& plan, const AtomVector& atoms) {
  return plan.cost(space) + atoms.weighted_cost(rad);
}

std::vector<double> reconstruction(const IdealCarrier& ideal, const TransshipmentPlan& plan,
                                   const AtomVector& atoms) {
  std::vector<double> net = plan.net_flow();
  for (PointIndex p = 0; p < net.size(); ++p) {
    net[p] = ideal.contains(p) ? net[p] + atoms[p] : 0.0;
  }
  return net;
}

double reconstruction_error(const IdealCarrier& ideal, const QuotientDecomposition& d,
                            const MomentVector& v) {
  const auto rec = reconstruction(ideal, d.plan, d.atoms);
  double worst = 0.0;
  for (PointIndex p : ideal.points().members()) worst = std::max(worst, std::fabs(rec[p] - v[p]));
  return worst;
}

namespace {

std::vector<mpq_class> exact_reconstruction(const IdealCarrier& ideal,
                                            const TransshipmentPlan& plan,
                                            const AtomVector& atoms) {
  std::vector<mpq_class> out(atoms.size(), mpq_class(0));
  for (const auto& f : plan.flows()) {
    const mpq_class amount(f.amount);
    out[f.from] += amount;
    out[f.to] -= amount;
  }
  for (PointIndex p = 0; p < out.size(); ++p) {
    if (ideal.contains(p)) {
      out[p] += mpq_class(atoms[p]);
    } else {
      out[p] = 0;
    }
  }
  return out;
}

}  // namespace

bool same_reconstruction_exact(const IdealCarrier& ideal, const TransshipmentPlan& plan_a,
                               const AtomVector& atoms_a, const TransshipmentPlan& plan_b,
                               const AtomVector& atoms_b) {
  return exact_reconstruction(ideal, plan_a, atoms_a) ==
         exact_reconstruction(ideal, plan_b, atoms_b);
}

QuotientDecomposition optimal_lift(const PointedMetricSpace& space, const IdealCarrier& ideal,
                                   const MomentVector& v) {
  const std::size_t n = space.size();
  if (v.size() != n || ideal.universe() != n) throw std::invalid_argument("size mismatch");
  const auto rad = rad_table(space, ideal);
  const auto carrier = ideal.points().members();

  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  for (PointIndex p = 0; p < n; ++p) {
    for (PointIndex q = 0; q < n; ++q) {
      if (p != q) pairs.emplace_back(p, q);
    }
  }
  // Columns: ordered-pair flows, then (a+, a-) per carrier point.
  const std::size_t num_flow = pairs.size();
  const std::size_t width = num_flow + 2 * carrier.size();
  lp::LinearProgram program;
  program.objective.assign(width, 0.0);
  for (std::size_t j = 0; j < num_flow; ++j) {
    program.objective[j] = -space.distance(pairs[j].first, pairs[j].second);
  }
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    program.objective[num_flow + 2 * i] = -rad[carrier[i]];
    program.objective[num_flow + 2 * i + 1] = -rad[carrier[i]];
  }
  // Off-carrier coordinates are invisible to the restricted functionals.
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    const PointIndex p = carrier[i];
    std::vector<double> row(width, 0.0);
    for (std::size_t j = 0; j < num_flow; ++j) {
      if (pairs[j].first == p) row[j] = 1.0;
      if (pairs[j].second == p) row[j] = -1.0;
    }
    row[num_flow + 2 * i] = 1.0;
    row[num_flow + 2 * i + 1] = -1.0;
    program.add(std::move(row), lp::Relation::kEqual, v[p]);
  }
  const lp::Solution sol = lp::solve(program);
  if (sol.unstable || sol.status != lp::Status::kOptimal) {
    throw SolverInstability(std::string("lift LP ended ") + lp::to_string(sol.status) +
                            (sol.unstable ? " (unstable)" : ""));
  }

  QuotientDecomposition out{TransshipmentPlan(n), AtomVector(n), 0.0};
  for (std::size_t j = 0; j < num_flow; ++j) {
    if (sol.x[j] > 0.0) out.plan.add(pairs[j].first, pairs[j].second, sol.x[j]);
  }
  std::vector<double> atoms(n, 0.0);
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    atoms[carrier[i]] = sol.x[num_flow + 2 * i] - sol.x[num_flow + 2 * i + 1];
  }
  out.atoms = AtomVector(std::move(atoms), rad);
  out.cost = decomposition_cost(space, rad, out.plan, out.atoms);
  return out;
}

bool far_pair_inequality(const PointedMetricSpace& space, const IdealCarrier& ideal, PointIndex p,
                         PointIndex q, double c) {
  if (p == q) throw std::invalid_argument("far pair needs distinct points");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0, 1)");
  const double rp = rad(space, ideal, p);
  const double rq = rad(space, ideal, q);
  const double d = space.distance(p, q);
  if (d <= c * std::min(rp, rq)) return true;
  return rp + rq <= 3.0 / c * d + kEpsilon;
}

ClosePairDecomposition close_pairs_decompose(const PointedMetricSpace& space,
                                             const IdealCarrier& ideal, const MomentVector& u,
                                             double c) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0, 1)");
  const double norm = ideal_norm(space, ideal, u).value;
  if (norm >= 1.0) {
    std::ostringstream os;
    os << "restricted norm " << norm << " is not below 1; rescale the input";
    throw NormTooLarge(os.str(), norm);
  }
  const auto rad = rad_table(space, ideal);
  const QuotientDecomposition lift = optimal_lift(space, ideal, u);

  ClosePairDecomposition out;
  out.c = c;
  out.lift_cost = lift.cost;
  out.plan = TransshipmentPlan(space.size());
  std::vector<double> atoms(lift.atoms.coeffs().begin(), lift.atoms.coeffs().end());
  for (const auto& f : lift.plan.flows()) {
    const double d = space.distance(f.from, f.to);
    if (d <= close_radius(rad, f.from, f.to, c)) {
      out.plan.add(f.from, f.to, f.amount);
      continue;
    }
    atoms[f.from] += f.amount;
    atoms[f.to] -= f.amount;
    const double rad_sum = rad[f.from] + rad[f.to];
    const double scaled = 3.0 / c * d;
    out.far_pairs.push_back({f.from, f.to, rad_sum, scaled, rad_sum <= scaled + kEpsilon});
  }
  out.atoms = AtomVector(std::move(atoms), rad);
  out.cost = decomposition_cost(space, rad, out.plan, out.atoms);
  return out;
}

SeparationViolation find_separation_violation(const PointedMetricSpace& space,
                                              std::span<const double> rad,
                                              const AtomVector& atoms) {
  SeparationViolation best;
  double best_key = -1.0;
  for (PointIndex p = 0; p < atoms.size(); ++p) {
    if (atoms[p] == 0.0) continue;
    for (PointIndex q = p + 1; q < atoms.size(); ++q) {
      if (!(atoms[p] * atoms[q] < 0.0)) continue;
      if (!(space.distance(p, q) < (rad[p] + rad[q]) / 2.0)) continue;
      const double key = std::max(std::fabs(atoms[p]), std::fabs(atoms[q]));
      if (key > best_key) {
        best = {true, p, q};
        best_key = key;
      }
    }
  }
  return best;
}

RebalanceResult separated_rebalance(const PointedMetricSpace& space, const IdealCarrier& ideal,
                                    const TransshipmentPlan& plan, const AtomVector& atoms) {
  const std::size_t n = space.size();
  if (plan.size() != n || atoms.size() != n) throw std::invalid_argument("size mismatch");
  const auto rad = rad_table(space, ideal);

  RebalanceResult out{plan, AtomVector(std::vector<double>(atoms.coeffs().begin(),
                                                           atoms.coeffs().end()),
                                       rad),
                      {}, 0};
  out.initial_support = out.atoms.support().size();
  double cost = decomposition_cost(space, rad, out.plan, out.atoms);

  while (true) {
    const SeparationViolation v = find_separation_violation(space, rad, out.atoms);
    if (!v.found) break;
    const PointIndex pos = out.atoms[v.p] > 0.0 ? v.p : v.q;
    const PointIndex neg = pos == v.p ? v.q : v.p;
    const double a_pos = out.atoms[pos];
    const double a_neg = out.atoms[neg];
    const double m = std::min(a_pos, -a_neg);

    // The flow m (delta_pos - delta_neg) replaces m (1_pos - 1_neg). The
    // smaller atom becomes exactly 0; when the larger one's update rounds, the
    // rounding residual (exactly representable) is routed to the basepoint,
    // which lies outside the carrier, so the reconstruction stays exact.
    out.plan.add(pos, neg, m);
    if (a_pos >= -a_neg) {
      out.atoms.set(neg, 0.0);
      const double updated = a_pos - m;
      const double removed = a_pos - updated;
      out.atoms.set(pos, updated);
      if (removed != m) out.plan.add(pos, kBasepoint, removed - m);
    } else {
      out.atoms.set(pos, 0.0);
      const double updated = a_neg + m;
      const double removed = updated - a_neg;
      out.atoms.set(neg, updated);
      if (removed != m) out.plan.add(neg, kBasepoint, m - removed);
    }
    const double next_cost = decomposition_cost(space, rad, out.plan, out.atoms);
    out.steps.push_back({pos, neg, m, cost, next_cost});
    cost = next_cost;
  }
  return out;
}

MassBound mass_bound_check(const PointedMetricSpace& space, const IdealCarrier& ideal,
                           const AtomVector& atoms, PointIndex p, double r) {
  if (atoms.size() != space.size()) throw std::invalid_argument("atom vector size mismatch");
  const auto rad = rad_table(space, ideal);
  MassBound out{0.0, 0.0, kInfinity};
  for (PointIndex q : ball(space, p, r).members()) {
    if (rad[q] == 0.0) {
      std::ostringstream os;
      os << "ball of radius " << r << " around " << p << " contains point " << q
         << " with zero radius";
      throw BallNotInCarrier(os.str(), q);
    }
    out.theta = std::min(out.theta, rad[q]);
    out.mass += std::fabs(atoms[q]);
  }
  out.bound = 4.0 / out.theta;
  return out;
}

}  // namespace lipfree
