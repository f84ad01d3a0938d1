#include "lipfree/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lipfree/kernels.hpp"

namespace lipfree {

LipFunction::LipFunction(std::vector<double> values) : values_(std::move(values)) {
  if (!values_.empty() && values_[0] != 0.0) {
    throw std::invalid_argument("Lipschitz function must vanish at the basepoint");
  }
}

LipFunction LipFunction::shifted(std::vector<double> values) {
  if (!values.empty()) {
    const double base = values[0];
    for (double& v : values) v -= base;
    values[0] = 0.0;
  }
  return LipFunction(std::move(values));
}

PointSet LipFunction::support() const {
  PointSet out(values_.size());
  for (PointIndex p = 0; p < values_.size(); ++p) {
    if (values_[p] != 0.0) out.insert(p);
  }
  return out;
}

double lip_norm(const PointedMetricSpace& space, const LipFunction& f) {
  if (f.size() != space.size()) throw std::invalid_argument("function size mismatch");
  const auto values = f.values();
  double best = 0.0;
  for (PointIndex p = 0; p + 1 < space.size(); ++p) {
    const auto row = space.row(p).subspan(p + 1);
    best = std::max(best, kernels::max_slope(values[p], values.subspan(p + 1), row));
  }
  return best;
}

double lip_constant_on(const PointedMetricSpace& space, const PointSet& set,
                       std::span<const double> values) {
  const auto members = set.members();
  std::vector<double> f;
  std::vector<double> d;
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    f.clear();
    d.clear();
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      f.push_back(values[members[j]]);
      d.push_back(space.distance(members[i], members[j]));
    }
    best = std::max(best, kernels::max_slope(values[members[i]], f, d));
  }
  return best;
}

double sup_norm(const LipFunction& f) {
  double best = 0.0;
  for (double v : f.values()) best = std::max(best, std::fabs(v));
  return best;
}

LipFunction mcshane_extend(const PointedMetricSpace& space, const PointSet& set,
                           std::span<const double> partial) {
  if (partial.size() != space.size() || set.universe() != space.size()) {
    throw std::invalid_argument("partial function size mismatch");
  }
  if (!set.contains(kBasepoint) || partial[kBasepoint] != 0.0) {
    throw std::invalid_argument("McShane extension needs the basepoint in the domain with value 0");
  }
  const double lip = lip_constant_on(space, set, partial);
  const auto members = set.members();
  std::vector<double> out(space.size());
  for (PointIndex x = 0; x < space.size(); ++x) {
    if (set.contains(x)) {
      out[x] = partial[x];
      continue;
    }
    double best = kInfinity;
    for (PointIndex s : members) best = std::min(best, partial[s] + lip * space.distance(s, x));
    out[x] = best;
  }
  return LipFunction(std::move(out));
}

LipFunction tent_bump(const PointedMetricSpace& space, PointIndex p, double h) {
  if (p >= space.size()) throw std::out_of_range("point index out of range");
  if (!(h >= 0.0 && h <= 1.0)) throw std::invalid_argument("tent height must lie in [0, 1]");
  std::vector<double> out(space.size());
  const auto row = space.row(p);
  for (PointIndex x = 0; x < space.size(); ++x) out[x] = std::max(0.0, h - row[x]);
  // h <= 1 = d(p, 0) keeps the basepoint at zero; p itself may be the basepoint.
  return LipFunction::shifted(std::move(out));
}

LipFunction truncate_between(const LipFunction& g_minus, const LipFunction& f,
                             const LipFunction& g_plus) {
  if (g_minus.size() != f.size() || g_plus.size() != f.size()) {
    throw std::invalid_argument("function size mismatch");
  }
  std::vector<double> out(f.size());
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (g_minus[x] > 0.0 || g_plus[x] < 0.0) {
      throw std::invalid_argument("truncation bounds must satisfy g_minus <= 0 <= g_plus");
    }
    out[x] = std::max(g_minus[x], std::min(g_plus[x], f[x]));
  }
  return LipFunction(std::move(out));
}

namespace {

template <typename Op>
LipFunction combine(const LipFunction& f, const LipFunction& g, Op op) {
  if (f.size() != g.size()) throw std::invalid_argument("function size mismatch");
  std::vector<double> out(f.size());
  for (PointIndex x = 0; x < f.size(); ++x) out[x] = op(f[x], g[x]);
  return LipFunction(std::move(out));
}

}  // namespace

LipFunction pointwise_product(const LipFunction& f, const LipFunction& g) {
  return combine(f, g, [](double a, double b) { return a * b; });
}

LipFunction pointwise_max(const LipFunction& f, const LipFunction& g) {
  return combine(f, g, [](double a, double b) { return std::max(a, b); });
}

LipFunction pointwise_min(const LipFunction& f, const LipFunction& g) {
  return combine(f, g, [](double a, double b) { return std::min(a, b); });
}

GlueResult glue_separated(const PointedMetricSpace& space, std::span<const GluePiece> pieces,
                          double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  const std::size_t n = space.size();
  for (const auto& piece : pieces) {
    if (piece.set.universe() != n || piece.values.size() != n) {
      throw std::invalid_argument("glue piece size mismatch");
    }
    if (piece.set.contains(kBasepoint) && piece.values[kBasepoint] != 0.0) {
      throw std::invalid_argument("glue piece must vanish at the basepoint");
    }
    if (lip_constant_on(space, piece.set, piece.values) > 1.0 + kEpsilon) {
      throw std::invalid_argument("glue piece has Lipschitz constant above 1");
    }
    for (PointIndex p : piece.set.members()) {
      if (std::fabs(piece.values[p]) > 1.0 + kEpsilon) {
        throw std::invalid_argument("glue piece has sup norm above 1");
      }
    }
  }
  const double half = theta / 2.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      for (PointIndex p : pieces[i].set.members()) {
        for (PointIndex q : pieces[j].set.members()) {
          const double d = p == q ? 0.0 : space.distance(p, q);
          if (d < half - kMetricTolerance) {
            std::ostringstream os;
            os << "pieces " << i << " and " << j << " are closer than theta/2 at points (" << p
               << ", " << q << "): " << d << " < " << half;
            throw SeparationError(os.str(), p, q);
          }
        }
      }
    }
  }

  PointSet domain(n, {kBasepoint});
  std::vector<double> partial(n, 0.0);
  for (const auto& piece : pieces) {
    for (PointIndex p : piece.set.members()) {
      domain.insert(p);
      partial[p] = piece.values[p];
    }
  }
  GlueResult result{mcshane_extend(space, domain, partial), std::max(1.0, 4.0 / theta), 0.0};
  result.computed_norm = lip_norm(space, result.function);
  return result;
}

}  // namespace lipfree
