#include "lipfree/instance_io.hpp"

#include <fstream>

namespace lipfree {

namespace {

std::vector<std::vector<double>> read_matrix(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError(std::string(what) + " must be an array of arrays");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw InputError(std::string(what) + " entries must be numbers");
      r.push_back(x.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

PointIndex read_index(const Json& j, std::size_t n) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError("point index must be a nonnegative integer");
  }
  const auto p = j.get<std::size_t>();
  if (p >= n) throw InputError("point index " + std::to_string(p) + " out of range");
  return p;
}

PointIndex parse_key(const std::string& key, std::size_t n) {
  std::size_t pos = 0;
  unsigned long long p = 0;
  try {
    p = std::stoull(key, &pos);
  } catch (const std::exception&) {
    throw InputError("coefficient key '" + key + "' is not a point index");
  }
  if (pos != key.size()) throw InputError("coefficient key '" + key + "' is not a point index");
  if (p >= n) throw InputError("point index " + key + " out of range");
  return static_cast<PointIndex>(p);
}

std::vector<double> coefficients_from_json(const Json& j, std::size_t n) {
  if (!j.is_object()) throw InputError("coefficients must be an object {\"index\": value}");
  std::vector<double> out(n, 0.0);
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw InputError("coefficient for '" + key + "' must be a number");
    out[parse_key(key, n)] += value.get<double>();
  }
  return out;
}

Json coefficients_to_json(std::span<const double> c) {
  Json out = Json::object();
  for (PointIndex p = 0; p < c.size(); ++p) {
    if (c[p] != 0.0) out[std::to_string(p)] = c[p];
  }
  return out;
}

}  // namespace

PointedMetricSpace load_instance(const Json& doc) {
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  if (doc.contains("instance")) return load_instance(doc.at("instance"));
  if (doc.contains("matrix")) {
    const auto m = read_matrix(doc.at("matrix"), "matrix");
    for (const auto& row : m) {
      if (row.size() != m.size()) throw InputError("matrix must be square");
    }
    if (m.empty()) throw InputError("matrix must have at least one point");
    return normalize_and_adjoin_basepoint(m);
  }
  if (doc.contains("points")) {
    const auto pts = read_matrix(doc.at("points"), "points");
    if (pts.empty()) throw InputError("points must be nonempty");
    for (const auto& p : pts) {
      if (p.size() != pts[0].size()) throw InputError("points must share one dimension");
    }
    PointMetric metric = PointMetric::kEuclidean;
    if (doc.contains("metric")) {
      const auto name = doc.at("metric").get<std::string>();
      if (name == "linf") {
        metric = PointMetric::kLInf;
      } else if (name != "euclidean") {
        throw InputError("metric must be \"euclidean\" or \"linf\"");
      }
    }
    return normalize_and_adjoin_basepoint(distance_matrix(pts, metric));
  }
  throw InputError("instance needs \"matrix\" or \"points\"");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json instance_to_json(const PointedMetricSpace& space) {
  return {{"n", space.size()}, {"normalized_matrix", space.matrix_rows()}};
}

MomentVector moments_from_json(const Json& j, std::size_t n) {
  return MomentVector(coefficients_from_json(j, n));
}

Json moments_to_json(const MomentVector& v) { return coefficients_to_json(v.coeffs()); }

PointSet point_set_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("point set must be an array of indices");
  PointSet out(n);
  for (const auto& x : j) out.insert(read_index(x, n));
  return out;
}

Json point_set_to_json(const PointSet& s) { return s.members(); }

AtomVector atoms_from_json(const Json& j, std::span<const double> rad) {
  return AtomVector(coefficients_from_json(j, rad.size()), rad);
}

Json atoms_to_json(const AtomVector& a) { return coefficients_to_json(a.coeffs()); }

TransshipmentPlan plan_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("plan must be an array of flows");
  TransshipmentPlan plan(n);
  for (const auto& f : j) {
    if (!f.is_object() || !f.contains("from") || !f.contains("to") || !f.contains("amount")) {
      throw InputError("flow needs from, to and amount");
    }
    const PointIndex from = read_index(f.at("from"), n);
    const PointIndex to = read_index(f.at("to"), n);
    if (from == to) throw InputError("flow endpoints must differ");
    if (!f.at("amount").is_number()) throw InputError("flow amount must be a number");
    plan.add(from, to, f.at("amount").get<double>());
  }
  return plan;
}

Json plan_to_json(const TransshipmentPlan& plan) {
  Json out = Json::array();
  for (const auto& f : plan.flows()) {
    out.push_back({{"from", f.from}, {"to", f.to}, {"amount", f.amount}});
  }
  return out;
}

Json function_to_json(const LipFunction& f) {
  return std::vector<double>(f.values().begin(), f.values().end());
}

}  // namespace lipfree
