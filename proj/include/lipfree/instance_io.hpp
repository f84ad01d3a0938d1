#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lipfree/decompose.hpp"
#include "lipfree/free_norm.hpp"
#include "lipfree/ideal.hpp"
#include "lipfree/lipschitz.hpp"
#include "lipfree/metric.hpp"

namespace lipfree {

using Json = nlohmann::json;

/// Malformed or inconsistent JSON input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {"matrix": [[...]]} or {"points": [[...]], "metric": "euclidean"|"linf"},
/// both raw; a document with an "instance" member is unwrapped first.
/// Metric violations propagate as MetricError.
PointedMetricSpace load_instance(const Json& doc);
Json read_json_file(const std::string& path);

/// {"n": ..., "normalized_matrix": [[...]]}
Json instance_to_json(const PointedMetricSpace& space);

/// {"3": 0.5, ...}, indices into the normalized space (basepoint is 0).
MomentVector moments_from_json(const Json& j, std::size_t n);
Json moments_to_json(const MomentVector& v);

PointSet point_set_from_json(const Json& j, std::size_t n);
Json point_set_to_json(const PointSet& s);

/// Atoms share the moment format; canonicalized against `rad`.
AtomVector atoms_from_json(const Json& j, std::span<const double> rad);
Json atoms_to_json(const AtomVector& a);

/// [{"from": p, "to": q, "amount": x}, ...]
TransshipmentPlan plan_from_json(const Json& j, std::size_t n);
Json plan_to_json(const TransshipmentPlan& plan);

Json function_to_json(const LipFunction& f);

}  // namespace lipfree
