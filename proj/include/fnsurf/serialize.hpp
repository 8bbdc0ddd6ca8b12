#pragma once

#include "fnsurf/calculus.hpp"
#include "fnsurf/darboux.hpp"
#include "fnsurf/graded.hpp"
#include "fnsurf/numeric.hpp"

#include <json.hpp>

namespace fnsurf {

using Json = nlohmann::ordered_json;

/// [{"exps": {"x": 4, ...}, "num": "1", "den": "2"}, ...] in canonical term order.
[[nodiscard]] Json to_json(const Poly& p);
/// Inverse of to_json(Poly); throws std::invalid_argument on malformed input.
[[nodiscard]] Poly poly_from_json(const Json& j);

[[nodiscard]] Json to_json(const Rational& r);
[[nodiscard]] Json to_json(const ParamPoint& p);
[[nodiscard]] Json to_json(const VectorField& v);
[[nodiscard]] VectorField field_from_json(const Json& j);
[[nodiscard]] Json to_json(const ParamConstraint& c);
[[nodiscard]] Json to_json(const DarbouxCertificate& c);
[[nodiscard]] Json to_json(const Table1Report& r);
[[nodiscard]] Json to_json(const std::vector<SearchResult>& results);
[[nodiscard]] Json to_json(const CascadeState& s);
[[nodiscard]] Json to_json(const SuiteReport& r);
[[nodiscard]] Json to_json(const DriftReport& r, bool with_samples = false);

}  // namespace fnsurf
