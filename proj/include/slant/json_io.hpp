#pragma once

// JSON wire formats. Parsers throw InvalidInput on schema violations.

#include <string>

#include "json.hpp"
#include "slant/model_space.hpp"
#include "slant/operators.hpp"

namespace slant {

using Json = nlohmann::json;

Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

Json to_json(const InnerFunction& f);
InnerFunction inner_from_json(const Json& j);
/// "z^N" / "z" shorthand or an inline JSON object.
InnerFunction parse_inner(const std::string& text);

Json to_json(const CoefficientVector& v);
CoefficientVector coefficient_vector_from_json(const Json& j);

Json matrix_to_json(const OperatorMatrix& m);
OperatorMatrix matrix_from_json(const Json& j);

Json to_json(const MembershipReport& r);

/// Serialize with every floating value printed to 17 significant digits.
std::string dump(const Json& j, int indent = -1);

}  // namespace slant
