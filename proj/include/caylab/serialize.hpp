#pragma once

#include <json.hpp>

#include <memory>

#include "caylab/autgroup.hpp"

namespace caylab {

using Json = nlohmann::ordered_json;

// Self-contained text documents; all formats round-trip exactly and use the
// fixed basis order throughout.

Json octonion_to_json(const Octonion& x);
Octonion octonion_from_json(const Algebra& A, const Json& j);

Json algebra_to_json(const Algebra& A);
std::shared_ptr<const Algebra> algebra_from_json(const Json& j);

Json linmap_to_json(const LinMap& m);
LinMap linmap_from_json(const Algebra& A, const Json& j);

Json partial_isometry_to_json(const PartialIsometry& p);
PartialIsometry partial_isometry_from_json(const Algebra& A, const Json& j);

Json witness_to_json(const AutWitness& w);
Json verdict_to_json(const TwoLocalVerdict& v);

}  // namespace caylab
