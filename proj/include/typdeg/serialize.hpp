#pragma once

#include <json.hpp>

#include "typdeg/analysis.hpp"
#include "typdeg/closedform.hpp"
#include "typdeg/degrees.hpp"
#include "typdeg/montecarlo.hpp"
#include "typdeg/structure.hpp"

namespace typdeg::io {

using Json = nlohmann::ordered_json;

/// {family, n, k?, payload}. Unary and graph payloads are lowercase hex of
/// the structure's index bits (predicate-major / pair order); a function
/// payload is the table as 1-based values.
Json to_json(const structures::Structure& m);
structures::Structure structure_from_json(const Json& j);

/// favorable/total as decimal strings, value as "p/q".
Json to_json(const degrees::DegreeReport& r);
Json to_json(const montecarlo::Estimate& e);
Json to_json(const closedform::BoundPair& b);
Json to_json(const degrees::PartitionCheck& p);
Json to_json(const analysis::SequencePoint& p);
Json to_json(const analysis::ConvergenceReport& r);

}  // namespace typdeg::io
