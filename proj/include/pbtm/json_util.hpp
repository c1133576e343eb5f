#pragma once

#include "json.hpp"
#include "pbtm/interval.hpp"
#include "pbtm/rational.hpp"

namespace pbtm {

// Finite endpoints serialize as numbers, infinities as "-inf"/"+inf".
nlohmann::json endpoint_to_json(const IntervalEndpoint& e);
IntervalEndpoint endpoint_from_json(const nlohmann::json& j);

nlohmann::json interval_to_json(const Interval& interval);
Interval interval_from_json(const nlohmann::json& j);

/// {"value": exact string, "approx": double} — exact for reproducibility,
/// approx for humans and plotting.
nlohmann::json rational_to_json(const Rational& r);

}  // namespace pbtm
