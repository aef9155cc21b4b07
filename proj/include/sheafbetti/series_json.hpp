#pragma once

#include <json.hpp>

#include "sheafbetti/puiseux_series.hpp"

namespace sheafbetti {

// Serialized form:
//   {"lattice_den": 24, "cutoff": <int or null when exact>,
//    "terms": [{"q_num": <int>, "coeff": <coefficient>}, ...]}
// A Rational coefficient is the string "p/q"; a WRational coefficient is
//   {"num": [[wexp, "p/q"], ...], "den": [[wexp, "p/q"], ...]}.
// Terms are sorted by q_num.

nlohmann::json to_json_value(const Rational& c);
nlohmann::json to_json_value(const WRational& c);
nlohmann::json to_json_value(const RationalSeries& s);
nlohmann::json to_json_value(const WSeries& s);

/// Throws std::invalid_argument on malformed input or a lattice mismatch.
RationalSeries rational_series_from_json(const nlohmann::json& j);
WSeries wseries_from_json(const nlohmann::json& j);

}  // namespace sheafbetti
