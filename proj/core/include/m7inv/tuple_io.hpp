#pragma once

#include <json.hpp>

#include "m7inv/classifier.hpp"

namespace m7inv {

/// Parses the JSON tuple document
///   {"free_rank": int, "torsion": [ints], "d": even int,
///    "category": "smooth"|"top", "x_torsion": [ints], "p1_torsion": [ints],
///    "b": [[rational strings]], "q": [rational strings], "gek": rational string}
/// into a validated PhiTuple. Throws std::invalid_argument naming the
/// offending key on any malformed field.
PhiTuple parse_phi_tuple(const nlohmann::json& doc);

/// Emits the document back, bit-exact: rationals as lowest-terms strings.
nlohmann::json phi_tuple_to_json(const PhiTuple& t);

/// Parses {"torsion": [ints], "b": [[rational strings]]}.
LinkingForm parse_linking_form(const nlohmann::json& doc);

nlohmann::json sinvariants_to_json(const SInvariants& s);
nlohmann::json table_to_json(const GeneratorTable& t);

}  // namespace m7inv
