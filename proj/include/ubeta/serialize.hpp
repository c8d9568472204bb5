#pragma once

// Text and JSON rendering shared by the command-line tool.

#include <string>

#include <json.hpp>

#include "ubeta/admissible.hpp"
#include "ubeta/dimension.hpp"
#include "ubeta/entropy.hpp"

namespace ubeta {

/// 15 significant digits.
std::string format_real(Real x);
/// x rounded to 15 significant digits, as a JSON number.
nlohmann::json json_real(Real x);
nlohmann::json json_enclosure(const Enclosure<Real>& e);
nlohmann::json json_digits(const Word& w);

nlohmann::json to_json(const AdmissibleInterval& iv);
/// Vertices as digit lists and the row-major adjacency matrix.
nlohmann::json to_json(const SftGraph& g);
nlohmann::json to_json(const Word& block, const EntropyResult& e);
nlohmann::json to_json(const DimensionSample& s);

}  // namespace ubeta
