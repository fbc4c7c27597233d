#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "kneser/core.hpp"

namespace kneser {

// One family per line: {"n":7,"k":3,"sets":[[1,2,3],[1,4,5],[2,4,6]]}
// Auxiliary-regime families carry an extra "regime":"auxiliary" field.
// Unknown fields are ignored on input.
nlohmann::ordered_json family_to_json(const Family &family);
std::string family_to_line(const Family &family);

// Throws invalid_input on malformed records or invalid instances/sets.
Family family_from_json(const nlohmann::json &record);
Family parse_family_line(std::string_view line);

} // namespace kneser
