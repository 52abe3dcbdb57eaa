#pragma once

#include <string>

#include <json.hpp>

#include "cryst/crystal.hpp"

namespace cryst {

using Json = nlohmann::ordered_json;

// group file: {"dimension": n, "generators": [{"linear": [[..]..],
// "translation": ["p/q", ...]}, ...]}; rationals are strings, never floats
Json group_to_json(const CrystGroup& gamma);
CrystGroup group_from_json(const Json& j);

std::string serialize_group(const CrystGroup& gamma);  // canonical text form
CrystGroup parse_group(const std::string& text);

Json report_to_json(const AnalysisReport& r);

// iterate/construct output: per-step reports plus the final group
Json iteration_to_json(const IterationResult& res);

}  // namespace cryst
