#pragma once

#include <string>

#include "json.hpp"
#include "notesketch/geometry.hpp"

namespace notesketch {

// Points are {"x","y","t"} objects or [x, y(, t)] arrays. Throws
// MalformedSketch naming `where`.
Stroke stroke_from_json(const nlohmann::json& j, const std::string& where, int fallbackId);
nlohmann::json stroke_to_json(const Stroke& s);

}  // namespace notesketch
