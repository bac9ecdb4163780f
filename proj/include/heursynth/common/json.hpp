#pragma once

#include <json.hpp>

namespace heursynth {
using Json = nlohmann::json;
}  // namespace heursynth
