#pragma once

#include <json.hpp>

#include "fpm/field.hpp"
#include "fpm/geometry.hpp"

namespace fpm {

using ordered_json = nlohmann::ordered_json;

ordered_json system_to_json(const SystemSpec& s);
SystemSpec system_from_json(const ordered_json& j);

ordered_json array_to_json(const LedArraySpec& a);
LedArraySpec array_from_json(const ordered_json& j);

ordered_json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const ordered_json& j);

ordered_json plan_to_json(const IlluminationPlan& p);
IlluminationPlan plan_from_json(const ordered_json& j);

}  // namespace fpm
