#pragma once

#include <json.hpp>

#include "bwangle/space.hpp"

namespace bwangle {

/// Parses {"dimension":2,"family":"hoelder","p":1.0}-style descriptors.
/// Extended reals are numbers or the strings "inf"/"-inf".
SpaceDescriptor space_from_json(const nlohmann::json& j);

nlohmann::json space_to_json(const SpaceDescriptor& space);

double extended_real_from_json(const nlohmann::json& j);

}  // namespace bwangle
