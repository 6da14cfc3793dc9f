#pragma once

#include <optional>
#include <string>

#include "rigidkit/frameworks.hpp"

namespace rigidkit {

// Bars, joints and optional flex arrows; the longest arrow spans 15% of the
// larger side of the bounding box. 2D placements only.
std::string render_svg(const SimpleGraph& g, const Placement& p, const std::optional<Velocity>& flex = std::nullopt);

}  // namespace rigidkit
