#pragma once

#include <string>
#include <vector>

#include "rslab/harness.hpp"

namespace rslab {

// Renders PCS curves as a standalone SVG: one panel per instance, budget on
// the horizontal axis, one polyline per policy with +-1 standard-error
// whiskers and a shared legend. Every data point carries its values as
// data-* attributes so the file can be checked by machines, not just eyes.
// Throws std::invalid_argument("no rows") when `points` is empty.
void write_pcs_svg(const std::vector<PcsCurvePoint>& points,
                   const std::string& path);

}  // namespace rslab
