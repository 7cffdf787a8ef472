#pragma once

#include "mvsol/wild.hpp"

#include <string>

namespace mvsol {

// Schematic (t, x1) fan diagram: interfaces drawn at evenly spaced angles
// (not to scale), each labeled with its numeric slope, wedges labeled with
// their states.
std::string fan_svg(const FanSolution& f, const std::string& title = "");

// Two-panel diagram of the wild construction: fan alpha and the fan-beta
// skeleton with region names and statuses, overlap wedge annotated.
std::string wild_svg(const WildFans& fans, const std::string& title = "");

} // namespace mvsol
