#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "seagrass/geometry.hpp"

namespace seagrass {

// Exit codes returned by run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Boustrophedon rows parallel to x, spaced along y; bounds are
// min_x, min_y, max_x, max_y.
// The last row is clamped to y1 when the spacing does not divide the span.
std::vector<Point2> lawnmower(const std::array<double, 4>& bounds, double spacing);

}  // namespace seagrass
