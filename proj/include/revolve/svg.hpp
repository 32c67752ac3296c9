#pragma once

#include "revolve/io.hpp"

#include <string>

namespace revolve {

/// Static SVG of a 2D result: outer body, solution (ellipse or polygon),
/// contact points, and the axis line. Throws for ambient dimension != 2.
std::string renderResultSvg(const ResultFile& res);

}  // namespace revolve
