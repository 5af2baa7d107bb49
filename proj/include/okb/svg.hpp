#pragma once

#include "okb/minkowski.hpp"

#include <string>

namespace okb {

/// Polygon with axes t (horizontal) and y (vertical), 40 px per unit.
std::string polygon_svg(const Polygon2& p, const std::string& title);

/// Fan drawn in an affine chart of the cone (rank 3), or as rays in the
/// plane (rank 2). Throws InputError for other ranks.
std::string fan_svg(const RationalCone& eff, const MinkowskiFan& fan, const std::vector<std::string>& labels);

}  // namespace okb
