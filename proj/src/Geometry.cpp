/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Geometry.hpp"

#include <cmath>
#include <fmt/format.h>

namespace zar {
auto distance(const Point& a, const Point& b) -> double {
  return std::hypot(a.x - b.x, a.y - b.y);
}

auto samePosition(const Point& a, const Point& b) -> bool {
  return std::abs(a.x - b.x) <= GEOMETRY_EPS &&
         std::abs(a.y - b.y) <= GEOMETRY_EPS;
}

auto formatFixed(const double value) -> std::string {
  // values that round to zero would otherwise print as -0.000
  if (std::abs(value) < 0.0005) {
    return "0.000";
  }
  return fmt::format("{:.3f}", value);
}

auto formatPoint(const Point& p) -> std::string {
  return "(" + formatFixed(p.x) + "," + formatFixed(p.y) + ")";
}
} // namespace zar
