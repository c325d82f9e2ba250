/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include <string>

namespace zar {
/// Tolerance used when comparing coordinates in micrometers.
constexpr double GEOMETRY_EPS = 1e-3;

struct Point {
  double x = 0.0;
  double y = 0.0;

  [[nodiscard]] auto operator+(const Point& other) const -> Point {
    return {x + other.x, y + other.y};
  }
  [[nodiscard]] auto operator-(const Point& other) const -> Point {
    return {x - other.x, y - other.y};
  }
  [[nodiscard]] auto operator==(const Point& other) const -> bool = default;
};

/// Euclidean distance.
[[nodiscard]] auto distance(const Point& a, const Point& b) -> double;

/// True if both coordinates agree up to GEOMETRY_EPS.
[[nodiscard]] auto samePosition(const Point& a, const Point& b) -> bool;

/// Formats a point as "(x,y)" with three fractional digits.
[[nodiscard]] auto formatPoint(const Point& p) -> std::string;

/// Formats a scalar with three fractional digits, never printing "-0.000".
[[nodiscard]] auto formatFixed(double value) -> std::string;
} // namespace zar
