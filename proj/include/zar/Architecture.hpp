/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Definitions.hpp"
#include "zar/Geometry.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zar {
enum class ZoneKind : std::uint8_t { Storage, Entangling, Readout };

[[nodiscard]] auto toString(ZoneKind kind) -> std::string;

/// Axis-aligned zone; y grows downwards.
struct ZoneSpec {
  ZoneKind kind = ZoneKind::Storage;
  Point origin;
  double width = 0.0;
  double height = 0.0;
  double pitchX = 0.0;
  double pitchY = 0.0;

  /// Containment with GEOMETRY_EPS slack on every side.
  [[nodiscard]] auto contains(const Point& p) const -> bool;
};

/**
 * @brief Geometry, radii and timing of a zoned neutral-atom device.
 * Lengths in micrometers, durations in microseconds.
 */
struct Architecture {
  std::vector<ZoneSpec> zones;
  double rPair = 2.0;     ///< CZ happens for atoms closer than this
  double rSafe = 4.0;     ///< no interaction beyond this distance
  double aodMinSep = 1.0; ///< minimum distance between AOD rows/columns
  double tLoad = 20.0;
  double tStore = 20.0;
  double shuttleSpeed = 0.55; ///< micrometers per microsecond
  double tCz = 0.2;
  double t1q = 0.0; ///< duration charged for single-qubit gates
  std::size_t arrayRows = 1;
  std::size_t arrayCols = 1;
  double intraArrayPitch = 5.0;

  [[nodiscard]] auto atomsPerQubit() const -> std::size_t {
    return arrayRows * arrayCols;
  }
  [[nodiscard]] auto zoneIndex(ZoneKind kind) const -> std::size_t;
  [[nodiscard]] auto zone(ZoneKind kind) const -> const ZoneSpec& {
    return zones.at(zoneIndex(kind));
  }
  /// Horizontal and vertical extent of one atom array.
  [[nodiscard]] auto footprintX() const -> double;
  [[nodiscard]] auto footprintY() const -> double;

  /// @throws InputError describing the first broken invariant
  void validate() const;

  /// Wide storage zone below a single-row-pair entangling zone.
  [[nodiscard]] static auto defaultArchitecture() -> Architecture;
  /// Same area of storage, but tall and narrow.
  [[nodiscard]] static auto narrowArchitecture() -> Architecture;
};

[[nodiscard]] auto parseArchitecture(std::string_view text) -> Architecture;
[[nodiscard]] auto loadArchitecture(const std::filesystem::path& path)
    -> Architecture;
[[nodiscard]] auto serializeArchitecture(const Architecture& arch)
    -> std::string;

/// Rectangular lattice of logical sites inside one zone.
struct ZoneGrid {
  ZoneKind kind = ZoneKind::Storage;
  Point origin;
  double pitchX = 0.0;
  double pitchY = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  [[nodiscard]] auto site(std::size_t row, std::size_t col) const -> Point {
    return {origin.x + static_cast<double>(col) * pitchX,
            origin.y + static_cast<double>(row) * pitchY};
  }
  [[nodiscard]] auto capacity() const -> std::size_t { return rows * cols; }
  [[nodiscard]] auto sites() const -> std::vector<Point>;
};

/**
 * @brief Logical sites of every zone. A site is the upper-left atom of a
 * full array; footprints of neighbouring sites never overlap.
 *
 * Entangling sites are pair slots: an SLM anchor plus the AOD partner
 * position at (+rPair/2, 0). Neighbouring slots keep rSafe + rPair between
 * anchors so that parked pairs never interact.
 */
struct LogicalGrid {
  ZoneGrid storage;
  ZoneGrid entangling;
  std::optional<ZoneGrid> readout;
};

/// @throws InputError if a zone cannot hold the required sites
[[nodiscard]] auto deriveLogicalGrid(const Architecture& arch) -> LogicalGrid;

/// Atom positions of the array anchored at p, row-major.
[[nodiscard]] auto expandLogicalPosition(const Architecture& arch,
                                         const Point& p) -> std::vector<Point>;
} // namespace zar
