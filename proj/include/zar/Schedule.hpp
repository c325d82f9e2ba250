/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Architecture.hpp"
#include "zar/Definitions.hpp"
#include "zar/Geometry.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace zar {
enum class OpKind : std::uint8_t { Load, Move, Store, Rydberg, OneQubit };

[[nodiscard]] auto toString(OpKind kind) -> std::string;

/// One atom (or logical qubit) touched by an op. For Load and Store,
/// `from` and `to` coincide.
struct AtomMove {
  Qubit atom = 0;
  Point from;
  Point to;
};

struct ScheduleOp {
  OpKind kind = OpKind::Load;
  std::vector<AtomMove> atoms; ///< Load/Move/Store batch or 1q targets
  std::vector<GateIndex> gates; ///< realized CZs, or the single 1q gate
  std::string label;           ///< OneQubit: gate label
  bool global = false;         ///< OneQubit: acts on every qubit
  std::size_t zone = 0;        ///< Rydberg: index into Architecture::zones
  double start = 0.0;
  double duration = 0.0;
};

/**
 * @brief Time-ordered list of operations. Atom ids are logical qubits when
 * the array shape is 1x1 or before expansion; after expansion atom
 * `q * rows * cols + k` is the k-th atom (row-major) of qubit q.
 */
struct Schedule {
  std::size_t arrayRows = 1;
  std::size_t arrayCols = 1;
  std::vector<Point> initial; ///< initial position per atom
  std::vector<ScheduleOp> ops;
  std::size_t runs = 0; ///< number of entangling-zone visits

  [[nodiscard]] auto atomsPerQubit() const -> std::size_t {
    return arrayRows * arrayCols;
  }
  /// CZ gate -> index of the Rydberg op realizing it.
  [[nodiscard]] auto provenance() const -> std::map<GateIndex, std::size_t>;
  /// Positions after replaying all ops.
  [[nodiscard]] auto finalPositions() const -> std::vector<Point>;
  [[nodiscard]] auto count(OpKind kind) const -> std::size_t;
  [[nodiscard]] auto totalDuration() const -> double;
};

struct RoutingStats {
  double loadStoreTime = 0.0;
  double shuttleTime = 0.0;
  double routingOverhead = 0.0;
  std::size_t rydbergCount = 0;
  std::size_t czCount = 0;
  double avgParallelCz = 0.0;
  double compileTimeMs = 0.0;
  std::size_t runs = 0;

  /// key=value lines
  [[nodiscard]] auto toString() const -> std::string;
};

/**
 * @brief Assigns durations and cumulative start times and aggregates the
 * routing statistics. Move batches take their largest Euclidean
 * displacement divided by the shuttle speed.
 */
auto applyTiming(Schedule& schedule, const Architecture& arch) -> RoutingStats;

/// Replaces every logical qubit by the atoms of its array.
/// @throws InternalError if an expanded Rydberg op brings unrelated atoms
/// closer than r_safe
[[nodiscard]] auto expandToPhysical(const Schedule& schedule,
                                    const Architecture& arch) -> Schedule;

[[nodiscard]] auto writeSchedule(const Schedule& schedule) -> std::string;
/// @throws InputError with the line number
[[nodiscard]] auto parseSchedule(std::string_view text) -> Schedule;
[[nodiscard]] auto loadSchedule(const std::filesystem::path& path)
    -> Schedule;
} // namespace zar
