/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Architecture.hpp"
#include "zar/Circuit.hpp"
#include "zar/Schedule.hpp"

#include <string>
#include <vector>

namespace zar {
enum class Constraint : std::uint8_t {
  NonCrossing,         ///< (a) AOD rows/columns keep order and separation
  RowColumnPreserving, ///< (b) atoms sharing a row/column keep sharing it
  GhostSpot,           ///< (c) no unintended trap near an SLM atom
  ArrayAlignment,      ///< (d) one CZ partner sits in an SLM trap
  Exclusivity,         ///< (e) only intended pairs interact
  Semantics,           ///< (f) gates realized in a valid order, each once
  State                ///< malformed operation
};

/// "a".."f" or "state".
[[nodiscard]] auto toString(Constraint c) -> std::string;

struct Violation {
  std::size_t op = 0; ///< op index; ops.size() for end-of-schedule checks
  Constraint constraint = Constraint::State;
  std::string detail;

  /// "op=<idx> constraint=<id> detail=<text>"
  [[nodiscard]] auto toString() const -> std::string;
};

/**
 * @brief Replays the schedule on a simulated trap state and reports every
 * broken shuttling, interaction or semantic constraint. Works on logical
 * and on expanded schedules.
 */
[[nodiscard]] auto validate(const Schedule& schedule, const Circuit& circuit,
                            const Architecture& arch)
    -> std::vector<Violation>;
} // namespace zar
