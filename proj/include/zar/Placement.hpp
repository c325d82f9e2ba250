/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Definitions.hpp"
#include "zar/GateGraph.hpp"
#include "zar/Geometry.hpp"

#include <optional>
#include <vector>

namespace zar {
/// SLM qubits in a topological order of the induced order (ties by id).
/// @throws InternalError on a cyclic relation
[[nodiscard]] auto orderSlmQubits(const std::vector<Qubit>& slmQubits,
                                  const EdgeColoring& coloring)
    -> std::vector<Qubit>;

struct LayoutSlot {
  /// Empty for a resting slot.
  std::optional<Qubit> qubit;
  [[nodiscard]] auto isResting() const -> bool { return !qubit.has_value(); }
};

/**
 * @brief Column layout of one run in the entangling row.
 *
 * Columns are numbered from the left parking area: `leftParking` idle
 * positions, then `slots` (SLM qubits and resting slots), then
 * `rightParking` idle positions. `column[t - 1][i]` is the column of the
 * i-th AOD qubit (aodOrder) in step t.
 */
struct SlmLayout {
  std::vector<LayoutSlot> slots;
  std::size_t leftParking = 0;
  std::size_t rightParking = 0;
  std::vector<Qubit> aodOrder;
  std::vector<std::vector<std::size_t>> column;
  /// partner[t - 1][i]: SLM partner of the i-th AOD qubit in step t
  std::vector<std::vector<std::optional<Qubit>>> partner;

  [[nodiscard]] auto width() const -> std::size_t {
    return leftParking + slots.size() + rightParking;
  }
  [[nodiscard]] auto restingCount() const -> std::size_t;
  /// Column of the slot of an SLM qubit.
  [[nodiscard]] auto columnOf(Qubit slmQubit) const -> std::size_t;
  [[nodiscard]] auto steps() const -> std::size_t { return column.size(); }
};

/**
 * @brief Assigns every AOD qubit a column per step and inserts resting
 * slots where an idle qubit must wait between two SLM qubits.
 *
 * Idle qubits prefer the parking areas left of the first or right of the
 * last SLM slot, then an existing resting slot, then a new resting slot in
 * the leftmost feasible gap. Columns never decrease over time.
 */
[[nodiscard]] auto insertRestingSlots(const std::vector<Qubit>& slmOrder,
                                      const InteractionGraph& graph,
                                      const Partition& partition,
                                      const EdgeColoring& coloring)
    -> SlmLayout;

/// Geometry of the entangling row used by a run.
struct RowGeometry {
  Point origin;          ///< position of column 0
  double pitch = 0.0;    ///< distance between neighbouring columns
  double pairOffset = 0.0; ///< x offset of an AOD partner from its slot
};

struct StepPlan {
  std::vector<Qubit> aodOrder;
  /// positions[t - 1][i]: target of the i-th AOD qubit in step t
  std::vector<std::vector<Point>> positions;
  /// x coordinates of the SLM qubits of the layout, by layout order
  std::vector<std::pair<Qubit, Point>> slmPositions;
};

/// Converts layout columns into coordinates.
/// @throws InternalError if a step crosses or moves an AOD qubit leftwards
[[nodiscard]] auto planSteps(const SlmLayout& layout, const RowGeometry& row)
    -> StepPlan;
} // namespace zar
