/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Architecture.hpp"
#include "zar/Circuit.hpp"
#include "zar/Schedule.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace zar {
enum class Strategy : std::uint8_t { Naive, Nalac };

[[nodiscard]] auto parseStrategy(std::string_view name) -> Strategy;
[[nodiscard]] auto toString(Strategy strategy) -> std::string;

struct StorageSite {
  std::size_t row = 0;
  std::size_t col = 0;
  [[nodiscard]] auto operator==(const StorageSite&) const -> bool = default;
};

/**
 * @brief Occupancy of the storage zone. A qubit without a site has not been
 * needed yet, or is currently outside the storage zone.
 */
class StorageState {
public:
  StorageState(ZoneGrid grid, std::size_t nQubits);

  [[nodiscard]] auto getGrid() const -> const ZoneGrid& { return grid; }
  [[nodiscard]] auto position(Qubit q) const -> std::optional<StorageSite> {
    return sites.at(q);
  }
  [[nodiscard]] auto point(const StorageSite& s) const -> Point {
    return grid.site(s.row, s.col);
  }
  [[nodiscard]] auto occupant(const StorageSite& s) const
      -> std::optional<Qubit>;
  [[nodiscard]] auto isFree(const StorageSite& s) const -> bool {
    return !occupant(s).has_value();
  }
  /// True once any qubit has been assigned to the site.
  [[nodiscard]] auto everUsed(const StorageSite& s) const -> bool {
    return used[s.row * grid.cols + s.col];
  }
  /// True once the qubit has been given a position.
  [[nodiscard]] auto isPlaced(Qubit q) const -> bool { return placed.at(q); }
  [[nodiscard]] auto unplacedCount() const -> std::size_t;
  [[nodiscard]] auto freshFreeCount() const -> std::size_t;

  void place(Qubit q, const StorageSite& s);
  void remove(Qubit q);

private:
  ZoneGrid grid;
  std::vector<std::optional<StorageSite>> sites;
  std::vector<std::optional<Qubit>> occupants;
  std::vector<bool> used;
  std::vector<bool> placed;
};

/// Qubits loaded together from one storage row; listed left to right.
struct LoadBatch {
  std::size_t row = 0;
  std::vector<Qubit> qubits;
  double misplacement = 0.0;
};

/**
 * @brief Groups the qubits (in their required left-to-right order) into
 * batches that share a storage row and keep their order. Qubits without a
 * position get fresh free sites extending a batch. Batches are returned by
 * descending misplacement |storage x - target x|.
 */
[[nodiscard]] auto planLoads(const std::vector<Qubit>& order,
                             const std::vector<double>& targetX,
                             StorageState& state) -> std::vector<LoadBatch>;

/// Target sites of qubits returned to one storage row.
struct StoreBatch {
  std::size_t row = 0;
  std::vector<std::pair<Qubit, std::size_t>> placements; ///< qubit, column
};

/**
 * @brief Chooses the fewest storage rows (topmost on ties) that fit the
 * qubits and fills their free slots left to right, in list order. Sites
 * never used before are held back for qubits that still need an initial
 * position.
 */
[[nodiscard]] auto planStoreback(const std::vector<Qubit>& qubits,
                                 StorageState& state)
    -> std::vector<StoreBatch>;

/// One CZ at a time through a single entangling slot.
[[nodiscard]] auto routeNaive(const Circuit& circuit, const Architecture& arch)
    -> Schedule;

/// Runs of parallel steps derived from the interaction graph coloring.
[[nodiscard]] auto routeNalac(const Circuit& circuit, const Architecture& arch)
    -> Schedule;

struct CompileResult {
  Schedule schedule; ///< timed and expanded to atoms
  RoutingStats stats;
};

/// Routes, applies timing and expands to the physical arrays.
[[nodiscard]] auto compile(const Circuit& circuit, const Architecture& arch,
                           Strategy strategy) -> CompileResult;
} // namespace zar
