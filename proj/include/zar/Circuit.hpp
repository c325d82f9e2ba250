/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Definitions.hpp"

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace zar {
enum class GateKind : std::uint8_t { CZ, LocalU, GlobalU };

/// Labels treated as diagonal in the computational basis.
[[nodiscard]] auto isDiagonalLabel(std::string_view label) -> bool;

struct Gate {
  GateKind kind = GateKind::CZ;
  /// Two qubits for CZ, one for LocalU, none for GlobalU.
  std::vector<Qubit> qubits;
  /// Opaque name of single-qubit gates; empty for CZ.
  std::string label;
  GateIndex index = 0;

  [[nodiscard]] auto isDiagonal() const -> bool;
  [[nodiscard]] auto actsOn(Qubit q) const -> bool;
  [[nodiscard]] auto isSingleQubit() const -> bool {
    return kind != GateKind::CZ;
  }
};

/**
 * @brief Two gates commute iff their supports are disjoint or both are
 * diagonal. A global gate acts on every qubit.
 */
[[nodiscard]] auto commutes(const Gate& a, const Gate& b) -> bool;

/**
 * @brief Ordered gate list over logical qubits together with the set of
 * already executed gates.
 */
class Circuit {
public:
  explicit Circuit(std::size_t nQubits);

  auto addCZ(Qubit a, Qubit b) -> GateIndex;
  auto addLocal(std::string label, Qubit q) -> GateIndex;
  auto addGlobal(std::string label) -> GateIndex;

  [[nodiscard]] auto getNqubits() const -> std::size_t { return nQubits; }
  [[nodiscard]] auto getGates() const -> const std::vector<Gate>& {
    return gates;
  }
  [[nodiscard]] auto getGate(GateIndex i) const -> const Gate& {
    return gates.at(i);
  }
  [[nodiscard]] auto size() const -> std::size_t { return gates.size(); }
  [[nodiscard]] auto czCount() const -> std::size_t;
  [[nodiscard]] auto isExecuted(GateIndex i) const -> bool {
    return executed.at(i);
  }
  [[nodiscard]] auto allExecuted() const -> bool {
    return nExecuted == gates.size();
  }

  /**
   * @brief Every unexecuted gate such that all unexecuted earlier gates
   * sharing a qubit commute with it. Sorted ascending.
   */
  [[nodiscard]] auto executableFront() const -> std::vector<GateIndex>;

  /// @throws InternalError if an index is not in the executable front
  void markExecuted(const std::vector<GateIndex>& indices);

  /// Serializes into the line format understood by parseCircuit.
  [[nodiscard]] auto toString() const -> std::string;

private:
  std::size_t nQubits;
  std::vector<Gate> gates;
  std::vector<bool> executed;
  std::size_t nExecuted = 0;
  /// per qubit: indices of gates acting on it, in circuit order
  std::vector<std::vector<GateIndex>> perQubit;
  /// per qubit: position in perQubit before which everything is executed
  std::vector<std::size_t> cursor;
  std::vector<GateIndex> globals;

  void checkQubit(Qubit q) const;
  void advanceCursor(Qubit q);
};

/// @throws InputError with the offending line number
[[nodiscard]] auto parseCircuit(std::string_view text) -> Circuit;
[[nodiscard]] auto loadCircuit(const std::filesystem::path& path) -> Circuit;
} // namespace zar
