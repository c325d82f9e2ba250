/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Circuit.hpp"

#include <cstdint>
#include <string_view>

namespace zar {
/// h 0, then per link an h-cz-h ladder (CNOT in the native gate set).
[[nodiscard]] auto generateGhz(std::size_t n) -> Circuit;

/// Serial CZs cz(i, i+1), each followed by h on i+1: n - 1 CZs.
[[nodiscard]] auto generateChain(std::size_t n) -> Circuit;

/// `layers` layers of floor(n/2) disjoint CZs on a random matching,
/// separated by a layer of h gates.
[[nodiscard]] auto generateParallelLayers(std::size_t n, std::size_t layers,
                                          std::uint64_t seed) -> Circuit;

/// `gates` random gates: roughly 60% CZ, the rest single-qubit gates with
/// an occasional global gate.
[[nodiscard]] auto generateRandom(std::size_t n, std::size_t gates,
                                  std::uint64_t seed) -> Circuit;

/// Same mix as generateRandom, stopping after `czCount` CZ gates.
[[nodiscard]] auto generateRandomCz(std::size_t n, std::size_t czCount,
                                    std::uint64_t seed) -> Circuit;
} // namespace zar
