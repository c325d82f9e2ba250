/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zar {
/// Logical qubit (or, after expansion, physical atom) identifier.
using Qubit = std::uint32_t;
/// Position of a gate in its circuit.
using GateIndex = std::size_t;

/**
 * @brief Raised for malformed or inconsistent user input (circuit text,
 * architecture config, schedule text, capacity).
 */
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/**
 * @brief Raised when an internal invariant is broken. Seeing this means
 * there is a bug in the compiler, not in the input.
 */
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};
} // namespace zar
