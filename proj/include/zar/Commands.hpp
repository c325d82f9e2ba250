/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Router.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace zar::cli {
/// Process exit codes.
enum ExitCode : int {
  SUCCESS = 0,
  INPUT_ERROR = 1,
  VALIDATION_FAILED = 2,
  INTERNAL_ERROR = 3
};

/// Architecture source plus the array-shape overrides of the command line.
struct ArchOptions {
  std::optional<std::filesystem::path> path; ///< default device if empty
  std::optional<std::size_t> arrayRows;
  std::optional<std::size_t> arrayCols;

  [[nodiscard]] auto load() const -> Architecture;
};

struct CompileOptions {
  std::filesystem::path circuit;
  ArchOptions arch;
  std::string strategy = "nalac";
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> stats;
};

struct ValidateOptions {
  std::filesystem::path schedule;
  std::filesystem::path circuit;
  ArchOptions arch;
};

struct InspectOptions {
  std::filesystem::path circuit;
};

struct BenchOptions {
  std::filesystem::path circuitDir;
  ArchOptions arch;
  std::vector<std::string> strategies{"naive", "nalac"};
  std::vector<std::size_t> arraySizes; ///< square sizes; empty = as configured
  std::optional<std::filesystem::path> out;
};

struct GenOptions {
  std::string family;
  std::size_t n = 0;
  std::size_t layers = 3;
  std::size_t gates = 100;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;
};

/// TSV header emitted by bench.
[[nodiscard]] auto benchHeader() -> std::string;

auto runCompile(const CompileOptions& options, std::ostream& out,
                std::ostream& err) -> int;
auto runValidate(const ValidateOptions& options, std::ostream& out,
                 std::ostream& err) -> int;
auto runInspect(const InspectOptions& options, std::ostream& out,
                std::ostream& err) -> int;
auto runBench(const BenchOptions& options, std::ostream& out,
              std::ostream& err) -> int;
auto runGen(const GenOptions& options, std::ostream& out, std::ostream& err)
    -> int;

/// Builds a generator circuit by family name.
[[nodiscard]] auto generate(const GenOptions& options) -> Circuit;
} // namespace zar::cli
