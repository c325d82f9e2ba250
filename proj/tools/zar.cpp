/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "CLI11.hpp"
#include "zar/Commands.hpp"

#include <cstdlib>
#include <iostream>
#include <spdlog/spdlog.h>

namespace {
void configureLogging() {
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("ZAR_LOG"); level != nullptr) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
  spdlog::set_default_logger(spdlog::default_logger());
}

void addArchOptions(CLI::App* cmd, zar::cli::ArchOptions& arch) {
  cmd->add_option("--arch", arch.path, "Architecture config (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--array-rows", arch.arrayRows,
                  "Override atoms per array row");
  cmd->add_option("--array-cols", arch.arrayCols,
                  "Override atoms per array column");
}
} // namespace

auto main(int argc, char** argv) -> int {
  configureLogging();
  CLI::App app{"Router for zoned neutral-atom architectures"};
  app.require_subcommand(1);

  zar::cli::CompileOptions compileOpts;
  auto* compile = app.add_subcommand("compile", "Route a circuit");
  compile->add_option("--circuit", compileOpts.circuit, "Circuit file")
      ->required();
  addArchOptions(compile, compileOpts.arch);
  compile->add_option("--strategy", compileOpts.strategy, "naive or nalac")
      ->check(CLI::IsMember({"naive", "nalac"}));
  compile->add_option("--out", compileOpts.out, "Schedule output file");
  compile->add_option("--stats", compileOpts.stats, "Statistics output file");

  zar::cli::ValidateOptions validateOpts;
  auto* validate = app.add_subcommand("validate", "Check a schedule");
  validate->add_option("--schedule", validateOpts.schedule, "Schedule file")
      ->required();
  validate->add_option("--circuit", validateOpts.circuit, "Circuit file")
      ->required();
  addArchOptions(validate, validateOpts.arch);

  zar::cli::InspectOptions inspectOpts;
  auto* inspect =
      app.add_subcommand("inspect", "Dump the first interaction graph");
  inspect->add_option("--circuit", inspectOpts.circuit, "Circuit file")
      ->required();

  zar::cli::BenchOptions benchOpts;
  auto* bench = app.add_subcommand("bench", "Sweep strategies and arrays");
  bench->add_option("--circuits", benchOpts.circuitDir, "Circuit directory")
      ->required();
  addArchOptions(bench, benchOpts.arch);
  bench->add_option("--strategies", benchOpts.strategies, "Strategies")
      ->delimiter(',');
  bench->add_option("--array-sizes", benchOpts.arraySizes,
                    "Square array sizes")
      ->delimiter(',');
  bench->add_option("--out", benchOpts.out, "TSV output file");

  zar::cli::GenOptions genOpts;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic circuit");
  gen->add_option("--family", genOpts.family,
                  "ghz, chain, parallel-layers or random")
      ->required()
      ->check(CLI::IsMember({"ghz", "chain", "parallel-layers", "random"}));
  gen->add_option("--n", genOpts.n, "Number of qubits")->required();
  gen->add_option("--layers", genOpts.layers, "Layers (parallel-layers)");
  gen->add_option("--gates", genOpts.gates, "Gate count (random)");
  gen->add_option("--seed", genOpts.seed, "Random seed");
  gen->add_option("--out", genOpts.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e);
    return code == 0 ? 0 : zar::cli::INPUT_ERROR;
  }

  if (*compile) {
    return zar::cli::runCompile(compileOpts, std::cout, std::cerr);
  }
  if (*validate) {
    return zar::cli::runValidate(validateOpts, std::cout, std::cerr);
  }
  if (*inspect) {
    return zar::cli::runInspect(inspectOpts, std::cout, std::cerr);
  }
  if (*bench) {
    return zar::cli::runBench(benchOpts, std::cout, std::cerr);
  }
  return zar::cli::runGen(genOpts, std::cout, std::cerr);
}
