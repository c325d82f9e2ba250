/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Commands.hpp"

#include "zar/GateGraph.hpp"
#include "zar/Generators.hpp"
#include "zar/Validator.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <spdlog/spdlog.h>

namespace zar::cli {
namespace {
void writeFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) {
    throw InputError(fmt::format("cannot write '{}'", path.string()));
  }
  file << text;
  if (!file) {
    throw InputError(fmt::format("failed writing '{}'", path.string()));
  }
}

/// Maps exceptions onto exit codes.
auto guarded(std::ostream& err, const std::function<int()>& body) -> int {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return INPUT_ERROR;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return INPUT_ERROR;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return INTERNAL_ERROR;
  }
}
} // namespace

auto ArchOptions::load() const -> Architecture {
  auto arch = path ? loadArchitecture(*path)
                   : Architecture::defaultArchitecture();
  if (arrayRows) {
    arch.arrayRows = *arrayRows;
  }
  if (arrayCols) {
    arch.arrayCols = *arrayCols;
  }
  arch.validate();
  return arch;
}

auto benchHeader() -> std::string {
  return "circuit\tstrategy\tarray\tqubits\tcz_count\tload_store_time\t"
         "shuttle_time\trouting_overhead\trydberg_count\tavg_parallel_cz\t"
         "compile_time_ms\tstatus\n";
}

auto runCompile(const CompileOptions& options, std::ostream& out,
                std::ostream& err) -> int {
  return guarded(err, [&] {
    const auto circuit = loadCircuit(options.circuit);
    const auto arch = options.arch.load();
    const auto strategy = parseStrategy(options.strategy);
    spdlog::info("compiling {} ({} qubits, {} gates) with {}",
                 options.circuit.string(), circuit.getNqubits(),
                 circuit.size(), options.strategy);
    const auto result = compile(circuit, arch, strategy);
    if (options.out) {
      writeFile(*options.out, writeSchedule(result.schedule));
    }
    const auto stats = result.stats.toString();
    if (options.stats) {
      writeFile(*options.stats, stats);
    }
    out << stats;
    return static_cast<int>(SUCCESS);
  });
}

auto runValidate(const ValidateOptions& options, std::ostream& out,
                 std::ostream& err) -> int {
  return guarded(err, [&] {
    const auto schedule = loadSchedule(options.schedule);
    const auto circuit = loadCircuit(options.circuit);
    const auto arch = options.arch.load();
    const auto violations = validate(schedule, circuit, arch);
    for (const auto& v : violations) {
      out << v.toString() << "\n";
    }
    if (!violations.empty()) {
      err << violations.size() << " violation(s)\n";
      return static_cast<int>(VALIDATION_FAILED);
    }
    out << "valid\n";
    return static_cast<int>(SUCCESS);
  });
}

auto runInspect(const InspectOptions& options, std::ostream& out,
                std::ostream& err) -> int {
  return guarded(err, [&] {
    auto circuit = loadCircuit(options.circuit);
    // single-qubit gates run first, as in the router
    while (true) {
      std::vector<GateIndex> oneQubit;
      for (const auto g : circuit.executableFront()) {
        if (circuit.getGate(g).isSingleQubit()) {
          oneQubit.push_back(g);
        }
      }
      if (oneQubit.empty()) {
        break;
      }
      circuit.markExecuted(oneQubit);
    }
    const auto front = circuit.executableFront();
    out << fmt::format("# front: {} CZ gate(s)\n", front.size());
    if (front.empty()) {
      return static_cast<int>(SUCCESS);
    }
    const auto graph = buildGraph(circuit, front);
    const auto partition = maxIndependentSet(graph);
    const auto coloring = colorEdges(graph, partition);
    out << fmt::format("# aod: {}\n", fmt::join(partition.aod, " "));
    out << fmt::format("# slm: {}\n", fmt::join(partition.slm, " "));
    out << fmt::format("# steps: {}\n", coloring.maxColor());
    out << "# u v color aod_side\n";
    out << dumpGraph(graph, partition, coloring);
    return static_cast<int>(SUCCESS);
  });
}

auto runBench(const BenchOptions& options, std::ostream& out,
              std::ostream& err) -> int {
  return guarded(err, [&] {
    if (!std::filesystem::is_directory(options.circuitDir)) {
      throw InputError(fmt::format("'{}' is not a directory",
                                   options.circuitDir.string()));
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry :
         std::filesystem::directory_iterator(options.circuitDir)) {
      if (entry.is_regular_file()) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    const auto base = options.arch.load();
    std::vector<std::size_t> sizes = options.arraySizes;
    if (sizes.empty()) {
      sizes.push_back(0); // as configured
    }
    std::string table = benchHeader();
    for (const auto& file : files) {
      std::optional<Circuit> circuit;
      std::string loadError;
      try {
        circuit = loadCircuit(file);
      } catch (const std::exception& e) {
        loadError = e.what();
      }
      for (const auto& name : options.strategies) {
        for (const auto size : sizes) {
          auto arch = base;
          if (size > 0) {
            arch.arrayRows = size;
            arch.arrayCols = size;
          }
          const auto shape = fmt::format("{}x{}", arch.arrayRows,
                                         arch.arrayCols);
          const auto label = file.filename().string();
          try {
            if (!circuit) {
              throw InputError(loadError);
            }
            arch.validate();
            const auto result = compile(*circuit, arch, parseStrategy(name));
            const auto& s = result.stats;
            table += fmt::format(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\tok\n", label,
                name, shape, circuit->getNqubits(), s.czCount,
                formatFixed(s.loadStoreTime), formatFixed(s.shuttleTime),
                formatFixed(s.routingOverhead), s.rydbergCount,
                formatFixed(s.avgParallelCz), formatFixed(s.compileTimeMs));
          } catch (const std::exception& e) {
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), '\t', ' ');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            err << fmt::format("{} [{} {}]: {}\n", label, name, shape, msg);
            table += fmt::format("{}\t{}\t{}\t\t\t\t\t\t\t\t\terror: {}\n",
                                 label, name, shape, msg);
          }
        }
      }
    }
    if (options.out) {
      writeFile(*options.out, table);
    } else {
      out << table;
    }
    return static_cast<int>(SUCCESS);
  });
}

auto generate(const GenOptions& options) -> Circuit {
  if (options.family == "ghz") {
    return generateGhz(options.n);
  }
  if (options.family == "chain") {
    return generateChain(options.n);
  }
  if (options.family == "parallel-layers") {
    return generateParallelLayers(options.n, options.layers, options.seed);
  }
  if (options.family == "random") {
    return generateRandom(options.n, options.gates, options.seed);
  }
  throw InputError(fmt::format("unknown circuit family '{}'", options.family));
}

auto runGen(const GenOptions& options, std::ostream& out, std::ostream& err)
    -> int {
  return guarded(err, [&] {
    const auto text = generate(options).toString();
    if (options.out) {
      writeFile(*options.out, text);
    } else {
      out << text;
    }
    return static_cast<int>(SUCCESS);
  });
}
} // namespace zar::cli
