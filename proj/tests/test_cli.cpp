/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Commands.hpp"
#include "zar/Generators.hpp"

#include <filesystem>
#include <fstream>
#include <gtest/gtest.h>
#include <map>
#include <sstream>
#include <unistd.h>

namespace zar::cli {
namespace {
namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
  fs::path dir;

  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() /
          (std::string("zar_cli_") + info->name() + "_" +
           std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  auto write(const std::string& name, const std::string& text) -> fs::path {
    const auto path = dir / name;
    std::ofstream(path) << text;
    return path;
  }

  auto gen(const std::string& family, const std::size_t n,
           const std::string& name) -> fs::path {
    GenOptions options;
    options.family = family;
    options.n = n;
    options.out = dir / name;
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(runGen(options, out, err), SUCCESS) << err.str();
    return *options.out;
  }
};

auto parseStats(const std::string& text) -> std::map<std::string, std::string> {
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      values[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  return values;
}

auto compileTo(const fs::path& circuit, const fs::path& out,
               const std::string& strategy, std::string* stats = nullptr)
    -> int {
  CompileOptions options;
  options.circuit = circuit;
  options.strategy = strategy;
  options.out = out;
  std::ostringstream o;
  std::ostringstream e;
  const auto rc = runCompile(options, o, e);
  if (stats != nullptr) {
    *stats = o.str();
  }
  return rc;
}
} // namespace

TEST_F(CliTest, GhzWithBothStrategies) {
  const auto circuit = gen("ghz", 20, "ghz20.txt");
  std::string stats;
  ASSERT_EQ(compileTo(circuit, dir / "nalac.sched", "nalac", &stats), SUCCESS);
  EXPECT_EQ(parseStats(stats)["avg_parallel_cz"], "1.000");
  ASSERT_EQ(compileTo(circuit, dir / "naive.sched", "naive"), SUCCESS);
  EXPECT_TRUE(fs::exists(dir / "nalac.sched"));
  EXPECT_TRUE(fs::exists(dir / "naive.sched"));
}

TEST_F(CliTest, DisjointPairsNeedOneRydbergOp) {
  const auto circuit = write("pairs.txt", "qubits 4\ncz 0 1\ncz 2 3\n");
  std::string stats;
  ASSERT_EQ(compileTo(circuit, dir / "s.txt", "nalac", &stats), SUCCESS);
  const auto values = parseStats(stats);
  EXPECT_EQ(values.at("rydberg_count"), "1");
  EXPECT_EQ(values.at("cz_count"), "2");
}

TEST_F(CliTest, MissingArchitectureFile) {
  CompileOptions options;
  options.circuit = write("c.txt", "qubits 2\ncz 0 1\n");
  options.arch.path = dir / "missing.json";
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(runCompile(options, out, err), INPUT_ERROR);
  EXPECT_NE(err.str().find("missing.json"), std::string::npos);
}

TEST_F(CliTest, BadCircuitAndStrategy) {
  const auto bad = write("bad.txt", "qubits 2\ncz 0 0\n");
  EXPECT_EQ(compileTo(bad, dir / "s.txt", "nalac"), INPUT_ERROR);
  const auto good = write("good.txt", "qubits 2\ncz 0 1\n");
  EXPECT_EQ(compileTo(good, dir / "s.txt", "magic"), INPUT_ERROR);
}

TEST_F(CliTest, StatsFile) {
  CompileOptions options;
  options.circuit = gen("chain", 5, "chain.txt");
  options.stats = dir / "stats.txt";
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(runCompile(options, out, err), SUCCESS);
  std::ifstream in(*options.stats);
  std::stringstream text;
  text << in.rdbuf();
  const auto values = parseStats(text.str());
  EXPECT_EQ(values.at("cz_count"), "4");
  EXPECT_NEAR(std::stod(values.at("routing_overhead")),
              std::stod(values.at("load_store_time")) +
                  std::stod(values.at("shuttle_time")),
              2e-3);
}

TEST_F(CliTest, ValidateFreshMutatedAndMismatched) {
  const auto circuit = gen("random", 12, "random.txt");
  ASSERT_EQ(compileTo(circuit, dir / "s.txt", "nalac"), SUCCESS);
  ValidateOptions options;
  options.schedule = dir / "s.txt";
  options.circuit = circuit;
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(runValidate(options, out, err), SUCCESS) << out.str();

  // shift the first move target
  std::ifstream in(options.schedule);
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto text = buffer.str();
  const auto arrow = text.find("->(");
  ASSERT_NE(arrow, std::string::npos);
  text.replace(arrow, 3, "->(4");
  options.schedule = write("mutant.txt", text);
  std::ostringstream out2;
  EXPECT_EQ(runValidate(options, out2, err), VALIDATION_FAILED);
  EXPECT_NE(out2.str().find("op="), std::string::npos);

  options.schedule = dir / "s.txt";
  options.circuit = write("other.txt", "qubits 12\ncz 0 1\n");
  std::ostringstream out3;
  EXPECT_EQ(runValidate(options, out3, err), VALIDATION_FAILED);
  EXPECT_NE(out3.str().find("constraint=f"), std::string::npos);
}

TEST_F(CliTest, BenchEmptyDirectory) {
  BenchOptions options;
  options.circuitDir = dir;
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(runBench(options, out, err), SUCCESS);
  EXPECT_EQ(out.str(), benchHeader());
}

TEST_F(CliTest, BenchRowsAndArraySweep) {
  fs::create_directories(dir / "circuits");
  GenOptions g;
  g.family = "parallel-layers";
  g.n = 8;
  g.out = dir / "circuits" / "layers.txt";
  std::ostringstream sink;
  ASSERT_EQ(runGen(g, sink, sink), SUCCESS);
  BenchOptions options;
  options.circuitDir = dir / "circuits";
  options.arraySizes = {1, 2};
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(runBench(options, out, err), SUCCESS);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, '\t')) {
      cells.push_back(cell);
    }
    ASSERT_EQ(cells.size(), 12) << line;
    EXPECT_EQ(cells[11], "ok");
    EXPECT_NEAR(std::stod(cells[7]),
                std::stod(cells[5]) + std::stod(cells[6]), 2e-3);
  }
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, Inspect) {
  InspectOptions options;
  options.circuit = write("fig.txt", "qubits 8\ncz 7 5\ncz 7 6\ncz 7 2\n"
                                     "cz 7 4\ncz 1 5\ncz 1 6\ncz 3 5\n"
                                     "cz 3 6\n");
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(runInspect(options, out, err), SUCCESS);
  EXPECT_NE(out.str().find("# aod: 1 3 7"), std::string::npos);
  EXPECT_NE(out.str().find("5 7 1 7"), std::string::npos);
}

TEST_F(CliTest, GeneratorFamilies) {
  GenOptions options;
  options.family = "chain";
  options.n = 5;
  EXPECT_EQ(generate(options).czCount(), 4);
  options.family = "parallel-layers";
  options.n = 8;
  options.layers = 3;
  const auto layers = generate(options);
  EXPECT_EQ(layers.czCount(), 12);
  options.family = "random";
  options.n = 20;
  options.seed = 7;
  EXPECT_EQ(generate(options).toString(), generate(options).toString());
  options.family = "unknown";
  EXPECT_THROW(static_cast<void>(generate(options)), InputError);
}

TEST(Generators, ParallelLayersAreFullyParallel) {
  const auto c = generateParallelLayers(8, 3, 1);
  auto work = c;
  std::size_t czRounds = 0;
  while (!work.allExecuted()) {
    const auto front = work.executableFront();
    std::size_t cz = 0;
    for (const auto g : front) {
      cz += work.getGate(g).kind == GateKind::CZ ? 1 : 0;
    }
    if (cz > 0) {
      ++czRounds;
      EXPECT_EQ(cz, 4);
    }
    work.markExecuted(front);
  }
  EXPECT_EQ(czRounds, 3);
}
} // namespace zar::cli
