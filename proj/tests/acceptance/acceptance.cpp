/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include "Mutants.hpp"
#include "Oracles.hpp"
#include "TestUtils.hpp"
#include "zar/Generators.hpp"
#include "zar/Placement.hpp"
#include "zar/Router.hpp"
#include "zar/Validator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace {
using namespace zar;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(const bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& text) { notes.push_back(text); }
};

auto seconds(const Clock::time_point since) -> double {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

auto stats(const Circuit& c, const Architecture& arch, const Strategy s)
    -> RoutingStats {
  return compile(c, arch, s).stats;
}

// 1 ---------------------------------------------------------------------------
auto fourCycle() -> Outcome {
  Outcome out;
  const auto start = Clock::now();
  const auto circuit = test::cycleCircuit();
  const auto graph = buildGraph(circuit, circuit.executableFront());
  const auto partition = maxIndependentSet(graph);
  const auto coloring = colorEdges(graph, partition);
  out.require(partition.aod.size() == 2, "independent set of size 2");
  out.require(coloring.maxColor() == 3,
              fmt::format("3 colors, got {}", coloring.maxColor()));
  const auto result =
      compile(circuit, Architecture::defaultArchitecture(), Strategy::Nalac);
  out.require(result.stats.rydbergCount == 3,
              fmt::format("3 Rydberg ops, got {}", result.stats.rydbergCount));
  out.require(result.stats.runs == 1,
              fmt::format("one run, got {}", result.stats.runs));
  const auto t = seconds(start);
  out.require(t < 1.0, fmt::format("runtime {:.3f} s < 1 s", t));
  out.note(fmt::format("colors={} rydberg={} runs={} time={:.4f}s",
                       coloring.maxColor(), result.stats.rydbergCount,
                       result.stats.runs, t));
  return out;
}

// 2 ---------------------------------------------------------------------------
auto workedExample() -> Outcome {
  Outcome out;
  const auto start = Clock::now();
  const auto circuit = test::fig6Circuit();
  const auto graph = buildGraph(circuit, circuit.executableFront());
  out.require(graph.getNodes().size() == 7 && graph.getEdges().size() == 8,
              "7 nodes and 8 edges");
  const auto partition = maxIndependentSet(graph);
  out.require(partition.aod.size() == 3, "independent set of size 3");
  out.require(std::count(partition.aod.begin(), partition.aod.end(), 7) == 1,
              "independent set contains the degree-4 node q7");
  const auto coloring = colorEdges(graph, partition);
  std::vector<unsigned> hub;
  for (const Qubit s : {5U, 6U, 2U, 4U}) {
    hub.push_back(test::colorOf(graph, coloring, 7, s));
  }
  out.require(hub == std::vector<unsigned>{1, 2, 3, 4},
              fmt::format("q7 edges colored 1..4 toward q5,q6,q2,q4, got {}",
                          fmt::join(hub, ",")));
  const auto order = orderSlmQubits(partition.slm, coloring);
  out.require(order == std::vector<Qubit>{5, 6, 2, 4},
              fmt::format("SLM order q5,q6,q2,q4, got {}",
                          fmt::join(order, ",")));
  const auto layout = insertRestingSlots(order, graph, partition, coloring);
  out.require(layout.restingCount() == 1,
              fmt::format("exactly one resting slot, got {}",
                          layout.restingCount()));
  // a resting slot is reused if idle AOD qubits occupy it in two steps
  std::size_t maxUses = 0;
  for (std::size_t j = 0; j < layout.slots.size(); ++j) {
    if (!layout.slots[j].isResting()) {
      continue;
    }
    const auto col = layout.leftParking + j;
    std::size_t uses = 0;
    std::vector<std::string> who;
    for (std::size_t t = 0; t < layout.steps(); ++t) {
      for (std::size_t i = 0; i < layout.aodOrder.size(); ++i) {
        if (layout.column[t][i] == col) {
          ++uses;
          who.push_back(fmt::format("q{}@t={}", layout.aodOrder[i], t + 1));
        }
      }
    }
    maxUses = std::max(maxUses, uses);
    std::string left = j > 0 && layout.slots[j - 1].qubit
                           ? fmt::format("q{}", *layout.slots[j - 1].qubit)
                           : "-";
    std::string right = j + 1 < layout.slots.size() &&
                                layout.slots[j + 1].qubit
                            ? fmt::format("q{}", *layout.slots[j + 1].qubit)
                            : "-";
    out.note(fmt::format("resting slot between {} and {} used by {}", left,
                         right, fmt::join(who, " ")));
  }
  out.require(maxUses >= 2,
              fmt::format("resting slot reused in a later step, used {} "
                          "time(s)",
                          maxUses));
  const auto t = seconds(start);
  out.require(t < 1.0, fmt::format("runtime {:.3f} s < 1 s", t));
  return out;
}

// 3 ---------------------------------------------------------------------------
auto constraintValidation() -> Outcome {
  Outcome out;
  const auto start = Clock::now();
  const auto arch = Architecture::defaultArchitecture();
  std::size_t schedules = 0;
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::mt19937_64 rng(seed);
    const auto n = std::uniform_int_distribution<std::size_t>(2, 30)(rng);
    const auto gates = std::uniform_int_distribution<std::size_t>(1, 200)(rng);
    const auto circuit = generateRandom(n, gates, seed);
    for (const auto strategy : {Strategy::Naive, Strategy::Nalac}) {
      const auto v =
          validate(compile(circuit, arch, strategy).schedule, circuit, arch);
      ++schedules;
      if (!v.empty()) {
        violations += v.size();
        out.require(false, fmt::format("seed {} {}: {}", seed,
                                       toString(strategy),
                                       v.front().toString()));
      }
    }
  }
  out.note(fmt::format("{} schedules, {} violations", schedules, violations));
  for (const auto& m : test::allMutants()) {
    const auto v = validate(m.schedule, m.circuit, arch);
    std::set<Constraint> found;
    for (const auto& x : v) {
      found.insert(x.constraint);
    }
    out.require(found == std::set<Constraint>{m.expected},
                fmt::format("mutant for ({}) triggers only its class",
                            toString(m.expected)));
  }
  const auto t = seconds(start);
  out.require(t < 60.0, fmt::format("runtime {:.1f} s < 60 s", t));
  out.note(fmt::format("6 mutants checked, time={:.2f}s", t));
  return out;
}

// 4 ---------------------------------------------------------------------------
auto oracleEquivalence() -> Outcome {
  Outcome out;
  const auto start = Clock::now();
  std::size_t instances = 0;
  std::size_t matchingOptimum = 0;
  for (std::uint64_t seed = 0; instances < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const auto graph = test::graphOf(test::randomPairs(rng, 8, 0.35));
    const auto partition = maxIndependentSet(graph);
    if (partition.coveredEdges.size() > 8) {
      continue;
    }
    ++instances;
    const auto coloring = colorEdges(graph, partition);
    const auto optimum =
        test::minimumColors(graph, partition, coloring.maxColor());
    out.require(coloring.maxColor() >= optimum,
                fmt::format("seed {}: heuristic {} >= optimum {}", seed,
                            coloring.maxColor(), optimum));
    out.require(conditionCHolds(graph, partition, coloring),
                fmt::format("seed {}: condition (C) holds", seed));
    matchingOptimum += coloring.maxColor() == optimum ? 1 : 0;
  }
  const auto cycle = test::cycleCircuit();
  const auto graph = buildGraph(cycle, cycle.executableFront());
  const auto partition = maxIndependentSet(graph);
  const auto coloring = colorEdges(graph, partition);
  const auto optimum = test::minimumColors(graph, partition, 6);
  out.require(coloring.maxColor() == 3 && optimum == 3,
              fmt::format("4-cycle heuristic {} = optimum {} = 3",
                          coloring.maxColor(), optimum));
  const auto t = seconds(start);
  out.require(t < 120.0, fmt::format("runtime {:.1f} s < 120 s", t));
  out.note(fmt::format("{} instances, {} at the optimum, time={:.2f}s",
                       instances, matchingOptimum, t));
  return out;
}

// 5 ---------------------------------------------------------------------------
auto timingArithmetic() -> Outcome {
  Outcome out;
  auto arch = Architecture::defaultArchitecture();
  arch.tLoad = 20.0;
  arch.tStore = 20.0;
  arch.shuttleSpeed = 0.55;
  arch.tCz = 0.2;
  Schedule single;
  single.initial = {{0.0, 60.0}};
  ScheduleOp move;
  move.kind = OpKind::Move;
  move.atoms.push_back({0, {0.0, 60.0}, {110.0, 60.0}});
  single.ops.push_back(move);
  const auto s = applyTiming(single, arch);
  out.require(formatFixed(single.ops[0].duration) == "200.000",
              fmt::format("110 um move costs 200.000 us, got {}",
                          formatFixed(single.ops[0].duration)));
  out.require(formatFixed(s.shuttleTime) == "200.000", "shuttle_time 200");

  // decomposition on every compiled run, recomputed from the ops
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto circuit = generateRandom(16, 120, seed);
    for (const auto strategy : {Strategy::Naive, Strategy::Nalac}) {
      const auto result = compile(circuit, arch, strategy);
      double loadStore = 0.0;
      double shuttle = 0.0;
      for (const auto& op : result.schedule.ops) {
        if (op.kind == OpKind::Load) {
          loadStore += arch.tLoad;
        } else if (op.kind == OpKind::Store) {
          loadStore += arch.tStore;
        } else if (op.kind == OpKind::Move) {
          double longest = 0.0;
          for (const auto& m : op.atoms) {
            longest = std::max(longest, std::hypot(m.to.x - m.from.x,
                                                   m.to.y - m.from.y));
          }
          shuttle += longest / arch.shuttleSpeed;
        }
      }
      const auto& st = result.stats;
      out.require(formatFixed(st.routingOverhead) ==
                      formatFixed(st.loadStoreTime + st.shuttleTime),
                  fmt::format("seed {}: overhead decomposes", seed));
      out.require(formatFixed(st.loadStoreTime) == formatFixed(loadStore) &&
                      formatFixed(st.shuttleTime) == formatFixed(shuttle),
                  fmt::format("seed {}: stats match recomputed times", seed));
      ++checked;
    }
  }
  out.note(fmt::format("move=200.000us, {} compilations decomposed", checked));
  return out;
}

// 6 ---------------------------------------------------------------------------
auto tableDirections() -> Outcome {
  Outcome out;
  const auto arch = Architecture::defaultArchitecture();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto circuit = generateParallelLayers(20, 3, seed);
    const auto nalac = stats(circuit, arch, Strategy::Nalac);
    const auto naive = stats(circuit, arch, Strategy::Naive);
    const auto ratio = nalac.routingOverhead / naive.routingOverhead;
    out.require(ratio < 0.5, fmt::format("parallel-layers seed {}: overhead "
                                         "ratio {:.3f} < 0.5",
                                         seed, ratio));
    out.require(nalac.avgParallelCz >= 2.0,
                fmt::format("parallel-layers seed {}: avg parallel CZ {:.2f} "
                            ">= 2",
                            seed, nalac.avgParallelCz));
    out.note(fmt::format("parallel-layers/{}: ratio={:.3f} avg={:.2f}", seed,
                         ratio, nalac.avgParallelCz));
  }
  const std::vector<std::pair<std::string, Circuit>> serial{
      {"ghz20", generateGhz(20)}, {"chain20", generateChain(20)}};
  for (const auto& [name, circuit] : serial) {
    const auto nalac = stats(circuit, arch, Strategy::Nalac);
    const auto naive = stats(circuit, arch, Strategy::Naive);
    const auto ratio = nalac.routingOverhead / naive.routingOverhead;
    out.require(nalac.avgParallelCz == 1.0,
                fmt::format("{}: avg parallel CZ {:.3f} == 1.0", name,
                            nalac.avgParallelCz));
    out.require(ratio >= 0.8 && ratio <= 1.3,
                fmt::format("{}: overhead ratio {:.3f} in [0.8, 1.3]", name,
                            ratio));
    out.note(fmt::format("{}: nalac={:.1f}us naive={:.1f}us ratio={:.3f}",
                         name, nalac.routingOverhead, naive.routingOverhead,
                         ratio));
  }
  return out;
}

// 7 ---------------------------------------------------------------------------
auto arraySizeTrend() -> Outcome {
  Outcome out;
  const auto circuit = generateParallelLayers(20, 3, 0);
  for (const auto strategy : {Strategy::Nalac, Strategy::Naive}) {
    std::vector<RoutingStats> sweep;
    for (std::size_t size = 1; size <= 3; ++size) {
      auto arch = Architecture::defaultArchitecture();
      arch.arrayRows = size;
      arch.arrayCols = size;
      sweep.push_back(stats(circuit, arch, strategy));
    }
    const auto base = sweep.front().loadStoreTime;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      if (i > 0) {
        out.require(sweep[i].shuttleTime + 1e-9 >= sweep[i - 1].shuttleTime,
                    fmt::format("{}: shuttle time non-decreasing at size {}",
                                toString(strategy), i + 1));
      }
      const auto change = std::abs(sweep[i].loadStoreTime - base) / base;
      out.require(change < 0.2,
                  fmt::format("{}: load/store change {:.1f}% < 20% at size "
                              "{}",
                              toString(strategy), 100.0 * change, i + 1));
    }
    out.note(fmt::format(
        "{}: shuttle {:.1f}/{:.1f}/{:.1f} load_store {:.0f}/{:.0f}/{:.0f}",
        toString(strategy), sweep[0].shuttleTime, sweep[1].shuttleTime,
        sweep[2].shuttleTime, sweep[0].loadStoreTime, sweep[1].loadStoreTime,
        sweep[2].loadStoreTime));
  }
  // Diagnostics only: storage row capacity per array size, and the same
  // sweep on a circuit that fits one storage row at every size.
  std::vector<std::size_t> perRow;
  for (std::size_t size = 1; size <= 3; ++size) {
    auto arch = Architecture::defaultArchitecture();
    arch.arrayRows = size;
    arch.arrayCols = size;
    perRow.push_back(deriveLogicalGrid(arch).storage.cols);
  }
  out.note(fmt::format("storage qubits per row: {}/{}/{}", perRow[0],
                       perRow[1], perRow[2]));
  const auto small = generateParallelLayers(perRow.back(), 3, 0);
  for (const auto strategy : {Strategy::Nalac, Strategy::Naive}) {
    std::vector<RoutingStats> sweep;
    for (std::size_t size = 1; size <= 3; ++size) {
      auto arch = Architecture::defaultArchitecture();
      arch.arrayRows = size;
      arch.arrayCols = size;
      sweep.push_back(stats(small, arch, strategy));
    }
    out.note(fmt::format("diagnostic {} qubits, {}: shuttle {:.1f}/{:.1f}/"
                         "{:.1f} load_store {:.0f}/{:.0f}/{:.0f}",
                         perRow.back(), toString(strategy),
                         sweep[0].shuttleTime, sweep[1].shuttleTime,
                         sweep[2].shuttleTime, sweep[0].loadStoreTime,
                         sweep[1].loadStoreTime, sweep[2].loadStoreTime));
  }
  return out;
}

// 8 ---------------------------------------------------------------------------
auto zoneShapeTrend() -> Outcome {
  Outcome out;
  const auto wide = Architecture::defaultArchitecture();
  const auto narrow = Architecture::narrowArchitecture();
  std::vector<Circuit> set{generateParallelLayers(20, 3, 1), generateGhz(20),
                           generateRandomCz(30, 150, 2),
                           generateRandom(25, 200, 3)};
  for (const auto strategy : {Strategy::Nalac, Strategy::Naive}) {
    double wideLoad = 0.0;
    double wideShuttle = 0.0;
    double narrowLoad = 0.0;
    double narrowShuttle = 0.0;
    for (const auto& c : set) {
      const auto w = stats(c, wide, strategy);
      const auto n = stats(c, narrow, strategy);
      wideLoad += w.loadStoreTime;
      wideShuttle += w.shuttleTime;
      narrowLoad += n.loadStoreTime;
      narrowShuttle += n.shuttleTime;
    }
    out.require(narrowLoad >= wideLoad,
                fmt::format("{}: narrow load/store {:.0f} >= wide {:.0f}",
                            toString(strategy), narrowLoad, wideLoad));
    out.require(narrowShuttle >= wideShuttle,
                fmt::format("{}: narrow shuttle {:.0f} >= wide {:.0f}",
                            toString(strategy), narrowShuttle, wideShuttle));
    out.note(fmt::format("{}: load_store wide={:.0f} narrow={:.0f}; shuttle "
                         "wide={:.0f} narrow={:.0f}",
                         toString(strategy), wideLoad, narrowLoad,
                         wideShuttle, narrowShuttle));
  }
  return out;
}

// 9 ---------------------------------------------------------------------------
auto scalingSanity() -> Outcome {
  Outcome out;
  const auto arch = Architecture::defaultArchitecture();
  auto timeOf = [&](const std::size_t cz) {
    const auto circuit = generateRandomCz(100, cz, 42);
    std::vector<double> samples;
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = Clock::now();
      static_cast<void>(compile(circuit, arch, Strategy::Nalac));
      samples.push_back(seconds(start));
    }
    std::sort(samples.begin(), samples.end());
    return samples[1];
  };
  const auto t1000 = timeOf(1000);
  const auto t2000 = timeOf(2000);
  out.require(t1000 < 5.0, fmt::format("1000 CZs in {:.3f} s < 5 s", t1000));
  out.require(t2000 < 4.0 * t1000,
              fmt::format("doubling factor {:.2f} < 4", t2000 / t1000));
  out.note(fmt::format("1000 CZ: {:.3f}s, 2000 CZ: {:.3f}s, factor {:.2f}",
                       t1000, t2000, t2000 / t1000));
  return out;
}
} // namespace

auto main() -> int {
  const std::vector<std::pair<std::string, std::function<Outcome()>>>
      criteria{{"4-cycle coloring", fourCycle},
               {"worked instance", workedExample},
               {"constraint validation", constraintValidation},
               {"oracle equivalence", oracleEquivalence},
               {"timing arithmetic", timingArithmetic},
               {"directional table reproduction", tableDirections},
               {"array-size trend", arraySizeTrend},
               {"zone-shape trend", zoneShapeTrend},
               {"scaling sanity", scalingSanity}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.notes.push_back(fmt::format("exception: {}", e.what()));
    }
    fmt::print("criterion {}: {} ({})\n", i + 1,
               outcome.pass ? "PASS" : "FAIL", criteria[i].first);
    for (const auto& note : outcome.notes) {
      fmt::print("    {}\n", note);
    }
    failures += outcome.pass ? 0 : 1;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures,
             criteria.size());
  return failures == 0 ? 0 : 1;
}
