/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "TestUtils.hpp"
#include "zar/Placement.hpp"

#include <gtest/gtest.h>
#include <random>

namespace zar {
namespace {
using test::graphOf;

struct Run {
  InteractionGraph graph;
  Partition partition;
  EdgeColoring coloring;
  std::vector<Qubit> slmOrder;
  SlmLayout layout;
};

auto makeRun(InteractionGraph g) -> Run {
  Run run;
  run.graph = std::move(g);
  run.partition = maxIndependentSet(run.graph);
  run.coloring = colorEdges(run.graph, run.partition);
  run.slmOrder = orderSlmQubits(run.partition.slm, run.coloring);
  run.layout = insertRestingSlots(run.slmOrder, run.graph, run.partition,
                                  run.coloring);
  return run;
}

auto runOf(const Circuit& c) -> Run {
  return makeRun(buildGraph(c, c.executableFront()));
}

constexpr double R_PAIR = 2.0;
constexpr double R_SAFE = 4.0;
const RowGeometry ROW{{0.0, 0.0}, R_SAFE + R_PAIR + 4.0, R_PAIR / 2.0};

auto slmPoint(const StepPlan& plan, const Qubit q) -> Point {
  for (const auto& [s, p] : plan.slmPositions) {
    if (s == q) {
      return p;
    }
  }
  throw std::out_of_range("slm qubit not in plan");
}

/// Checks every geometric invariant of a step plan against the coloring.
void checkPlan(const Run& run, const StepPlan& plan) {
  const auto& g = run.graph;
  const auto steps = run.coloring.maxColor();
  ASSERT_EQ(plan.positions.size(), steps);
  EXPECT_EQ(plan.aodOrder, run.coloring.aodOrder());
  std::vector<std::size_t> realized(g.getEdges().size(), 0);
  for (std::size_t t = 0; t < steps; ++t) {
    const auto& aodAt = plan.positions[t];
    ASSERT_EQ(aodAt.size(), plan.aodOrder.size());
    for (std::size_t i = 1; i < aodAt.size(); ++i) {
      EXPECT_LT(aodAt[i - 1].x, aodAt[i].x) << "crossing at step " << t + 1;
    }
    if (t > 0) {
      for (std::size_t i = 0; i < aodAt.size(); ++i) {
        EXPECT_GE(aodAt[i].x, plan.positions[t - 1][i].x) << "leftward move";
      }
    }
    // all atoms of this step
    std::vector<std::pair<Qubit, Point>> atoms = plan.slmPositions;
    for (std::size_t i = 0; i < aodAt.size(); ++i) {
      atoms.emplace_back(plan.aodOrder[i], aodAt[i]);
    }
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      for (std::size_t b = a + 1; b < atoms.size(); ++b) {
        const auto d = distance(atoms[a].second, atoms[b].second);
        if (d >= R_SAFE) {
          continue;
        }
        ASSERT_LT(d, R_PAIR) << "pair in the forbidden band";
        bool intended = false;
        for (std::size_t e = 0; e < g.getEdges().size(); ++e) {
          const auto& edge = g.getEdge(e);
          const bool match = (edge.u == atoms[a].first &&
                              edge.v == atoms[b].first) ||
                             (edge.v == atoms[a].first &&
                              edge.u == atoms[b].first);
          if (match && run.coloring.color[e] == t + 1) {
            intended = true;
            ++realized[e];
          }
        }
        EXPECT_TRUE(intended) << atoms[a].first << "-" << atoms[b].first
                              << " interact at step " << t + 1;
      }
    }
  }
  for (std::size_t e = 0; e < g.getEdges().size(); ++e) {
    EXPECT_EQ(realized[e], run.coloring.color[e] > 0 ? 1 : 0)
        << "edge " << e;
  }
  EXPECT_EQ(run.layout.slots.size(),
            run.partition.slm.size() + run.layout.restingCount());
}
} // namespace

// --- orderSlmQubits ------------------------------------------------------------

TEST(OrderSlmQubits, WorkedExample) {
  const auto run = runOf(test::fig6Circuit());
  EXPECT_EQ(run.slmOrder, (std::vector<Qubit>{5, 6, 2, 4}));
}

TEST(OrderSlmQubits, StarFollowsColors) {
  const auto run = makeRun(graphOf({{0, 3}, {0, 1}, {0, 4}, {0, 2}}));
  std::vector<std::pair<unsigned, Qubit>> byColor;
  for (const auto q : run.partition.slm) {
    byColor.emplace_back(test::colorOf(run.graph, run.coloring, 0, q), q);
  }
  std::sort(byColor.begin(), byColor.end());
  std::vector<Qubit> expected;
  for (const auto& [c, q] : byColor) {
    expected.push_back(q);
  }
  EXPECT_EQ(run.slmOrder, expected);
}

TEST(OrderSlmQubits, DisconnectedEdgesFollowAodOrder) {
  // equal degrees: q0 is processed first and therefore sits right of q2,
  // so its partner q1 has to sit right of q3
  const auto run = makeRun(graphOf({{2, 3}, {0, 1}}));
  EXPECT_EQ(run.partition.aod, (std::vector<Qubit>{0, 2}));
  EXPECT_EQ(run.coloring.aodOrder(), (std::vector<Qubit>{2, 0}));
  EXPECT_EQ(run.slmOrder, (std::vector<Qubit>{3, 1}));
  const auto plan = planSteps(run.layout, ROW);
  checkPlan(run, plan);
}

TEST(OrderSlmQubits, UnrelatedQubitsByQubitId) {
  EdgeColoring coloring;
  coloring.inducedOrder = {{4, 2}};
  EXPECT_EQ(orderSlmQubits({1, 2, 3, 4}, coloring),
            (std::vector<Qubit>{1, 3, 4, 2}));
  coloring.inducedOrder.emplace_back(2, 4);
  EXPECT_THROW(static_cast<void>(orderSlmQubits({2, 4}, coloring)),
               InternalError);
}

TEST(OrderSlmQubits, LinearExtensionOfInducedOrder) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 rng(seed);
    const auto run = makeRun(graphOf(test::randomPairs(rng, 10, 0.3)));
    std::map<Qubit, std::size_t> rank;
    for (std::size_t i = 0; i < run.slmOrder.size(); ++i) {
      rank[run.slmOrder[i]] = i;
    }
    EXPECT_EQ(rank.size(), run.partition.slm.size());
    for (const auto& [a, b] : run.coloring.inducedOrder) {
      if (rank.count(a) != 0 && rank.count(b) != 0) {
        EXPECT_LT(rank[a], rank[b]) << seed;
      }
    }
    // per AOD qubit, partners appear left to right in color order
    for (const auto v : run.partition.aod) {
      std::vector<std::pair<unsigned, Qubit>> partners;
      for (const auto e : run.graph.incident(v)) {
        partners.emplace_back(run.coloring.color[e],
                              run.graph.getEdge(e).other(v));
      }
      std::sort(partners.begin(), partners.end());
      for (std::size_t i = 1; i < partners.size(); ++i) {
        EXPECT_LT(rank[partners[i - 1].second], rank[partners[i].second])
            << seed;
      }
    }
  }
}

// --- insertRestingSlots ----------------------------------------------------------

TEST(InsertRestingSlots, WorkedExampleNeedsOneSlot) {
  const auto run = runOf(test::fig6Circuit());
  EXPECT_EQ(run.layout.restingCount(), 1);
  EXPECT_EQ(run.layout.slots.size(), 5);
  EXPECT_EQ(run.layout.steps(), 4);
}

TEST(InsertRestingSlots, BusyQubitsNeedNoSlots) {
  const auto matching = makeRun(graphOf({{0, 1}, {2, 3}, {4, 5}}));
  EXPECT_EQ(matching.layout.restingCount(), 0);
  const auto star = makeRun(graphOf({{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_EQ(star.layout.restingCount(), 0);
  EXPECT_EQ(star.layout.steps(), 3);
}

TEST(InsertRestingSlots, ColumnsNeverDecrease) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 rng(seed);
    const auto run = makeRun(graphOf(test::randomPairs(rng, 10, 0.3)));
    const auto& layout = run.layout;
    for (std::size_t t = 0; t < layout.steps(); ++t) {
      for (std::size_t i = 0; i < layout.aodOrder.size(); ++i) {
        if (i > 0) {
          EXPECT_LT(layout.column[t][i - 1], layout.column[t][i]) << seed;
        }
        if (t > 0) {
          EXPECT_GE(layout.column[t][i], layout.column[t - 1][i]) << seed;
        }
        EXPECT_LT(layout.column[t][i], layout.width()) << seed;
      }
    }
  }
}

// --- planSteps -----------------------------------------------------------------

TEST(PlanSteps, SingleEdge) {
  const auto run = makeRun(graphOf({{0, 1}}));
  const auto plan = planSteps(run.layout, ROW);
  ASSERT_EQ(plan.positions.size(), 1);
  const auto slm = slmPoint(plan, 1);
  EXPECT_NEAR(plan.positions[0][0].x, slm.x + ROW.pairOffset, 1e-9);
  EXPECT_NEAR(plan.positions[0][0].y, slm.y, 1e-9);
  checkPlan(run, plan);
}

TEST(PlanSteps, FourCycleKeepsAodOrder) {
  const auto run = runOf(test::cycleCircuit());
  const auto plan = planSteps(run.layout, ROW);
  EXPECT_EQ(plan.positions.size(), 3);
  checkPlan(run, plan);
}

TEST(PlanSteps, WorkedExampleFirstStep) {
  const auto run = runOf(test::fig6Circuit());
  const auto plan = planSteps(run.layout, ROW);
  checkPlan(run, plan);
  ASSERT_EQ(plan.aodOrder.back(), 7);
  const auto q7 = plan.positions[0].back();
  EXPECT_NEAR(q7.x, slmPoint(plan, 5).x + ROW.pairOffset, 1e-9);
  // SLM qubits sit left to right in the topological order
  EXPECT_LT(slmPoint(plan, 5).x, slmPoint(plan, 6).x);
  EXPECT_LT(slmPoint(plan, 6).x, slmPoint(plan, 2).x);
  EXPECT_LT(slmPoint(plan, 2).x, slmPoint(plan, 4).x);
}

TEST(PlanStepsProperties, RandomGraphsSatisfyGeometry) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    std::mt19937_64 rng(seed);
    const auto run = makeRun(graphOf(test::randomPairs(rng, 10, 0.3)));
    const auto plan = planSteps(run.layout, ROW);
    SCOPED_TRACE(seed);
    checkPlan(run, plan);
  }
}
} // namespace zar
