/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Router.hpp"

#include "zar/GateGraph.hpp"
#include "zar/Placement.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <numeric>
#include <set>
#include <spdlog/spdlog.h>

namespace zar {
auto parseStrategy(const std::string_view name) -> Strategy {
  if (name == "naive") {
    return Strategy::Naive;
  }
  if (name == "nalac") {
    return Strategy::Nalac;
  }
  throw InputError(fmt::format("unknown strategy '{}'", name));
}

auto toString(const Strategy strategy) -> std::string {
  return strategy == Strategy::Naive ? "naive" : "nalac";
}

StorageState::StorageState(ZoneGrid grid, const std::size_t nQubits)
    : grid(std::move(grid)), sites(nQubits),
      occupants(this->grid.capacity()), used(this->grid.capacity(), false),
      placed(nQubits, false) {}

auto StorageState::occupant(const StorageSite& s) const
    -> std::optional<Qubit> {
  return occupants.at(s.row * grid.cols + s.col);
}

auto StorageState::unplacedCount() const -> std::size_t {
  return static_cast<std::size_t>(
      std::count(placed.begin(), placed.end(), false));
}

auto StorageState::freshFreeCount() const -> std::size_t {
  return static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
}

void StorageState::place(const Qubit q, const StorageSite& s) {
  const auto idx = s.row * grid.cols + s.col;
  if (occupants.at(idx) || sites.at(q)) {
    throw InternalError(fmt::format("cannot place qubit {} at ({}, {})", q,
                                    s.row, s.col));
  }
  occupants[idx] = q;
  used[idx] = true;
  sites[q] = s;
  placed[q] = true;
}

void StorageState::remove(const Qubit q) {
  const auto s = sites.at(q);
  if (!s) {
    throw InternalError(fmt::format("qubit {} is not in storage", q));
  }
  occupants[s->row * grid.cols + s->col].reset();
  sites[q].reset();
}

auto planLoads(const std::vector<Qubit>& order,
               const std::vector<double>& targetX, StorageState& state)
    -> std::vector<LoadBatch> {
  if (order.size() != targetX.size()) {
    throw InternalError("planLoads needs one target per qubit");
  }
  const auto& grid = state.getGrid();
  struct Open {
    LoadBatch batch;
    std::size_t lastCol = 0;
  };
  std::vector<Open> open;

  auto freshColAfter = [&](const std::size_t row, const std::size_t after,
                           const bool any) -> std::optional<std::size_t> {
    for (auto c = any ? 0 : after + 1; c < grid.cols; ++c) {
      const StorageSite s{row, c};
      if (state.isFree(s) && !state.everUsed(s)) {
        return c;
      }
    }
    return std::nullopt;
  };
  auto freshInRow = [&](const std::size_t row) {
    std::size_t n = 0;
    for (std::size_t c = 0; c < grid.cols; ++c) {
      const StorageSite s{row, c};
      n += state.isFree(s) && !state.everUsed(s) ? 1 : 0;
    }
    return n;
  };

  std::optional<std::size_t> previous;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto q = order[i];
    if (const auto site = state.position(q); site) {
      // best fit: the batch in this row with the largest column below ours
      std::optional<std::size_t> best;
      for (std::size_t b = 0; b < open.size(); ++b) {
        if (open[b].batch.row == site->row && open[b].lastCol < site->col &&
            (!best || open[b].lastCol > open[*best].lastCol)) {
          best = b;
        }
      }
      if (!best) {
        open.push_back({{site->row, {}, 0.0}, 0});
        best = open.size() - 1;
      }
      open[*best].batch.qubits.push_back(q);
      open[*best].lastCol = site->col;
      previous = best;
      continue;
    }
    if (state.isPlaced(q)) {
      throw InternalError(
          fmt::format("qubit {} is neither in storage nor unplaced", q));
    }
    // qubit without a position: extend a batch with a fresh site
    std::optional<std::pair<std::size_t, std::size_t>> choice;
    if (previous) {
      if (const auto c = freshColAfter(open[*previous].batch.row,
                                       open[*previous].lastCol, false)) {
        choice = std::make_pair(*previous, *c);
      }
    }
    for (std::size_t b = 0; b < open.size() && !choice; ++b) {
      if (const auto c =
              freshColAfter(open[b].batch.row, open[b].lastCol, false)) {
        choice = std::make_pair(b, *c);
      }
    }
    if (!choice) {
      std::size_t remaining = 0;
      for (auto j = i; j < order.size(); ++j) {
        remaining += state.isPlaced(order[j]) ? 0 : 1;
      }
      std::optional<std::size_t> row;
      for (std::size_t r = 0; r < grid.rows && !row; ++r) {
        if (freshInRow(r) >= remaining) {
          row = r;
        }
      }
      if (!row) {
        std::size_t most = 0;
        for (std::size_t r = 0; r < grid.rows; ++r) {
          if (const auto f = freshInRow(r); f > most) {
            most = f;
            row = r;
          }
        }
      }
      if (!row) {
        throw InternalError("no fresh storage site left for a new qubit");
      }
      open.push_back({{*row, {}, 0.0}, 0});
      choice = std::make_pair(open.size() - 1, *freshColAfter(*row, 0, true));
    }
    const auto [b, col] = *choice;
    state.place(q, {open[b].batch.row, col});
    open[b].batch.qubits.push_back(q);
    open[b].lastCol = col;
    previous = b;
  }

  std::map<Qubit, double> target;
  for (std::size_t i = 0; i < order.size(); ++i) {
    target[order[i]] = targetX[i];
  }
  std::vector<LoadBatch> batches;
  for (auto& o : open) {
    for (const auto q : o.batch.qubits) {
      const auto x = state.point(*state.position(q)).x;
      o.batch.misplacement =
          std::max(o.batch.misplacement, std::abs(x - target[q]));
    }
    batches.push_back(std::move(o.batch));
  }
  std::stable_sort(batches.begin(), batches.end(),
                   [](const LoadBatch& a, const LoadBatch& b) {
                     return a.misplacement > b.misplacement;
                   });
  return batches;
}

auto planStoreback(const std::vector<Qubit>& qubits, StorageState& state)
    -> std::vector<StoreBatch> {
  const auto& grid = state.getGrid();
  const auto m = qubits.size();
  if (m == 0) {
    return {};
  }
  std::vector<std::size_t> freeCount(grid.rows, 0);
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t c = 0; c < grid.cols; ++c) {
      freeCount[r] += state.isFree({r, c}) ? 1 : 0;
    }
  }
  auto sorted = freeCount;
  std::sort(sorted.rbegin(), sorted.rend());
  std::size_t k = 0;
  std::size_t covered = 0;
  while (k < sorted.size() && covered < m) {
    covered += sorted[k++];
  }
  if (covered < m) {
    throw InternalError("storage zone is full");
  }
  // lexicographically topmost set of k rows that fits the qubits
  std::vector<std::size_t> rows;
  std::size_t chosenSum = 0;
  for (std::size_t r = 0; r < grid.rows && rows.size() < k; ++r) {
    if (freeCount[r] == 0) {
      continue;
    }
    std::vector<std::size_t> rest(freeCount.begin() + static_cast<long>(r) + 1,
                                  freeCount.end());
    std::sort(rest.rbegin(), rest.rend());
    auto total = chosenSum + freeCount[r];
    for (std::size_t j = 0; j + rows.size() + 1 < k && j < rest.size(); ++j) {
      total += rest[j];
    }
    if (total >= m) {
      rows.push_back(r);
      chosenSum += freeCount[r];
    }
  }
  // rows beyond the minimal set, only needed if fresh sites are held back
  for (std::size_t r = 0; r < grid.rows; ++r) {
    if (std::find(rows.begin(), rows.end(), r) == rows.end()) {
      rows.push_back(r);
    }
  }

  const auto fresh = state.freshFreeCount();
  const auto reserve = state.unplacedCount();
  auto budget = fresh > reserve ? fresh - reserve : 0;
  std::vector<StoreBatch> batches;
  std::size_t next = 0;
  for (const auto r : rows) {
    if (next == m) {
      break;
    }
    StoreBatch batch{r, {}};
    for (std::size_t c = 0; c < grid.cols && next < m; ++c) {
      const StorageSite s{r, c};
      if (!state.isFree(s)) {
        continue;
      }
      if (!state.everUsed(s)) {
        if (budget == 0) {
          continue;
        }
        --budget;
      }
      state.place(qubits[next], s);
      batch.placements.emplace_back(qubits[next], c);
      ++next;
    }
    if (!batch.placements.empty()) {
      batches.push_back(std::move(batch));
    }
  }
  if (next != m) {
    throw InternalError("storage zone is full");
  }
  return batches;
}

namespace {
/// Appends ops and tracks qubit positions while a schedule is built.
class Emitter {
public:
  Emitter(Schedule& schedule, const std::size_t nQubits)
      : schedule(schedule), positions(nQubits) {}

  void setPosition(const Qubit q, const Point& p) { positions.at(q) = p; }
  [[nodiscard]] auto position(const Qubit q) const -> Point {
    if (!positions.at(q)) {
      throw InternalError(fmt::format("qubit {} has no position", q));
    }
    return *positions[q];
  }

  void load(const std::vector<Qubit>& qubits) {
    trapOp(OpKind::Load, qubits);
  }
  void store(const std::vector<Qubit>& qubits) {
    trapOp(OpKind::Store, qubits);
  }

  void move(const std::vector<std::pair<Qubit, Point>>& targets) {
    ScheduleOp op;
    op.kind = OpKind::Move;
    for (const auto& [q, to] : targets) {
      const auto from = position(q);
      if (samePosition(from, to)) {
        continue;
      }
      op.atoms.push_back({q, from, to});
      positions[q] = to;
    }
    if (!op.atoms.empty()) {
      schedule.ops.push_back(std::move(op));
    }
  }

  void rydberg(std::vector<GateIndex> gates, const std::size_t zone) {
    ScheduleOp op;
    op.kind = OpKind::Rydberg;
    std::sort(gates.begin(), gates.end());
    op.gates = std::move(gates);
    op.zone = zone;
    schedule.ops.push_back(std::move(op));
  }

  void oneQubit(const Gate& gate) {
    ScheduleOp op;
    op.kind = OpKind::OneQubit;
    op.gates = {gate.index};
    op.label = gate.label;
    op.global = gate.kind == GateKind::GlobalU;
    for (const auto q : gate.qubits) {
      op.atoms.push_back({q, {}, {}});
    }
    schedule.ops.push_back(std::move(op));
  }

private:
  Schedule& schedule;
  std::vector<std::optional<Point>> positions;

  void trapOp(const OpKind kind, const std::vector<Qubit>& qubits) {
    ScheduleOp op;
    op.kind = kind;
    for (const auto q : qubits) {
      const auto p = position(q);
      op.atoms.push_back({q, p, p});
    }
    schedule.ops.push_back(std::move(op));
  }
};

struct EntanglingRows {
  std::size_t slmRow = 0;   ///< row nearest to the storage zone
  std::size_t stageRow = 0; ///< next row, used to regroup AOD loads
};

auto entanglingRows(const LogicalGrid& grid) -> EntanglingRows {
  const auto& ent = grid.entangling;
  if (grid.storage.origin.y >= ent.origin.y) {
    return {ent.rows - 1, ent.rows - 2};
  }
  return {0, 1};
}

void checkCapacity(const Circuit& circuit, const LogicalGrid& grid) {
  if (circuit.getNqubits() > grid.storage.capacity()) {
    throw InputError(fmt::format(
        "capacity exceeded: circuit has {} qubits, storage zone holds {}",
        circuit.getNqubits(), grid.storage.capacity()));
  }
}

/// Emits and marks all single-qubit gates of the front; returns true if
/// any were found.
auto emitSingleQubitFront(Circuit& circuit, Emitter& emitter) -> bool {
  std::vector<GateIndex> oneQubit;
  for (const auto g : circuit.executableFront()) {
    if (circuit.getGate(g).isSingleQubit()) {
      oneQubit.push_back(g);
    }
  }
  for (const auto g : oneQubit) {
    emitter.oneQubit(circuit.getGate(g));
  }
  circuit.markExecuted(oneQubit);
  return !oneQubit.empty();
}

/// Keeps only the colored edges of the first `keep` processed AOD qubits
/// (or, with a single AOD qubit, its lowest `keep` colors) and renumbers
/// the colors consecutively.
auto shrinkColoring(const InteractionGraph& graph, const Partition& partition,
                    EdgeColoring coloring) -> EdgeColoring {
  if (coloring.processingOrder.size() > 1) {
    const auto dropped = coloring.processingOrder.back();
    coloring.processingOrder.pop_back();
    for (const auto e : graph.incident(dropped)) {
      coloring.color[e] = 0;
    }
  } else {
    const auto it =
        std::max_element(coloring.color.begin(), coloring.color.end());
    *it = 0;
  }
  std::vector<unsigned> used;
  for (const auto c : coloring.color) {
    if (c > 0) {
      used.push_back(c);
    }
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (auto& c : coloring.color) {
    if (c > 0) {
      c = static_cast<unsigned>(
          std::lower_bound(used.begin(), used.end(), c) - used.begin() + 1);
    }
  }
  static_cast<void>(partition);
  return coloring;
}

auto slmQubitsOfRun(const InteractionGraph& graph, const Partition& partition,
                    const EdgeColoring& coloring) -> std::vector<Qubit> {
  std::vector<Qubit> result;
  for (std::size_t e = 0; e < graph.getEdges().size(); ++e) {
    if (coloring.color[e] > 0) {
      result.push_back(partition.slmEnd(graph.getEdge(e)));
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

class NalacRouter {
public:
  NalacRouter(const Circuit& circuit, const Architecture& arch)
      : circuit(circuit), arch(arch), grid(deriveLogicalGrid(arch)),
        rows(entanglingRows(grid)),
        state(grid.storage, circuit.getNqubits()),
        emitter(schedule, circuit.getNqubits()) {
    checkCapacity(circuit, grid);
  }

  auto route() -> Schedule {
    while (!circuit.allExecuted()) {
      if (emitSingleQubitFront(circuit, emitter)) {
        continue;
      }
      runOnce();
    }
    // qubits never needed still need a home
    for (Qubit q = 0; q < circuit.getNqubits(); ++q) {
      if (!state.isPlaced(q)) {
        placeFresh(q);
      }
    }
    schedule.initial.resize(circuit.getNqubits());
    for (Qubit q = 0; q < circuit.getNqubits(); ++q) {
      schedule.initial[q] = initial.at(q);
    }
    return schedule;
  }

private:
  Circuit circuit;
  const Architecture& arch;
  LogicalGrid grid;
  EntanglingRows rows;
  StorageState state;
  Schedule schedule;
  Emitter emitter;
  std::map<Qubit, Point> initial;

  void placeFresh(const Qubit q) {
    for (std::size_t r = 0; r < grid.storage.rows; ++r) {
      for (std::size_t c = 0; c < grid.storage.cols; ++c) {
        const StorageSite s{r, c};
        if (state.isFree(s) && !state.everUsed(s)) {
          state.place(q, s);
          initial[q] = state.point(s);
          return;
        }
      }
    }
    throw InternalError("no fresh storage site left for a new qubit");
  }

  /// Records positions of qubits that just received their first site.
  void notePlacements(const std::vector<Qubit>& qubits) {
    for (const auto q : qubits) {
      const auto p = state.point(*state.position(q));
      if (initial.count(q) == 0) {
        initial[q] = p;
        emitter.setPosition(q, p);
      }
    }
  }

  [[nodiscard]] auto entanglingSite(const std::size_t row,
                                    const std::size_t col) const -> Point {
    return grid.entangling.site(row, col);
  }

  void runOnce() {
    std::vector<GateIndex> czFront;
    for (const auto g : circuit.executableFront()) {
      czFront.push_back(g);
    }
    const auto graph = buildGraph(circuit, czFront);
    const auto partition = maxIndependentSet(graph);
    auto coloring = colorEdges(graph, partition);

    SlmLayout layout;
    std::vector<Qubit> slmOrder;
    while (true) {
      slmOrder = orderSlmQubits(slmQubitsOfRun(graph, partition, coloring),
                                coloring);
      layout = insertRestingSlots(slmOrder, graph, partition, coloring);
      if (layout.width() <= grid.entangling.cols) {
        break;
      }
      SPDLOG_DEBUG("run needs {} columns, entangling zone has {}; shrinking",
                   layout.width(), grid.entangling.cols);
      coloring = shrinkColoring(graph, partition, std::move(coloring));
    }
    const RowGeometry geometry{entanglingSite(rows.slmRow, 0),
                               grid.entangling.pitchX, 0.5 * arch.rPair};
    const auto plan = planSteps(layout, geometry);
    emitRun(graph, partition, coloring, plan);
  }

  void loadBatches(const std::vector<LoadBatch>& batches) {
    for (const auto& batch : batches) {
      notePlacements(batch.qubits);
    }
  }

  void emitRun(const InteractionGraph& graph, const Partition& partition,
               const EdgeColoring& coloring, const StepPlan& plan) {
    const auto zone = arch.zoneIndex(ZoneKind::Entangling);
    // SLM-destined qubits
    std::vector<Qubit> green;
    std::vector<double> greenX;
    std::map<Qubit, Point> slot;
    for (const auto& [q, p] : plan.slmPositions) {
      green.push_back(q);
      greenX.push_back(p.x);
      slot[q] = p;
    }
    const auto greenBatches = planLoads(green, greenX, state);
    loadBatches(greenBatches);
    for (const auto& batch : greenBatches) {
      emitter.load(batch.qubits);
      std::vector<std::pair<Qubit, Point>> targets;
      for (const auto q : batch.qubits) {
        targets.emplace_back(q, slot[q]);
        state.remove(q);
      }
      emitter.move(targets);
      emitter.store(batch.qubits);
    }

    // AOD qubits
    const auto& aod = plan.aodOrder;
    std::vector<double> aodX;
    for (const auto& p : plan.positions.front()) {
      aodX.push_back(p.x);
    }
    const auto aodBatches = planLoads(aod, aodX, state);
    loadBatches(aodBatches);
    std::vector<std::pair<Qubit, Point>> firstStep;
    for (std::size_t i = 0; i < aod.size(); ++i) {
      firstStep.emplace_back(aod[i], plan.positions.front()[i]);
    }
    if (aodBatches.size() == 1) {
      emitter.load(aodBatches.front().qubits);
      for (const auto q : aod) {
        state.remove(q);
      }
      emitter.move(firstStep);
    } else {
      std::map<Qubit, std::size_t> aodIndex;
      for (std::size_t i = 0; i < aod.size(); ++i) {
        aodIndex[aod[i]] = i;
      }
      for (const auto& batch : aodBatches) {
        emitter.load(batch.qubits);
        std::vector<std::pair<Qubit, Point>> targets;
        for (const auto q : batch.qubits) {
          targets.emplace_back(q, entanglingSite(rows.stageRow, aodIndex[q]));
          state.remove(q);
        }
        emitter.move(targets);
        emitter.store(batch.qubits);
      }
      emitter.load(aod);
      emitter.move(firstStep);
    }

    // steps
    std::vector<std::vector<GateIndex>> gatesOfStep(plan.positions.size());
    std::vector<GateIndex> realized;
    for (std::size_t e = 0; e < graph.getEdges().size(); ++e) {
      if (const auto c = coloring.color[e]; c > 0) {
        gatesOfStep.at(c - 1).push_back(graph.getEdge(e).gate);
        realized.push_back(graph.getEdge(e).gate);
      }
    }
    for (std::size_t t = 0; t < plan.positions.size(); ++t) {
      if (t > 0) {
        std::vector<std::pair<Qubit, Point>> targets;
        for (std::size_t i = 0; i < aod.size(); ++i) {
          targets.emplace_back(aod[i], plan.positions[t][i]);
        }
        emitter.move(targets);
      }
      emitter.rydberg(gatesOfStep[t], zone);
    }
    static_cast<void>(partition);
    circuit.markExecuted(realized);

    // back to storage
    std::vector<Qubit> all = aod;
    all.insert(all.end(), green.begin(), green.end());
    const auto placements = planStoreback(all, state);
    std::map<Qubit, std::size_t> targetRow;
    std::map<Qubit, Point> home;
    for (const auto& batch : placements) {
      for (const auto& [q, col] : batch.placements) {
        targetRow[q] = batch.row;
        home[q] = grid.storage.site(batch.row, col);
      }
    }
    std::set<std::size_t> aodRows;
    for (const auto q : aod) {
      aodRows.insert(targetRow[q]);
    }
    // qubits held in SLM traps of the entangling zone, by source row
    std::vector<std::pair<std::size_t, std::vector<Qubit>>> held;
    if (aodRows.size() == 1) {
      std::vector<std::pair<Qubit, Point>> targets;
      for (const auto q : aod) {
        targets.emplace_back(q, home[q]);
      }
      emitter.move(targets);
      emitter.store(aod);
    } else {
      std::vector<std::pair<Qubit, Point>> targets;
      for (std::size_t i = 0; i < aod.size(); ++i) {
        targets.emplace_back(aod[i], entanglingSite(rows.stageRow, i));
      }
      emitter.move(targets);
      emitter.store(aod);
      held.emplace_back(rows.stageRow, aod);
    }
    held.emplace_back(rows.slmRow, green);
    for (const auto& [source, qubits] : held) {
      std::map<std::size_t, std::vector<Qubit>> byTarget;
      for (const auto q : qubits) {
        byTarget[targetRow[q]].push_back(q);
      }
      for (const auto& [row, group] : byTarget) {
        emitter.load(group);
        std::vector<std::pair<Qubit, Point>> targets;
        for (const auto q : group) {
          targets.emplace_back(q, home[q]);
        }
        emitter.move(targets);
        emitter.store(group);
      }
    }
    ++schedule.runs;
  }
};
} // namespace

auto routeNalac(const Circuit& circuit, const Architecture& arch)
    -> Schedule {
  NalacRouter router(circuit, arch);
  return router.route();
}

auto routeNaive(const Circuit& circuit, const Architecture& arch)
    -> Schedule {
  const auto grid = deriveLogicalGrid(arch);
  checkCapacity(circuit, grid);
  const auto rows = entanglingRows(grid);
  Schedule schedule;
  const auto n = circuit.getNqubits();
  Emitter emitter(schedule, n);
  for (Qubit q = 0; q < n; ++q) {
    const auto p = grid.storage.site(q / grid.storage.cols,
                                     q % grid.storage.cols);
    schedule.initial.push_back(p);
    emitter.setPosition(q, p);
  }
  const auto slot = grid.entangling.site(rows.slmRow, 0);
  const Point partnerSpot{slot.x + 0.5 * arch.rPair, slot.y};
  const auto zone = arch.zoneIndex(ZoneKind::Entangling);
  for (const auto& gate : circuit.getGates()) {
    if (gate.isSingleQubit()) {
      emitter.oneQubit(gate);
      continue;
    }
    const auto a = std::min(gate.qubits[0], gate.qubits[1]);
    const auto b = std::max(gate.qubits[0], gate.qubits[1]);
    const auto homeA = emitter.position(a);
    const auto homeB = emitter.position(b);
    emitter.load({a});
    emitter.move({{a, slot}});
    emitter.store({a});
    emitter.load({b});
    emitter.move({{b, partnerSpot}});
    emitter.rydberg({gate.index}, zone);
    emitter.move({{b, homeB}});
    emitter.store({b});
    emitter.load({a});
    emitter.move({{a, homeA}});
    emitter.store({a});
    ++schedule.runs;
  }
  return schedule;
}

auto compile(const Circuit& circuit, const Architecture& arch,
             const Strategy strategy) -> CompileResult {
  const auto start = std::chrono::steady_clock::now();
  auto schedule = strategy == Strategy::Naive ? routeNaive(circuit, arch)
                                              : routeNalac(circuit, arch);
  auto stats = applyTiming(schedule, arch);
  if (arch.atomsPerQubit() > 1) {
    schedule = expandToPhysical(schedule, arch);
  }
  const auto end = std::chrono::steady_clock::now();
  stats.compileTimeMs =
      std::chrono::duration<double, std::milli>(end - start).count();
  return {std::move(schedule), stats};
}
} // namespace zar
