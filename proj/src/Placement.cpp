/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Placement.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>
#include <map>
#include <set>

namespace zar {
auto orderSlmQubits(const std::vector<Qubit>& slmQubits,
                    const EdgeColoring& coloring) -> std::vector<Qubit> {
  std::vector<Qubit> nodes = slmQubits;
  std::sort(nodes.begin(), nodes.end());
  std::map<Qubit, std::set<Qubit>> succ;
  std::map<Qubit, std::size_t> indeg;
  for (const auto q : nodes) {
    indeg[q] = 0;
  }
  for (const auto& [a, b] : coloring.inducedOrder) {
    if (indeg.count(a) == 0 || indeg.count(b) == 0) {
      continue; // relation entries of qubits outside this run
    }
    if (succ[a].insert(b).second) {
      ++indeg[b];
    }
  }
  std::set<Qubit> ready;
  for (const auto& [q, d] : indeg) {
    if (d == 0) {
      ready.insert(q);
    }
  }
  std::vector<Qubit> order;
  while (!ready.empty()) {
    const auto q = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(q);
    for (const auto r : succ[q]) {
      if (--indeg[r] == 0) {
        ready.insert(r);
      }
    }
  }
  if (order.size() != nodes.size()) {
    throw InternalError("induced SLM order contains a cycle");
  }
  return order;
}

auto SlmLayout::restingCount() const -> std::size_t {
  return static_cast<std::size_t>(std::count_if(
      slots.begin(), slots.end(),
      [](const LayoutSlot& s) { return s.isResting(); }));
}

auto SlmLayout::columnOf(const Qubit slmQubit) const -> std::size_t {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].qubit == slmQubit) {
      return leftParking + i;
    }
  }
  throw InternalError(fmt::format("qubit {} has no SLM slot", slmQubit));
}

auto insertRestingSlots(const std::vector<Qubit>& slmOrder,
                        const InteractionGraph& graph,
                        const Partition& partition,
                        const EdgeColoring& coloring) -> SlmLayout {
  SlmLayout layout;
  layout.aodOrder = coloring.aodOrder();
  const auto nA = layout.aodOrder.size();
  const auto n = slmOrder.size();
  const auto nT = static_cast<std::size_t>(coloring.maxColor());
  constexpr auto NONE = std::numeric_limits<std::size_t>::max();

  std::map<Qubit, std::size_t> slotIndex;
  for (std::size_t p = 0; p < n; ++p) {
    slotIndex[slmOrder[p]] = p;
  }
  std::map<Qubit, std::size_t> aodIndex;
  for (std::size_t i = 0; i < nA; ++i) {
    aodIndex[layout.aodOrder[i]] = i;
  }

  // active[i][t]: SLM slot visited by AOD qubit i in step t (1-based t)
  std::vector<std::vector<std::size_t>> active(
      nA, std::vector<std::size_t>(nT + 2, NONE));
  layout.partner.assign(nT, std::vector<std::optional<Qubit>>(nA));
  for (std::size_t e = 0; e < graph.getEdges().size(); ++e) {
    const auto c = coloring.color[e];
    if (c == 0) {
      continue;
    }
    const auto& edge = graph.getEdge(e);
    const auto a = partition.aodEnd(edge);
    const auto s = partition.slmEnd(edge);
    if (aodIndex.count(a) == 0 || slotIndex.count(s) == 0) {
      throw InternalError(
          fmt::format("colored edge {}-{} outside the layout", edge.u, edge.v));
    }
    active[aodIndex[a]][c] = slotIndex[s];
    layout.partner[c - 1][aodIndex[a]] = s;
  }

  // hi[i][t]: smallest slot visited by any AOD qubit >= i at any step >= t
  std::vector<std::vector<std::size_t>> hi(
      nA + 1, std::vector<std::size_t>(nT + 2, n));
  for (std::size_t i = nA; i-- > 0;) {
    for (std::size_t t = nT; t >= 1; --t) {
      auto h = std::min(hi[i + 1][t], hi[i][t + 1]);
      if (active[i][t] != NONE) {
        h = std::min(h, active[i][t]);
      }
      hi[i][t] = h;
    }
  }

  // keys: gap g -> 2g, slot p -> 2p + 1
  std::vector<std::vector<long>> key(nA, std::vector<long>(nT + 1, -1));
  std::vector<std::vector<std::size_t>> gapOf(
      nA, std::vector<std::size_t>(nT + 1, NONE));
  std::vector<std::size_t> capacity(n + 1, 0);
  for (std::size_t t = 1; t <= nT; ++t) {
    std::vector<std::size_t> occupied(n + 1, 0);
    for (std::size_t i = 0; i < nA; ++i) {
      const auto left = i > 0 ? key[i - 1][t] : -1L;
      const auto before = t > 1 ? key[i][t - 1] : -1L;
      if (active[i][t] != NONE) {
        const auto k = 2 * static_cast<long>(active[i][t]) + 1;
        if (k <= left || k < before) {
          throw InternalError(fmt::format(
              "AOD qubit {} cannot reach its partner in step {} without "
              "crossing",
              layout.aodOrder[i], t));
        }
        key[i][t] = k;
        continue;
      }
      const auto lo = std::max(left, before);
      const auto minGap = static_cast<std::size_t>((lo + 1) / 2);
      const auto maxGap = hi[i][t];
      if (minGap > maxGap) {
        throw InternalError(fmt::format(
            "no resting position for AOD qubit {} in step {}",
            layout.aodOrder[i], t));
      }
      std::size_t gap = NONE;
      if (minGap == 0) {
        gap = 0;
      } else if (maxGap == n) {
        gap = n;
      } else {
        for (auto g = minGap; g <= maxGap && gap == NONE; ++g) {
          if (occupied[g] < capacity[g]) {
            gap = g;
          }
        }
        if (gap == NONE) {
          gap = minGap;
        }
      }
      ++occupied[gap];
      capacity[gap] = std::max(capacity[gap], occupied[gap]);
      key[i][t] = 2 * static_cast<long>(gap);
      gapOf[i][t] = gap;
    }
  }

  layout.leftParking = capacity[0];
  layout.rightParking = n > 0 ? capacity[n] : 0;
  std::vector<std::size_t> gapStart(n + 1, 0);
  std::vector<std::size_t> slotColumn(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    if (p > 0) {
      gapStart[p] = layout.leftParking + layout.slots.size();
      for (std::size_t k = 0; k < capacity[p]; ++k) {
        layout.slots.push_back({});
      }
    }
    slotColumn[p] = layout.leftParking + layout.slots.size();
    layout.slots.push_back({slmOrder[p]});
  }
  gapStart[n] = layout.leftParking + layout.slots.size();

  layout.column.assign(nT, std::vector<std::size_t>(nA, 0));
  for (std::size_t t = 1; t <= nT; ++t) {
    std::size_t i = 0;
    while (i < nA) {
      if (active[i][t] != NONE) {
        layout.column[t - 1][i] = slotColumn[active[i][t]];
        ++i;
        continue;
      }
      // a group of consecutive idle qubits in the same gap, right-aligned
      const auto g = gapOf[i][t];
      auto j = i;
      while (j < nA && active[j][t] == NONE && gapOf[j][t] == g) {
        ++j;
      }
      const auto m = j - i;
      for (std::size_t k = 0; k < m; ++k) {
        layout.column[t - 1][i + k] = gapStart[g] + capacity[g] - m + k;
      }
      i = j;
    }
  }
  return layout;
}

auto planSteps(const SlmLayout& layout, const RowGeometry& row) -> StepPlan {
  StepPlan plan;
  plan.aodOrder = layout.aodOrder;
  auto columnX = [&](const std::size_t col) {
    return row.origin.x + static_cast<double>(col) * row.pitch;
  };
  for (std::size_t p = 0; p < layout.slots.size(); ++p) {
    if (const auto& q = layout.slots[p].qubit; q) {
      plan.slmPositions.emplace_back(
          *q, Point{columnX(layout.leftParking + p), row.origin.y});
    }
  }
  const auto nA = layout.aodOrder.size();
  for (std::size_t t = 0; t < layout.steps(); ++t) {
    std::vector<Point> positions(nA);
    for (std::size_t i = 0; i < nA; ++i) {
      const auto col = layout.column[t][i];
      if (col >= layout.width()) {
        throw InternalError("AOD column outside the layout");
      }
      const auto offset = layout.partner[t][i] ? row.pairOffset : 0.0;
      positions[i] = {columnX(col) + offset, row.origin.y};
      if (i > 0 && !(positions[i].x > positions[i - 1].x)) {
        throw InternalError(
            fmt::format("AOD qubits {} and {} cross in step {}",
                        layout.aodOrder[i - 1], layout.aodOrder[i], t + 1));
      }
      if (t > 0 && positions[i].x < plan.positions[t - 1][i].x) {
        throw InternalError(fmt::format(
            "AOD qubit {} moves leftwards in step {}", layout.aodOrder[i],
            t + 1));
      }
    }
    plan.positions.push_back(std::move(positions));
  }
  return plan;
}
} // namespace zar
