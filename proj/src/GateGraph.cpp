/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/GateGraph.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <fmt/format.h>
#include <optional>
#include <set>
#include <spdlog/spdlog.h>
#include <tuple>

namespace zar {
auto InteractionGraph::addEdge(Qubit a, Qubit b, const GateIndex gate)
    -> bool {
  if (a == b) {
    throw InternalError("interaction graph cannot hold self-loops");
  }
  if (a > b) {
    std::swap(a, b);
  }
  if (pairIndex.count({a, b}) != 0) {
    return false;
  }
  const auto id = edges.size();
  edges.push_back({a, b, gate});
  pairIndex[{a, b}] = id;
  for (const auto q : {a, b}) {
    auto& list = adjacency[q];
    if (list.empty()) {
      nodes.insert(std::upper_bound(nodes.begin(), nodes.end(), q), q);
    }
    list.push_back(id);
  }
  return true;
}

auto InteractionGraph::incident(const Qubit q) const
    -> const std::vector<std::size_t>& {
  static const std::vector<std::size_t> EMPTY;
  const auto it = adjacency.find(q);
  return it == adjacency.end() ? EMPTY : it->second;
}

auto InteractionGraph::adjacent(Qubit a, Qubit b) const -> bool {
  if (a > b) {
    std::swap(a, b);
  }
  return pairIndex.count({a, b}) != 0;
}

auto buildGraph(const Circuit& circuit, const std::vector<GateIndex>& front)
    -> InteractionGraph {
  InteractionGraph graph;
  auto sorted = front;
  std::sort(sorted.begin(), sorted.end());
  for (const auto idx : sorted) {
    const auto& gate = circuit.getGate(idx);
    if (gate.kind != GateKind::CZ) {
      throw InternalError(
          fmt::format("gate {} is not a CZ and cannot enter the graph", idx));
    }
    if (!graph.addEdge(gate.qubits[0], gate.qubits[1], idx)) {
      graph.defer(idx);
    }
  }
  return graph;
}

auto Partition::isAod(const Qubit q) const -> bool {
  return std::binary_search(aod.begin(), aod.end(), q);
}

auto maxIndependentSet(const InteractionGraph& graph) -> Partition {
  auto order = graph.getNodes();
  std::stable_sort(order.begin(), order.end(), [&](Qubit a, Qubit b) {
    return graph.degree(a) > graph.degree(b);
  });
  Partition p;
  std::set<Qubit> blocked;
  for (const auto q : order) {
    if (blocked.count(q) != 0) {
      continue;
    }
    p.aod.push_back(q);
    blocked.insert(q);
    for (const auto e : graph.incident(q)) {
      blocked.insert(graph.getEdge(e).other(q));
    }
  }
  std::sort(p.aod.begin(), p.aod.end());
  for (const auto q : graph.getNodes()) {
    if (!p.isAod(q)) {
      p.slm.push_back(q);
    }
  }
  for (std::size_t e = 0; e < graph.getEdges().size(); ++e) {
    const auto& edge = graph.getEdge(e);
    if (p.isAod(edge.u) || p.isAod(edge.v)) {
      p.coveredEdges.push_back(e);
    }
  }
  return p;
}

auto EdgeColoring::maxColor() const -> unsigned {
  return color.empty() ? 0U : *std::max_element(color.begin(), color.end());
}

auto EdgeColoring::aodOrder() const -> std::vector<Qubit> {
  return {processingOrder.rbegin(), processingOrder.rend()};
}

namespace {
using Bitset = boost::dynamic_bitset<>;

/**
 * @brief Precedence relation on SLM nodes with an incrementally maintained
 * transitive closure.
 */
class Precedence {
public:
  explicit Precedence(const std::size_t n) : reach(n, Bitset(n)) {}

  [[nodiscard]] auto reaches(const std::size_t a, const std::size_t b) const
      -> bool {
    return reach[a].test(b);
  }
  [[nodiscard]] auto closure(const std::size_t a) const -> const Bitset& {
    return reach[a];
  }
  [[nodiscard]] auto size() const -> std::size_t { return reach.size(); }

  void add(const std::size_t a, const std::size_t b) {
    direct.emplace(a, b);
    if (reach[a].test(b)) {
      return;
    }
    auto gained = reach[b];
    gained.set(b);
    for (std::size_t u = 0; u < reach.size(); ++u) {
      if (u == a || reach[u].test(a)) {
        reach[u] |= gained;
      }
    }
  }

  [[nodiscard]] auto edges() const
      -> const std::set<std::pair<std::size_t, std::size_t>>& {
    return direct;
  }

private:
  std::vector<Bitset> reach;
  std::set<std::pair<std::size_t, std::size_t>> direct;
};

/// Deterministic topological order (smallest qubit first among ready nodes).
auto topologicalOrder(const std::vector<Qubit>& nodes,
                      const std::set<std::pair<std::size_t, std::size_t>>&
                          edges) -> std::vector<std::size_t> {
  const auto n = nodes.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [a, b] : edges) {
    succ[a].push_back(b);
    ++indeg[b];
  }
  // node indices are sorted by qubit id, so index order is id order
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) {
      ready.insert(i);
    }
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const auto i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(i);
    for (const auto j : succ[i]) {
      if (--indeg[j] == 0) {
        ready.insert(j);
      }
    }
  }
  if (order.size() != n) {
    throw InternalError("precedence relation contains a cycle");
  }
  return order;
}
} // namespace

auto colorEdges(const InteractionGraph& graph, const Partition& partition)
    -> EdgeColoring {
  EdgeColoring result;
  result.color.assign(graph.getEdges().size(), 0);
  const auto& slm = partition.slm;
  const auto nS = slm.size();
  auto slmIndex = [&](const Qubit q) {
    return static_cast<std::size_t>(
        std::lower_bound(slm.begin(), slm.end(), q) - slm.begin());
  };

  result.processingOrder = partition.aod;
  std::stable_sort(result.processingOrder.begin(),
                   result.processingOrder.end(), [&](Qubit a, Qubit b) {
                     return graph.degree(a) > graph.degree(b);
                   });

  Precedence rel(nS);
  std::vector<unsigned> maxAt(nS, 0);
  std::vector<std::vector<unsigned>> colorsAt(nS);
  // (color, slm index) of every edge colored for earlier AOD nodes
  std::vector<std::pair<unsigned, std::size_t>> points;
  unsigned globalMax = 0;

  for (const auto v : result.processingOrder) {
    const auto snapshot = rel;
    std::vector<std::size_t> remaining = graph.incident(v);
    std::vector<std::pair<std::size_t, unsigned>> done; // (slm idx, color)
    std::vector<std::size_t> doneEdges;
    std::set<unsigned> usedAtV;
    unsigned localMax = globalMax;
    bool failed = false;

    while (!remaining.empty()) {
      // pick the next edge: minimal in the relation, then saturation,
      // then SLM degree, then id
      auto key = [&](const std::size_t e) {
        const auto s = slmIndex(graph.getEdge(e).other(v));
        bool minimal = true;
        for (const auto f : remaining) {
          const auto t = slmIndex(graph.getEdge(f).other(v));
          if (t != s && rel.reaches(t, s)) {
            minimal = false;
            break;
          }
        }
        std::set<unsigned> adjacentColors(usedAtV.begin(), usedAtV.end());
        adjacentColors.insert(colorsAt[s].begin(), colorsAt[s].end());
        return std::make_tuple(!minimal, -static_cast<long>(adjacentColors.size()),
                               -static_cast<long>(graph.degree(slm[s])),
                               slm[s]);
      };
      const auto it = std::min_element(
          remaining.begin(), remaining.end(),
          [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
      const auto e = *it;
      remaining.erase(it);
      const auto s = slmIndex(graph.getEdge(e).other(v));

      std::optional<unsigned> chosen;
      for (auto c = maxAt[s] + 1; c <= localMax + 1 && !chosen; ++c) {
        if (usedAtV.count(c) != 0) {
          continue;
        }
        Bitset reachable = rel.closure(s);
        std::vector<std::size_t> succ;
        for (const auto& [t, tc] : done) {
          if (tc > c) {
            succ.push_back(t);
          }
        }
        for (const auto& [pc, t] : points) {
          if (pc >= c) {
            succ.push_back(t);
          }
        }
        for (const auto t : succ) {
          reachable.set(t);
          reachable |= rel.closure(t);
        }
        bool cycle = reachable.test(s);
        for (const auto& [t, tc] : done) {
          if (tc < c && reachable.test(t)) {
            cycle = true;
          }
        }
        if (cycle) {
          continue;
        }
        chosen = c;
        for (const auto& [t, tc] : done) {
          if (tc < c) {
            rel.add(t, s);
          }
        }
        for (const auto t : succ) {
          rel.add(s, t);
        }
      }
      if (!chosen) {
        failed = true;
        break;
      }
      done.emplace_back(s, *chosen);
      doneEdges.push_back(e);
      usedAtV.insert(*chosen);
      localMax = std::max(localMax, *chosen);
    }

    if (failed) {
      // fresh colors above everything used so far, in a topological order
      // of the relation: consistent with every existing constraint
      SPDLOG_DEBUG("coloring fallback for AOD qubit {}", v);
      rel = snapshot;
      done.clear();
      doneEdges.clear();
      const auto topo = topologicalOrder(slm, rel.edges());
      std::vector<std::size_t> rank(nS);
      for (std::size_t i = 0; i < topo.size(); ++i) {
        rank[topo[i]] = i;
      }
      auto edgesOfV = graph.incident(v);
      std::sort(edgesOfV.begin(), edgesOfV.end(),
                [&](std::size_t a, std::size_t b) {
                  return rank[slmIndex(graph.getEdge(a).other(v))] <
                         rank[slmIndex(graph.getEdge(b).other(v))];
                });
      auto c = globalMax;
      std::optional<std::size_t> previous;
      for (const auto e : edgesOfV) {
        const auto s = slmIndex(graph.getEdge(e).other(v));
        done.emplace_back(s, ++c);
        doneEdges.push_back(e);
        if (previous) {
          rel.add(*previous, s);
        }
        previous = s;
      }
    }

    for (std::size_t i = 0; i < done.size(); ++i) {
      const auto& [s, c] = done[i];
      result.color[doneEdges[i]] = c;
      maxAt[s] = std::max(maxAt[s], c);
      colorsAt[s].push_back(c);
      points.emplace_back(c, s);
      globalMax = std::max(globalMax, c);
    }
  }

  for (const auto& [a, b] : rel.edges()) {
    result.inducedOrder.emplace_back(slm[a], slm[b]);
  }
  return result;
}

namespace {
auto acyclic(const std::map<Qubit, std::set<Qubit>>& succ) -> bool {
  // iterative three-color DFS
  std::map<Qubit, int> state;
  for (const auto& [start, unused] : succ) {
    if (state[start] != 0) {
      continue;
    }
    std::vector<std::pair<Qubit, std::set<Qubit>::const_iterator>> stack;
    state[start] = 1;
    stack.emplace_back(start, succ.at(start).begin());
    while (!stack.empty()) {
      auto& [node, it] = stack.back();
      const auto& out = succ.at(node);
      if (it == out.end()) {
        state[node] = 2;
        stack.pop_back();
        continue;
      }
      const auto next = *it++;
      if (state[next] == 1) {
        return false;
      }
      if (state[next] == 0) {
        state[next] = 1;
        if (succ.count(next) == 0) {
          state[next] = 2;
          continue;
        }
        stack.emplace_back(next, succ.at(next).begin());
      }
    }
  }
  return true;
}
} // namespace

auto conditionCHolds(const InteractionGraph& graph, const Partition& partition,
                     const EdgeColoring& coloring) -> bool {
  const auto& edges = graph.getEdges();
  if (coloring.color.size() != edges.size()) {
    return false;
  }
  std::map<Qubit, std::vector<std::pair<unsigned, Qubit>>> at;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    const bool covered = partition.isAod(edge.u) != partition.isAod(edge.v);
    const auto c = coloring.color[e];
    if (covered != (c > 0)) {
      return false;
    }
    if (!covered) {
      continue;
    }
    at[edge.u].emplace_back(c, edge.v);
    at[edge.v].emplace_back(c, edge.u);
  }
  std::map<Qubit, std::set<Qubit>> aodRelation;
  std::map<Qubit, std::set<Qubit>> slmRelation;
  for (auto& [node, list] : at) {
    std::sort(list.begin(), list.end());
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].first == list[i - 1].first) {
        return false; // not proper
      }
    }
    auto& relation = partition.isAod(node) ? slmRelation : aodRelation;
    for (std::size_t i = 1; i < list.size(); ++i) {
      relation[list[i - 1].second].insert(list[i].second);
    }
  }
  return acyclic(aodRelation) && acyclic(slmRelation);
}

auto dumpGraph(const InteractionGraph& graph, const Partition& partition,
               const EdgeColoring& coloring) -> std::string {
  std::string out;
  for (std::size_t e = 0; e < graph.getEdges().size(); ++e) {
    const auto& edge = graph.getEdge(e);
    const auto c = e < coloring.color.size() ? coloring.color[e] : 0U;
    const bool covered = partition.isAod(edge.u) || partition.isAod(edge.v);
    out += fmt::format("{} {} {} {}\n", edge.u, edge.v, c,
                       covered ? std::to_string(partition.aodEnd(edge))
                               : std::string("-"));
  }
  return out;
}
} // namespace zar
