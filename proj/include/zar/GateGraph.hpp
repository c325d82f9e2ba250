/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#pragma once

#include "zar/Circuit.hpp"
#include "zar/Definitions.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace zar {
struct InteractionEdge {
  Qubit u = 0; ///< smaller endpoint
  Qubit v = 0; ///< larger endpoint
  GateIndex gate = 0;

  [[nodiscard]] auto other(const Qubit q) const -> Qubit {
    return q == u ? v : u;
  }
};

/**
 * @brief Simple graph over the qubits of executable CZ gates. Edge ids are
 * positions in getEdges().
 */
class InteractionGraph {
public:
  InteractionGraph() = default;
  /// Adds an edge unless the pair is already connected; returns success.
  auto addEdge(Qubit a, Qubit b, GateIndex gate) -> bool;

  [[nodiscard]] auto getNodes() const -> const std::vector<Qubit>& {
    return nodes;
  }
  [[nodiscard]] auto getEdges() const -> const std::vector<InteractionEdge>& {
    return edges;
  }
  [[nodiscard]] auto getEdge(std::size_t e) const -> const InteractionEdge& {
    return edges.at(e);
  }
  /// Edge ids incident to q, in insertion order.
  [[nodiscard]] auto incident(Qubit q) const -> const std::vector<std::size_t>&;
  [[nodiscard]] auto degree(Qubit q) const -> std::size_t {
    return incident(q).size();
  }
  [[nodiscard]] auto hasNode(Qubit q) const -> bool {
    return adjacency.count(q) != 0;
  }
  [[nodiscard]] auto adjacent(Qubit a, Qubit b) const -> bool;
  /// Gates of the front that were not admitted because their pair was taken.
  [[nodiscard]] auto getDeferred() const -> const std::vector<GateIndex>& {
    return deferred;
  }
  void defer(GateIndex gate) { deferred.push_back(gate); }

private:
  std::vector<Qubit> nodes; ///< sorted ascending
  std::vector<InteractionEdge> edges;
  std::map<Qubit, std::vector<std::size_t>> adjacency;
  std::map<std::pair<Qubit, Qubit>, std::size_t> pairIndex;
  std::vector<GateIndex> deferred;
};

/// Graph of the CZ gates among `front`, in gate order.
[[nodiscard]] auto buildGraph(const Circuit& circuit,
                              const std::vector<GateIndex>& front)
    -> InteractionGraph;

/// Split of the graph nodes into AOD (independent set) and SLM qubits.
struct Partition {
  std::vector<Qubit> aod; ///< sorted ascending
  std::vector<Qubit> slm; ///< sorted ascending
  std::vector<std::size_t> coveredEdges; ///< ascending edge ids

  [[nodiscard]] auto isAod(Qubit q) const -> bool;
  /// AOD endpoint of a covered edge.
  [[nodiscard]] auto aodEnd(const InteractionEdge& e) const -> Qubit {
    return isAod(e.u) ? e.u : e.v;
  }
  [[nodiscard]] auto slmEnd(const InteractionEdge& e) const -> Qubit {
    return isAod(e.u) ? e.v : e.u;
  }
};

/// Greedy maximal independent set over (degree desc, id asc).
[[nodiscard]] auto maxIndependentSet(const InteractionGraph& graph)
    -> Partition;

/**
 * @brief Step assignment for covered edges. Color t means the edge's CZ is
 * executed in step t of the run; 0 marks an uncolored edge.
 */
struct EdgeColoring {
  std::vector<unsigned> color; ///< indexed by edge id
  /// AOD nodes in the order they were colored.
  std::vector<Qubit> processingOrder;
  /// Directed precedence a -> b between SLM nodes (a left of b).
  std::vector<std::pair<Qubit, Qubit>> inducedOrder;

  [[nodiscard]] auto maxColor() const -> unsigned;
  /// AOD qubits left to right (reverse processing order).
  [[nodiscard]] auto aodOrder() const -> std::vector<Qubit>;
};

/**
 * @brief Modified DSatur edge coloring. Every covered edge receives a
 * color; the precedence relation on SLM nodes stays acyclic.
 */
[[nodiscard]] auto colorEdges(const InteractionGraph& graph,
                              const Partition& partition) -> EdgeColoring;

/**
 * @brief Independent checker: proper coloring of the covered edges, colors
 * at every SLM node order its AOD neighbours consistently, and both the
 * AOD relation and the per-AOD-node SLM relation are acyclic.
 */
[[nodiscard]] auto conditionCHolds(const InteractionGraph& graph,
                                   const Partition& partition,
                                   const EdgeColoring& coloring) -> bool;

/// One line per edge: "u v color aod_side" ("-" for uncovered edges).
[[nodiscard]] auto dumpGraph(const InteractionGraph& graph,
                             const Partition& partition,
                             const EdgeColoring& coloring) -> std::string;
} // namespace zar
