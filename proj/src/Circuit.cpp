/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Circuit.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <sstream>

namespace zar {
namespace {
constexpr std::array DIAGONAL_LABELS{"z", "rz", "s", "t", "p"};

auto splitWords(std::string_view line) -> std::vector<std::string_view> {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) != 0)) {
      ++i;
    }
    const auto start = i;
    while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) == 0)) {
      ++i;
    }
    if (i > start) {
      words.emplace_back(line.substr(start, i - start));
    }
  }
  return words;
}

auto parseCount(std::string_view word, const std::size_t lineNo)
    -> std::size_t {
  std::size_t value = 0;
  const auto* end = word.data() + word.size();
  const auto [ptr, ec] = std::from_chars(word.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InputError(
        fmt::format("line {}: expected a non-negative integer, got '{}'",
                    lineNo, word));
  }
  return value;
}
} // namespace

auto isDiagonalLabel(const std::string_view label) -> bool {
  return std::any_of(DIAGONAL_LABELS.begin(), DIAGONAL_LABELS.end(),
                     [&](const char* d) { return label == d; });
}

auto Gate::isDiagonal() const -> bool {
  return kind == GateKind::CZ || isDiagonalLabel(label);
}

auto Gate::actsOn(const Qubit q) const -> bool {
  return kind == GateKind::GlobalU ||
         std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

auto commutes(const Gate& a, const Gate& b) -> bool {
  if (a.isDiagonal() && b.isDiagonal()) {
    return true;
  }
  if (a.kind == GateKind::GlobalU || b.kind == GateKind::GlobalU) {
    return false;
  }
  return std::none_of(a.qubits.begin(), a.qubits.end(),
                      [&](const Qubit q) { return b.actsOn(q); });
}

Circuit::Circuit(const std::size_t nQubits)
    : nQubits(nQubits), perQubit(nQubits), cursor(nQubits, 0) {}

void Circuit::checkQubit(const Qubit q) const {
  if (q >= nQubits) {
    throw InputError(fmt::format("qubit {} out of range (circuit has {})", q,
                                 nQubits));
  }
}

auto Circuit::addCZ(const Qubit a, const Qubit b) -> GateIndex {
  checkQubit(a);
  checkQubit(b);
  if (a == b) {
    throw InputError("CZ with identical qubits");
  }
  const auto idx = gates.size();
  gates.push_back({GateKind::CZ, {a, b}, "", idx});
  executed.push_back(false);
  perQubit[a].push_back(idx);
  perQubit[b].push_back(idx);
  return idx;
}

auto Circuit::addLocal(std::string label, const Qubit q) -> GateIndex {
  checkQubit(q);
  if (label.empty()) {
    throw InputError("single-qubit gate without label");
  }
  const auto idx = gates.size();
  gates.push_back({GateKind::LocalU, {q}, std::move(label), idx});
  executed.push_back(false);
  perQubit[q].push_back(idx);
  return idx;
}

auto Circuit::addGlobal(std::string label) -> GateIndex {
  if (label.empty()) {
    throw InputError("global gate without label");
  }
  const auto idx = gates.size();
  gates.push_back({GateKind::GlobalU, {}, std::move(label), idx});
  executed.push_back(false);
  for (auto& list : perQubit) {
    list.push_back(idx);
  }
  globals.push_back(idx);
  return idx;
}

auto Circuit::czCount() const -> std::size_t {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(),
                    [](const Gate& g) { return g.kind == GateKind::CZ; }));
}

auto Circuit::executableFront() const -> std::vector<GateIndex> {
  std::vector<GateIndex> front;
  if (nQubits == 0) {
    for (const auto g : globals) {
      if (!executed[g]) {
        front.push_back(g);
      }
    }
    return front;
  }
  // number of qubits on which a gate is not blocked
  std::vector<std::size_t> okCount(gates.size(), 0);
  for (std::size_t q = 0; q < nQubits; ++q) {
    const auto& list = perQubit[q];
    bool first = true;
    for (auto i = cursor[q]; i < list.size(); ++i) {
      const auto& gate = gates[list[i]];
      if (executed[gate.index]) {
        continue;
      }
      if (first) {
        ++okCount[gate.index];
        first = false;
        if (!gate.isDiagonal()) {
          break;
        }
        continue;
      }
      if (!gate.isDiagonal()) {
        break;
      }
      ++okCount[gate.index];
    }
  }
  for (const auto& gate : gates) {
    const auto support =
        gate.kind == GateKind::GlobalU ? nQubits : gate.qubits.size();
    if (!executed[gate.index] && okCount[gate.index] == support) {
      front.push_back(gate.index);
    }
  }
  return front;
}

void Circuit::advanceCursor(const Qubit q) {
  auto& c = cursor[q];
  while (c < perQubit[q].size() && executed[perQubit[q][c]]) {
    ++c;
  }
}

void Circuit::markExecuted(const std::vector<GateIndex>& indices) {
  if (indices.empty()) {
    return;
  }
  const auto front = executableFront();
  for (const auto i : indices) {
    if (!std::binary_search(front.begin(), front.end(), i)) {
      throw InternalError(
          fmt::format("gate {} is not in the executable front", i));
    }
  }
  for (const auto i : indices) {
    if (executed[i]) {
      continue;
    }
    executed[i] = true;
    ++nExecuted;
  }
  for (const auto i : indices) {
    const auto& gate = gates[i];
    if (gate.kind == GateKind::GlobalU) {
      for (Qubit q = 0; q < nQubits; ++q) {
        advanceCursor(q);
      }
    } else {
      for (const auto q : gate.qubits) {
        advanceCursor(q);
      }
    }
  }
}

auto Circuit::toString() const -> std::string {
  std::string out = fmt::format("qubits {}\n", nQubits);
  for (const auto& gate : gates) {
    switch (gate.kind) {
    case GateKind::CZ:
      out += fmt::format("cz {} {}\n", gate.qubits[0], gate.qubits[1]);
      break;
    case GateKind::LocalU:
      out += fmt::format("u1 {} {}\n", gate.label, gate.qubits[0]);
      break;
    case GateKind::GlobalU:
      out += fmt::format("uglobal {}\n", gate.label);
      break;
    }
  }
  return out;
}

auto parseCircuit(const std::string_view text) -> Circuit {
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  std::optional<Circuit> circuit;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto words = splitWords(line);
    if (words.empty()) {
      continue;
    }
    const auto& op = words.front();
    try {
      if (!circuit) {
        if (op != "qubits" || words.size() != 2) {
          throw InputError(fmt::format(
              "line {}: expected 'qubits N' as first statement", lineNo));
        }
        circuit.emplace(parseCount(words[1], lineNo));
        continue;
      }
      if (op == "cz") {
        if (words.size() != 3) {
          throw InputError(fmt::format("line {}: expected 'cz A B'", lineNo));
        }
        circuit->addCZ(static_cast<Qubit>(parseCount(words[1], lineNo)),
                       static_cast<Qubit>(parseCount(words[2], lineNo)));
      } else if (op == "u1") {
        if (words.size() != 3) {
          throw InputError(
              fmt::format("line {}: expected 'u1 LABEL Q'", lineNo));
        }
        circuit->addLocal(std::string(words[1]),
                          static_cast<Qubit>(parseCount(words[2], lineNo)));
      } else if (op == "uglobal") {
        if (words.size() != 2) {
          throw InputError(
              fmt::format("line {}: expected 'uglobal LABEL'", lineNo));
        }
        circuit->addGlobal(std::string(words[1]));
      } else if (op == "qubits") {
        throw InputError(
            fmt::format("line {}: duplicate 'qubits' statement", lineNo));
      } else {
        throw InputError(
            fmt::format("line {}: unknown statement '{}'", lineNo, op));
      }
    } catch (const InputError& e) {
      const std::string_view msg = e.what();
      if (msg.rfind("line ", 0) == 0) {
        throw;
      }
      throw InputError(fmt::format("line {}: {}", lineNo, msg));
    }
  }
  if (!circuit) {
    throw InputError("missing 'qubits N' statement");
  }
  return *std::move(circuit);
}

auto loadCircuit(const std::filesystem::path& path) -> Circuit {
  std::ifstream in(path);
  if (!in) {
    throw InputError(fmt::format("cannot open circuit file '{}'",
                                 path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseCircuit(buffer.str());
}
} // namespace zar
