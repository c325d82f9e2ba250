/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Validator.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>
#include <map>
#include <set>

namespace zar {
auto toString(const Constraint c) -> std::string {
  switch (c) {
  case Constraint::NonCrossing:
    return "a";
  case Constraint::RowColumnPreserving:
    return "b";
  case Constraint::GhostSpot:
    return "c";
  case Constraint::ArrayAlignment:
    return "d";
  case Constraint::Exclusivity:
    return "e";
  case Constraint::Semantics:
    return "f";
  case Constraint::State:
    return "state";
  }
  return "state";
}

auto Violation::toString() const -> std::string {
  return fmt::format("op={} constraint={} detail={}", op,
                     zar::toString(constraint), detail);
}

namespace {
enum class Trap : std::uint8_t { Slm, Aod };

struct AtomState {
  Point pos;
  Trap trap = Trap::Slm;
  int row = -1;
  int col = -1;
};

/**
 * @brief Replay state: atoms, active AOD beams and the realized gates.
 */
class Replay {
public:
  Replay(const Schedule& schedule, const Circuit& circuit,
         const Architecture& arch)
      : schedule(schedule), circuit(circuit), arch(arch),
        perAtom(schedule.atomsPerQubit()),
        realized(circuit.size(), false), perQubit(circuit.getNqubits()) {
    for (const auto& gate : circuit.getGates()) {
      if (gate.kind == GateKind::GlobalU) {
        globals.push_back(gate.index);
      }
      for (const auto q : gate.qubits) {
        perQubit[q].push_back(gate.index);
      }
    }
  }

  auto run() -> std::vector<Violation> {
    const auto expected = circuit.getNqubits() * perAtom;
    if (schedule.initial.size() != expected) {
      report(0, Constraint::Semantics,
             fmt::format("schedule has {} atoms, circuit needs {}",
                         schedule.initial.size(), expected));
      return violations;
    }
    for (const auto& p : schedule.initial) {
      atoms.push_back({p, Trap::Slm, -1, -1});
    }
    checkInitial();
    for (std::size_t i = 0; i < schedule.ops.size(); ++i) {
      const auto& op = schedule.ops[i];
      switch (op.kind) {
      case OpKind::Load:
        load(i, op);
        break;
      case OpKind::Move:
        move(i, op);
        break;
      case OpKind::Store:
        store(i, op);
        break;
      case OpKind::Rydberg:
        rydberg(i, op);
        break;
      case OpKind::OneQubit:
        oneQubit(i, op);
        break;
      }
    }
    finish();
    return violations;
  }

private:
  const Schedule& schedule;
  const Circuit& circuit;
  const Architecture& arch;
  std::size_t perAtom;
  std::vector<AtomState> atoms;
  std::map<int, double> rows; ///< active AOD rows: id -> y
  std::map<int, double> cols; ///< active AOD columns: id -> x
  int nextBeam = 0;
  std::vector<bool> realized;
  std::vector<std::vector<GateIndex>> perQubit;
  std::vector<GateIndex> globals;
  std::vector<Violation> violations;

  void report(const std::size_t op, const Constraint c, std::string detail) {
    violations.push_back({op, c, std::move(detail)});
  }

  auto validAtom(const std::size_t op, const Qubit a) -> bool {
    if (a >= atoms.size()) {
      report(op, Constraint::State, fmt::format("unknown atom q{}", a));
      return false;
    }
    return true;
  }

  void checkInitial() {
    auto order = sortedByX(allAtoms());
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto j = i + 1; j < order.size() &&
                           atoms[order[j]].pos.x - atoms[order[i]].pos.x <=
                               GEOMETRY_EPS;
           ++j) {
        if (samePosition(atoms[order[i]].pos, atoms[order[j]].pos)) {
          report(0, Constraint::State,
                 fmt::format("atoms q{} and q{} start in the same trap",
                             order[i], order[j]));
        }
      }
    }
  }

  [[nodiscard]] auto allAtoms() const -> std::vector<Qubit> {
    std::vector<Qubit> ids(atoms.size());
    for (Qubit a = 0; a < ids.size(); ++a) {
      ids[a] = a;
    }
    return ids;
  }

  [[nodiscard]] auto sortedByX(std::vector<Qubit> ids) const
      -> std::vector<Qubit> {
    std::sort(ids.begin(), ids.end(), [&](Qubit a, Qubit b) {
      return atoms[a].pos.x < atoms[b].pos.x;
    });
    return ids;
  }

  static auto findBeam(std::map<int, double>& beams, const double coord)
      -> std::optional<int> {
    for (const auto& [id, c] : beams) {
      if (std::abs(c - coord) <= GEOMETRY_EPS) {
        return id;
      }
    }
    return std::nullopt;
  }

  /// (a) for a static configuration
  void checkSeparation(const std::size_t op, const std::map<int, double>& beams,
                       const char* axis) {
    std::vector<double> coords;
    for (const auto& [id, c] : beams) {
      coords.push_back(c);
    }
    std::sort(coords.begin(), coords.end());
    for (std::size_t i = 1; i < coords.size(); ++i) {
      if (coords[i] - coords[i - 1] < arch.aodMinSep - GEOMETRY_EPS) {
        report(op, Constraint::NonCrossing,
               fmt::format("AOD {} at {} and {} closer than aod_min_sep", axis,
                           formatFixed(coords[i - 1]), formatFixed(coords[i])));
      }
    }
  }

  /// (c): every row/column intersection is a held atom or far from SLM atoms
  void checkGhostSpots(const std::size_t op) {
    std::set<std::pair<int, int>> held;
    for (const auto& a : atoms) {
      if (a.trap == Trap::Aod) {
        held.emplace(a.row, a.col);
      }
    }
    std::vector<Qubit> slm;
    for (Qubit a = 0; a < atoms.size(); ++a) {
      if (atoms[a].trap == Trap::Slm) {
        slm.push_back(a);
      }
    }
    for (const auto& [r, y] : rows) {
      for (const auto& [c, x] : cols) {
        if (held.count({r, c}) != 0) {
          continue;
        }
        const Point spot{x, y};
        for (const auto a : slm) {
          if (distance(spot, atoms[a].pos) < arch.rSafe - GEOMETRY_EPS) {
            report(op, Constraint::GhostSpot,
                   fmt::format("ghost spot {} near SLM atom q{}",
                               formatPoint(spot), a));
            break;
          }
        }
      }
    }
  }

  void load(const std::size_t op, const ScheduleOp& o) {
    for (const auto& m : o.atoms) {
      if (!validAtom(op, m.atom)) {
        continue;
      }
      auto& a = atoms[m.atom];
      if (a.trap != Trap::Slm) {
        report(op, Constraint::State,
               fmt::format("load of q{} which is already in the AOD", m.atom));
        continue;
      }
      if (!samePosition(a.pos, m.from)) {
        report(op, Constraint::State,
               fmt::format("q{} is at {}, not at {}", m.atom,
                           formatPoint(a.pos), formatPoint(m.from)));
        continue;
      }
      auto row = findBeam(rows, a.pos.y);
      if (!row) {
        row = nextBeam++;
        rows[*row] = a.pos.y;
      }
      auto col = findBeam(cols, a.pos.x);
      if (!col) {
        col = nextBeam++;
        cols[*col] = a.pos.x;
      }
      a.trap = Trap::Aod;
      a.row = *row;
      a.col = *col;
    }
    checkSeparation(op, rows, "rows");
    checkSeparation(op, cols, "columns");
    checkGhostSpots(op);
  }

  /// (a) along the straight-line interpolation of every beam
  void checkMotion(const std::size_t op, const std::map<int, double>& before,
                   const std::map<int, double>& after, const char* axis) {
    std::vector<std::pair<double, double>> beams;
    for (const auto& [id, c] : before) {
      beams.emplace_back(c, after.at(id));
    }
    std::sort(beams.begin(), beams.end());
    constexpr std::array FRACTIONS{0.0, 0.25, 0.5, 0.75, 1.0};
    for (std::size_t i = 1; i < beams.size(); ++i) {
      for (const auto f : FRACTIONS) {
        const auto lo = beams[i - 1].first +
                        f * (beams[i - 1].second - beams[i - 1].first);
        const auto hi = beams[i].first + f * (beams[i].second - beams[i].first);
        if (hi - lo < arch.aodMinSep - GEOMETRY_EPS) {
          report(op, Constraint::NonCrossing,
                 fmt::format("AOD {} starting at {} and {} cross or come "
                             "closer than aod_min_sep",
                             axis, formatFixed(beams[i - 1].first),
                             formatFixed(beams[i].first)));
          break;
        }
      }
    }
  }

  void move(const std::size_t op, const ScheduleOp& o) {
    std::map<int, double> newRows = rows;
    std::map<int, double> newCols = cols;
    std::set<int> movedRows;
    std::set<int> movedCols;
    std::set<Qubit> listed;
    for (const auto& m : o.atoms) {
      if (!validAtom(op, m.atom)) {
        continue;
      }
      const auto& a = atoms[m.atom];
      if (a.trap != Trap::Aod) {
        report(op, Constraint::State,
               fmt::format("move of q{} which is not in the AOD", m.atom));
        continue;
      }
      if (!samePosition(a.pos, m.from)) {
        report(op, Constraint::State,
               fmt::format("q{} is at {}, not at {}", m.atom,
                           formatPoint(a.pos), formatPoint(m.from)));
        continue;
      }
      listed.insert(m.atom);
      if (movedRows.count(a.row) != 0 &&
          std::abs(newRows[a.row] - m.to.y) > GEOMETRY_EPS) {
        report(op, Constraint::RowColumnPreserving,
               fmt::format("atoms of one AOD row move to different rows "
                           "(q{})",
                           m.atom));
      }
      if (movedCols.count(a.col) != 0 &&
          std::abs(newCols[a.col] - m.to.x) > GEOMETRY_EPS) {
        report(op, Constraint::RowColumnPreserving,
               fmt::format("atoms of one AOD column move to different "
                           "columns (q{})",
                           m.atom));
      }
      newRows[a.row] = m.to.y;
      newCols[a.col] = m.to.x;
      movedRows.insert(a.row);
      movedCols.insert(a.col);
    }
    for (Qubit id = 0; id < atoms.size(); ++id) {
      const auto& a = atoms[id];
      if (a.trap != Trap::Aod || listed.count(id) != 0) {
        continue;
      }
      const Point now{newCols[a.col], newRows[a.row]};
      if (!samePosition(now, a.pos)) {
        report(op, Constraint::RowColumnPreserving,
               fmt::format("q{} shares a moving AOD row or column but is not "
                           "listed in the move",
                           id));
      }
    }
    checkMotion(op, rows, newRows, "rows");
    checkMotion(op, cols, newCols, "columns");
    rows = std::move(newRows);
    cols = std::move(newCols);
    for (auto& a : atoms) {
      if (a.trap == Trap::Aod) {
        a.pos = {cols[a.col], rows[a.row]};
      }
    }
    checkGhostSpots(op);
  }

  void store(const std::size_t op, const ScheduleOp& o) {
    for (const auto& m : o.atoms) {
      if (!validAtom(op, m.atom)) {
        continue;
      }
      auto& a = atoms[m.atom];
      if (a.trap != Trap::Aod) {
        report(op, Constraint::State,
               fmt::format("store of q{} which is not in the AOD", m.atom));
        continue;
      }
      if (!samePosition(a.pos, m.from)) {
        report(op, Constraint::State,
               fmt::format("q{} is at {}, not at {}", m.atom,
                           formatPoint(a.pos), formatPoint(m.from)));
        continue;
      }
      for (Qubit other = 0; other < atoms.size(); ++other) {
        if (other != m.atom && atoms[other].trap == Trap::Slm &&
            samePosition(atoms[other].pos, a.pos)) {
          report(op, Constraint::State,
                 fmt::format("q{} stored into the trap of q{}", m.atom,
                             other));
        }
      }
      a.trap = Trap::Slm;
      a.row = -1;
      a.col = -1;
    }
    std::set<int> usedRows;
    std::set<int> usedCols;
    for (const auto& a : atoms) {
      if (a.trap == Trap::Aod) {
        usedRows.insert(a.row);
        usedCols.insert(a.col);
      }
    }
    std::erase_if(rows, [&](const auto& kv) { return usedRows.count(kv.first) == 0; });
    std::erase_if(cols, [&](const auto& kv) { return usedCols.count(kv.first) == 0; });
  }

  /// Own commutation check: all unrealized earlier gates on shared qubits
  /// commute with g.
  [[nodiscard]] auto executable(const GateIndex g) const -> bool {
    const auto& gate = circuit.getGate(g);
    auto blocks = [&](const GateIndex h) {
      return h < g && !realized[h] && !commutes(circuit.getGate(h), gate);
    };
    if (gate.kind == GateKind::GlobalU) {
      for (GateIndex h = 0; h < g; ++h) {
        if (blocks(h)) {
          return false;
        }
      }
      return true;
    }
    for (const auto q : gate.qubits) {
      for (const auto h : perQubit[q]) {
        if (blocks(h)) {
          return false;
        }
      }
    }
    return std::none_of(globals.begin(), globals.end(), blocks);
  }

  auto realize(const std::size_t op, const GateIndex g) -> bool {
    if (g >= circuit.size()) {
      report(op, Constraint::Semantics, fmt::format("unknown gate {}", g));
      return false;
    }
    if (realized[g]) {
      report(op, Constraint::Semantics,
             fmt::format("gate {} realized twice", g));
      return false;
    }
    if (!executable(g)) {
      report(op, Constraint::Semantics,
             fmt::format("gate {} realized before a non-commuting "
                         "predecessor",
                         g));
    }
    return true;
  }

  void rydberg(const std::size_t op, const ScheduleOp& o) {
    if (o.zone >= arch.zones.size() ||
        arch.zones[o.zone].kind != ZoneKind::Entangling) {
      report(op, Constraint::State,
             fmt::format("Rydberg op targets zone {}, not an entangling zone",
                         o.zone));
      return;
    }
    const auto& zone = arch.zones[o.zone];
    std::set<std::pair<Qubit, Qubit>> intended;
    std::set<Qubit> busy;
    std::vector<GateIndex> accepted;
    for (const auto g : o.gates) {
      if (g < circuit.size() && circuit.getGate(g).kind != GateKind::CZ) {
        report(op, Constraint::Semantics,
               fmt::format("gate {} is not a CZ", g));
        continue;
      }
      if (std::count(o.gates.begin(), o.gates.end(), g) > 1) {
        report(op, Constraint::Semantics,
               fmt::format("gate {} listed twice", g));
        continue;
      }
      if (!realize(op, g)) {
        continue;
      }
      accepted.push_back(g);
      const auto& gate = circuit.getGate(g);
      for (const auto q : gate.qubits) {
        if (!busy.insert(q).second) {
          report(op, Constraint::Exclusivity,
                 fmt::format("qubit {} takes part in two CZs at once", q));
        }
      }
      for (std::size_t k = 0; k < perAtom; ++k) {
        auto a = static_cast<Qubit>(gate.qubits[0] * perAtom + k);
        auto b = static_cast<Qubit>(gate.qubits[1] * perAtom + k);
        if (a > b) {
          std::swap(a, b);
        }
        intended.emplace(a, b);
        // (d)
        const bool slmA = atoms[a].trap == Trap::Slm;
        const bool slmB = atoms[b].trap == Trap::Slm;
        if (slmA == slmB) {
          report(op, Constraint::ArrayAlignment,
                 fmt::format("pair q{}-q{} of gate {} has {} partners in SLM "
                             "traps",
                             a, b, g, slmA ? "both" : "no"));
        }
        for (const auto x : {a, b}) {
          if (!zone.contains(atoms[x].pos)) {
            report(op, Constraint::Exclusivity,
                   fmt::format("q{} of gate {} is outside the entangling zone",
                               x, g));
          }
        }
      }
    }
    // (e) pairwise distances inside the zone
    std::vector<Qubit> inZone;
    for (Qubit a = 0; a < atoms.size(); ++a) {
      if (zone.contains(atoms[a].pos)) {
        inZone.push_back(a);
      }
    }
    inZone = sortedByX(std::move(inZone));
    for (const auto& pair : intended) {
      if (distance(atoms[pair.first].pos, atoms[pair.second].pos) >
          arch.rPair + GEOMETRY_EPS) {
        report(op, Constraint::Exclusivity,
               fmt::format("intended pair q{}-q{} is {} apart, beyond r_pair",
                           pair.first, pair.second,
                           formatFixed(distance(atoms[pair.first].pos,
                                                atoms[pair.second].pos))));
      }
    }
    for (std::size_t i = 0; i < inZone.size(); ++i) {
      for (auto j = i + 1; j < inZone.size(); ++j) {
        const auto a = std::min(inZone[i], inZone[j]);
        const auto b = std::max(inZone[i], inZone[j]);
        const auto& pa = atoms[inZone[i]].pos;
        const auto& pb = atoms[inZone[j]].pos;
        if (pb.x - pa.x >= arch.rSafe) {
          break;
        }
        if (intended.count({a, b}) != 0) {
          continue;
        }
        const auto d = distance(pa, pb);
        if (d <= arch.rPair + GEOMETRY_EPS) {
          report(op, Constraint::Exclusivity,
                 fmt::format("unintended interaction between q{} and q{}", a,
                             b));
        } else if (d < arch.rSafe - GEOMETRY_EPS) {
          report(op, Constraint::Exclusivity,
                 fmt::format("q{} and q{} are {} apart, closer than r_safe", a,
                             b, formatFixed(d)));
        }
      }
    }
    for (const auto g : accepted) {
      realized[g] = true;
    }
  }

  void oneQubit(const std::size_t op, const ScheduleOp& o) {
    if (o.gates.size() != 1) {
      report(op, Constraint::Semantics,
             "single-qubit op must name exactly one gate");
      return;
    }
    const auto g = o.gates.front();
    if (g >= circuit.size() || !circuit.getGate(g).isSingleQubit()) {
      report(op, Constraint::Semantics,
             fmt::format("gate {} is not a single-qubit gate", g));
      return;
    }
    const auto& gate = circuit.getGate(g);
    if (gate.label != o.label) {
      report(op, Constraint::Semantics,
             fmt::format("gate {} is '{}', op applies '{}'", g, gate.label,
                         o.label));
    }
    if ((gate.kind == GateKind::GlobalU) != o.global) {
      report(op, Constraint::Semantics,
             fmt::format("gate {} global flag mismatch", g));
    }
    if (gate.kind == GateKind::LocalU) {
      std::set<Qubit> expected;
      for (std::size_t k = 0; k < perAtom; ++k) {
        expected.insert(static_cast<Qubit>(gate.qubits[0] * perAtom + k));
      }
      std::set<Qubit> given;
      for (const auto& m : o.atoms) {
        given.insert(m.atom);
      }
      if (expected != given) {
        report(op, Constraint::Semantics,
               fmt::format("gate {} applied to the wrong atoms", g));
      }
    }
    if (realize(op, g)) {
      realized[g] = true;
    }
  }

  void finish() {
    const auto end = schedule.ops.size();
    for (Qubit a = 0; a < atoms.size(); ++a) {
      if (atoms[a].trap == Trap::Aod) {
        report(end, Constraint::State,
               fmt::format("q{} is still held by the AOD", a));
      }
    }
    std::vector<GateIndex> missing;
    for (GateIndex g = 0; g < realized.size(); ++g) {
      if (!realized[g]) {
        missing.push_back(g);
      }
    }
    if (!missing.empty()) {
      report(end, Constraint::Semantics,
             fmt::format("{} gate(s) never realized, first is {}",
                         missing.size(), missing.front()));
    }
  }
};
} // namespace

auto validate(const Schedule& schedule, const Circuit& circuit,
              const Architecture& arch) -> std::vector<Violation> {
  Replay replay(schedule, circuit, arch);
  return replay.run();
}
} // namespace zar
