/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace zar {
auto toString(const OpKind kind) -> std::string {
  switch (kind) {
  case OpKind::Load:
    return "LOAD";
  case OpKind::Move:
    return "MOVE";
  case OpKind::Store:
    return "STORE";
  case OpKind::Rydberg:
    return "RYDBERG";
  case OpKind::OneQubit:
    return "GATE1Q";
  }
  return "UNKNOWN";
}

auto Schedule::provenance() const -> std::map<GateIndex, std::size_t> {
  std::map<GateIndex, std::size_t> result;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].kind == OpKind::Rydberg) {
      for (const auto g : ops[i].gates) {
        result[g] = i;
      }
    }
  }
  return result;
}

auto Schedule::finalPositions() const -> std::vector<Point> {
  auto positions = initial;
  for (const auto& op : ops) {
    if (op.kind == OpKind::Move) {
      for (const auto& m : op.atoms) {
        positions.at(m.atom) = m.to;
      }
    }
  }
  return positions;
}

auto Schedule::count(const OpKind kind) const -> std::size_t {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(),
                    [&](const ScheduleOp& op) { return op.kind == kind; }));
}

auto Schedule::totalDuration() const -> double {
  double total = 0.0;
  for (const auto& op : ops) {
    total += op.duration;
  }
  return total;
}

auto RoutingStats::toString() const -> std::string {
  std::string out;
  out += "load_store_time=" + formatFixed(loadStoreTime) + "\n";
  out += "shuttle_time=" + formatFixed(shuttleTime) + "\n";
  out += "routing_overhead=" + formatFixed(routingOverhead) + "\n";
  out += fmt::format("rydberg_count={}\n", rydbergCount);
  out += fmt::format("cz_count={}\n", czCount);
  out += "avg_parallel_cz=" + formatFixed(avgParallelCz) + "\n";
  out += fmt::format("runs={}\n", runs);
  out += "compile_time_ms=" + formatFixed(compileTimeMs) + "\n";
  return out;
}

auto applyTiming(Schedule& schedule, const Architecture& arch)
    -> RoutingStats {
  RoutingStats stats;
  double now = 0.0;
  for (auto& op : schedule.ops) {
    switch (op.kind) {
    case OpKind::Load:
      op.duration = arch.tLoad;
      stats.loadStoreTime += op.duration;
      break;
    case OpKind::Store:
      op.duration = arch.tStore;
      stats.loadStoreTime += op.duration;
      break;
    case OpKind::Move: {
      double longest = 0.0;
      for (const auto& m : op.atoms) {
        longest = std::max(longest, distance(m.from, m.to));
      }
      op.duration = longest / arch.shuttleSpeed;
      stats.shuttleTime += op.duration;
      break;
    }
    case OpKind::Rydberg:
      op.duration = arch.tCz;
      ++stats.rydbergCount;
      stats.czCount += op.gates.size();
      break;
    case OpKind::OneQubit:
      op.duration = arch.t1q;
      break;
    }
    op.start = now;
    now += op.duration;
  }
  stats.routingOverhead = stats.loadStoreTime + stats.shuttleTime;
  stats.avgParallelCz =
      stats.rydbergCount == 0
          ? 0.0
          : static_cast<double>(stats.czCount) /
                static_cast<double>(stats.rydbergCount);
  stats.runs = schedule.runs;
  return stats;
}

auto expandToPhysical(const Schedule& schedule, const Architecture& arch)
    -> Schedule {
  if (schedule.atomsPerQubit() != 1) {
    throw InternalError("schedule is already expanded");
  }
  const auto n = arch.atomsPerQubit();
  Schedule out;
  out.arrayRows = arch.arrayRows;
  out.arrayCols = arch.arrayCols;
  out.runs = schedule.runs;
  auto atomId = [&](const Qubit q, const std::size_t k) {
    return static_cast<Qubit>(q * n + k);
  };
  for (const auto& p : schedule.initial) {
    const auto atoms = expandLogicalPosition(arch, p);
    out.initial.insert(out.initial.end(), atoms.begin(), atoms.end());
  }
  // anchors of logical qubits, replayed to check Rydberg ops
  auto anchors = schedule.initial;
  const auto& entangling = arch.zone(ZoneKind::Entangling);
  for (const auto& op : schedule.ops) {
    ScheduleOp expanded = op;
    expanded.atoms.clear();
    for (const auto& m : op.atoms) {
      const auto from = expandLogicalPosition(arch, m.from);
      const auto to = expandLogicalPosition(arch, m.to);
      for (std::size_t k = 0; k < n; ++k) {
        expanded.atoms.push_back({atomId(m.atom, k), from[k], to[k]});
      }
      if (op.kind == OpKind::Move) {
        anchors.at(m.atom) = m.to;
      }
    }
    if (op.kind == OpKind::Rydberg && n > 1) {
      std::vector<Qubit> inZone;
      for (Qubit q = 0; q < anchors.size(); ++q) {
        if (entangling.contains(anchors[q])) {
          inZone.push_back(q);
        }
      }
      for (std::size_t i = 0; i < inZone.size(); ++i) {
        for (std::size_t j = i + 1; j < inZone.size(); ++j) {
          const auto& a = anchors[inZone[i]];
          const auto& b = anchors[inZone[j]];
          const bool paired = distance(a, b) <= arch.rPair + GEOMETRY_EPS;
          const auto atomsA = expandLogicalPosition(arch, a);
          const auto atomsB = expandLogicalPosition(arch, b);
          for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
              if (paired && k == l) {
                continue;
              }
              if (distance(atomsA[k], atomsB[l]) < arch.rSafe - GEOMETRY_EPS) {
                throw InternalError(fmt::format(
                    "expanded arrays of qubits {} and {} interact", inZone[i],
                    inZone[j]));
              }
            }
          }
        }
      }
    }
    out.ops.push_back(std::move(expanded));
  }
  return out;
}

auto writeSchedule(const Schedule& schedule) -> std::string {
  std::string out =
      fmt::format("ARRAY {}x{}\n", schedule.arrayRows, schedule.arrayCols);
  out += "INIT";
  for (std::size_t q = 0; q < schedule.initial.size(); ++q) {
    out += fmt::format(" q{}:{}", q, formatPoint(schedule.initial[q]));
  }
  out += "\n";
  for (const auto& op : schedule.ops) {
    out += "t=" + formatFixed(op.start) + " dur=" + formatFixed(op.duration) +
           " " + toString(op.kind);
    switch (op.kind) {
    case OpKind::Load:
    case OpKind::Store:
      for (const auto& m : op.atoms) {
        out += fmt::format(" q{}:{}", m.atom, formatPoint(m.from));
      }
      break;
    case OpKind::Move:
      for (const auto& m : op.atoms) {
        out += fmt::format(" q{}:{}->{}", m.atom, formatPoint(m.from),
                           formatPoint(m.to));
      }
      break;
    case OpKind::Rydberg:
      out += fmt::format(" zone={} g={}", op.zone, fmt::join(op.gates, ","));
      break;
    case OpKind::OneQubit:
      out += fmt::format(" g={} {}", op.gates.empty() ? 0 : op.gates.front(),
                         op.label);
      if (op.global) {
        out += " global";
      } else {
        for (const auto& m : op.atoms) {
          out += fmt::format(" q{}", m.atom);
        }
      }
      break;
    }
    out += "\n";
  }
  return out;
}

namespace {
class LineParser {
public:
  LineParser(const std::string_view line, const std::size_t lineNo)
      : rest(line), lineNo(lineNo) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(fmt::format("line {}: {}", lineNo, what));
  }

  auto atEnd() -> bool {
    skipSpaces();
    return rest.empty();
  }

  auto word() -> std::string_view {
    skipSpaces();
    std::size_t i = 0;
    while (i < rest.size() && rest[i] != ' ' && rest[i] != '\t') {
      ++i;
    }
    if (i == 0) {
      fail("unexpected end of line");
    }
    const auto w = rest.substr(0, i);
    rest.remove_prefix(i);
    return w;
  }

  void expect(const std::string_view prefix) {
    if (rest.substr(0, prefix.size()) != prefix) {
      fail(fmt::format("expected '{}'", prefix));
    }
    rest.remove_prefix(prefix.size());
  }

  auto number() -> double {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc()) {
      fail("expected a number");
    }
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
    return value;
  }

  auto integer() -> std::size_t {
    std::size_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc()) {
      fail("expected an integer");
    }
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
    return value;
  }

  auto point() -> Point {
    expect("(");
    const auto x = number();
    expect(",");
    const auto y = number();
    expect(")");
    return {x, y};
  }

  /// "q<id>:(x,y)" with an optional "->(x,y)"
  auto atom(const bool withTarget) -> AtomMove {
    skipSpaces();
    expect("q");
    AtomMove m;
    m.atom = static_cast<Qubit>(integer());
    expect(":");
    m.from = point();
    m.to = m.from;
    if (withTarget) {
      expect("->");
      m.to = point();
    }
    if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t') {
      fail("trailing characters after atom");
    }
    return m;
  }

private:
  std::string_view rest;
  std::size_t lineNo;

  void skipSpaces() {
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t' ||
                             rest.front() == '\r')) {
      rest.remove_prefix(1);
    }
  }
};

void checkUnique(const ScheduleOp& op, const LineParser& p) {
  std::vector<Qubit> ids;
  for (const auto& m : op.atoms) {
    ids.push_back(m.atom);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    p.fail("atom listed twice in one batch");
  }
  if (ids.empty() && op.kind != OpKind::Rydberg && !op.global) {
    p.fail("empty batch");
  }
}
} // namespace

auto parseSchedule(const std::string_view text) -> Schedule {
  Schedule schedule;
  std::size_t pos = 0;
  std::size_t lineNo = 0;
  bool sawInit = false;
  while (pos < text.size()) {
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
    LineParser p(line, lineNo);
    if (p.atEnd()) {
      continue;
    }
    const auto head = p.word();
    if (head.substr(0, 2) != "t=") {
      if (head == "ARRAY") {
        LineParser shape(p.word(), lineNo);
        schedule.arrayRows = shape.integer();
        shape.expect("x");
        schedule.arrayCols = shape.integer();
        if (schedule.arrayRows == 0 || schedule.arrayCols == 0) {
          p.fail("array shape must be positive");
        }
      } else if (head == "INIT") {
        sawInit = true;
        while (!p.atEnd()) {
          const auto m = p.atom(false);
          if (m.atom != schedule.initial.size()) {
            p.fail("INIT must list atoms in ascending order from q0");
          }
          schedule.initial.push_back(m.from);
        }
      } else {
        p.fail(fmt::format("unknown statement '{}'", head));
      }
      continue;
    }
    if (!sawInit) {
      p.fail("operation before INIT line");
    }
    ScheduleOp op;
    {
      LineParser t(head.substr(2), lineNo);
      op.start = t.number();
    }
    {
      LineParser d(p.word(), lineNo);
      d.expect("dur=");
      op.duration = d.number();
    }
    const auto kind = p.word();
    if (kind == "LOAD" || kind == "STORE" || kind == "MOVE") {
      op.kind = kind == "LOAD"    ? OpKind::Load
                : kind == "STORE" ? OpKind::Store
                                  : OpKind::Move;
      while (!p.atEnd()) {
        op.atoms.push_back(p.atom(op.kind == OpKind::Move));
      }
    } else if (kind == "RYDBERG") {
      op.kind = OpKind::Rydberg;
      LineParser z(p.word(), lineNo);
      z.expect("zone=");
      op.zone = z.integer();
      LineParser g(p.word(), lineNo);
      g.expect("g=");
      if (!g.atEnd()) {
        op.gates.push_back(g.integer());
        while (!g.atEnd()) {
          g.expect(",");
          op.gates.push_back(g.integer());
        }
      }
    } else if (kind == "GATE1Q") {
      op.kind = OpKind::OneQubit;
      LineParser g(p.word(), lineNo);
      g.expect("g=");
      op.gates.push_back(g.integer());
      op.label = std::string(p.word());
      while (!p.atEnd()) {
        const auto target = p.word();
        if (target == "global") {
          op.global = true;
          continue;
        }
        LineParser q(target, lineNo);
        q.expect("q");
        op.atoms.push_back({static_cast<Qubit>(q.integer()), {}, {}});
      }
    } else {
      p.fail(fmt::format("unknown operation '{}'", kind));
    }
    if (!p.atEnd()) {
      p.fail("trailing characters");
    }
    checkUnique(op, p);
    schedule.ops.push_back(std::move(op));
  }
  if (!sawInit) {
    throw InputError("schedule has no INIT line");
  }
  return schedule;
}

auto loadSchedule(const std::filesystem::path& path) -> Schedule {
  std::ifstream in(path);
  if (!in) {
    throw InputError(
        fmt::format("cannot open schedule file '{}'", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseSchedule(buffer.str());
}
} // namespace zar
