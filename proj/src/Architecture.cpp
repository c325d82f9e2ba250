/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Architecture.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace zar {
namespace {
using ordered_json = nlohmann::ordered_json;

auto zoneKindFromString(const std::string& s) -> ZoneKind {
  if (s == "storage") {
    return ZoneKind::Storage;
  }
  if (s == "entangling") {
    return ZoneKind::Entangling;
  }
  if (s == "readout") {
    return ZoneKind::Readout;
  }
  throw InputError(fmt::format("unknown zone kind '{}'", s));
}

/// Number of lattice points of the given pitch that fit into the extent.
auto latticeCount(const double extent, const double pitch) -> std::size_t {
  if (extent < -GEOMETRY_EPS) {
    return 0;
  }
  return static_cast<std::size_t>(
             std::floor(std::max(0.0, extent) / pitch + 1e-9)) +
         1;
}

auto overlaps(const ZoneSpec& a, const ZoneSpec& b) -> bool {
  const auto ox = std::min(a.origin.x + a.width, b.origin.x + b.width) -
                  std::max(a.origin.x, b.origin.x);
  const auto oy = std::min(a.origin.y + a.height, b.origin.y + b.height) -
                  std::max(a.origin.y, b.origin.y);
  return ox > GEOMETRY_EPS && oy > GEOMETRY_EPS;
}

template <typename T>
void readScalar(const ordered_json& j, const char* key, T& target,
                std::set<std::string>& seen) {
  seen.insert(key);
  if (!j.contains(key)) {
    return;
  }
  try {
    target = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(fmt::format("config key '{}' has the wrong type", key));
  }
}

auto readZone(const ordered_json& j) -> ZoneSpec {
  static const std::set<std::string> KEYS{"kind",  "origin_x", "origin_y",
                                          "width", "height",   "pitch_x",
                                          "pitch_y"};
  if (!j.is_object()) {
    throw InputError("zone entry must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (KEYS.count(key) == 0) {
      throw InputError(fmt::format("unknown zone key '{}'", key));
    }
  }
  for (const auto& key : KEYS) {
    if (!j.contains(key)) {
      throw InputError(fmt::format("zone is missing key '{}'", key));
    }
  }
  try {
    ZoneSpec zone;
    zone.kind = zoneKindFromString(j.at("kind").get<std::string>());
    zone.origin = {j.at("origin_x").get<double>(),
                   j.at("origin_y").get<double>()};
    zone.width = j.at("width").get<double>();
    zone.height = j.at("height").get<double>();
    zone.pitchX = j.at("pitch_x").get<double>();
    zone.pitchY = j.at("pitch_y").get<double>();
    return zone;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("malformed zone entry: {}", e.what()));
  }
}
} // namespace

auto toString(const ZoneKind kind) -> std::string {
  switch (kind) {
  case ZoneKind::Storage:
    return "storage";
  case ZoneKind::Entangling:
    return "entangling";
  case ZoneKind::Readout:
    return "readout";
  }
  return "unknown";
}

auto ZoneSpec::contains(const Point& p) const -> bool {
  return p.x >= origin.x - GEOMETRY_EPS &&
         p.x <= origin.x + width + GEOMETRY_EPS &&
         p.y >= origin.y - GEOMETRY_EPS &&
         p.y <= origin.y + height + GEOMETRY_EPS;
}

auto Architecture::zoneIndex(const ZoneKind kind) const -> std::size_t {
  for (std::size_t i = 0; i < zones.size(); ++i) {
    if (zones[i].kind == kind) {
      return i;
    }
  }
  throw InputError(fmt::format("architecture has no {} zone", toString(kind)));
}

auto Architecture::footprintX() const -> double {
  return static_cast<double>(arrayCols - 1) * intraArrayPitch;
}

auto Architecture::footprintY() const -> double {
  return static_cast<double>(arrayRows - 1) * intraArrayPitch;
}

void Architecture::validate() const {
  std::size_t nStorage = 0;
  std::size_t nEntangling = 0;
  std::size_t nReadout = 0;
  for (const auto& zone : zones) {
    switch (zone.kind) {
    case ZoneKind::Storage:
      ++nStorage;
      break;
    case ZoneKind::Entangling:
      ++nEntangling;
      break;
    case ZoneKind::Readout:
      ++nReadout;
      break;
    }
    if (!(zone.pitchX > 0.0) || !(zone.pitchY > 0.0)) {
      throw InputError(fmt::format("{} zone: trap pitches must be positive",
                                   toString(zone.kind)));
    }
    if (zone.width < 0.0 || zone.height < 0.0) {
      throw InputError(fmt::format("{} zone: negative extent",
                                   toString(zone.kind)));
    }
  }
  if (nStorage != 1) {
    throw InputError(
        fmt::format("expected exactly one storage zone, found {}", nStorage));
  }
  if (nEntangling != 1) {
    throw InputError(fmt::format(
        "expected exactly one entangling zone, found {}", nEntangling));
  }
  if (nReadout > 1) {
    throw InputError("at most one readout zone is supported");
  }
  for (std::size_t i = 0; i < zones.size(); ++i) {
    for (std::size_t j = i + 1; j < zones.size(); ++j) {
      if (overlaps(zones[i], zones[j])) {
        throw InputError(fmt::format("zones {} ({}) and {} ({}) overlap", i,
                                     toString(zones[i].kind), j,
                                     toString(zones[j].kind)));
      }
    }
  }
  if (!(rPair > 0.0) || !(rPair < rSafe)) {
    throw InputError("radii must satisfy 0 < r_pair < r_safe");
  }
  if (!(aodMinSep > 0.0)) {
    throw InputError("aod_min_sep must be positive");
  }
  if (!(tLoad > 0.0) || !(tStore > 0.0) || !(shuttleSpeed > 0.0) ||
      !(tCz > 0.0)) {
    throw InputError(
        "t_load, t_store, shuttle_speed and t_cz must be positive");
  }
  if (t1q < 0.0) {
    throw InputError("t_1q must not be negative");
  }
  if (arrayRows < 1 || arrayCols < 1) {
    throw InputError("array_rows and array_cols must be at least 1");
  }
  if (atomsPerQubit() > 1) {
    if (!(intraArrayPitch >= aodMinSep)) {
      throw InputError("intra_array_pitch must be at least aod_min_sep");
    }
    // an AOD atom parked next to its partner must stay clear of the
    // partner array's other atoms
    if (intraArrayPitch + GEOMETRY_EPS < rSafe + 0.5 * rPair) {
      throw InputError(
          "intra_array_pitch must be at least r_safe + r_pair / 2");
    }
  }
  const auto& storage = zone(ZoneKind::Storage);
  if (storage.pitchX < aodMinSep || storage.pitchY < aodMinSep) {
    throw InputError("storage trap pitch must be at least aod_min_sep");
  }
  static_cast<void>(deriveLogicalGrid(*this));
}

auto Architecture::defaultArchitecture() -> Architecture {
  Architecture arch;
  arch.zones.push_back(
      {ZoneKind::Entangling, {0.0, 0.0}, 300.0, 40.0, 10.0, 10.0});
  arch.zones.push_back(
      {ZoneKind::Storage, {0.0, 60.0}, 300.0, 100.0, 10.0, 10.0});
  return arch;
}

auto Architecture::narrowArchitecture() -> Architecture {
  Architecture arch;
  arch.zones.push_back(
      {ZoneKind::Entangling, {0.0, 0.0}, 300.0, 40.0, 10.0, 10.0});
  arch.zones.push_back(
      {ZoneKind::Storage, {100.0, 60.0}, 100.0, 300.0, 10.0, 10.0});
  return arch;
}

auto parseArchitecture(const std::string_view text) -> Architecture {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(fmt::format("invalid architecture config: {}", e.what()));
  }
  if (!j.is_object()) {
    throw InputError("architecture config must be a JSON object");
  }
  Architecture arch;
  std::set<std::string> seen{"zones"};
  if (!j.contains("zones") || !j.at("zones").is_array()) {
    throw InputError("architecture config needs a 'zones' array");
  }
  for (const auto& zone : j.at("zones")) {
    arch.zones.push_back(readZone(zone));
  }
  readScalar(j, "r_pair", arch.rPair, seen);
  readScalar(j, "r_safe", arch.rSafe, seen);
  readScalar(j, "aod_min_sep", arch.aodMinSep, seen);
  readScalar(j, "t_load", arch.tLoad, seen);
  readScalar(j, "t_store", arch.tStore, seen);
  readScalar(j, "shuttle_speed", arch.shuttleSpeed, seen);
  readScalar(j, "t_cz", arch.tCz, seen);
  readScalar(j, "t_1q", arch.t1q, seen);
  readScalar(j, "array_rows", arch.arrayRows, seen);
  readScalar(j, "array_cols", arch.arrayCols, seen);
  readScalar(j, "intra_array_pitch", arch.intraArrayPitch, seen);
  for (const auto& [key, value] : j.items()) {
    if (seen.count(key) == 0) {
      throw InputError(fmt::format("unknown config key '{}'", key));
    }
  }
  arch.validate();
  return arch;
}

auto loadArchitecture(const std::filesystem::path& path) -> Architecture {
  std::ifstream in(path);
  if (!in) {
    throw InputError(fmt::format("cannot open architecture file '{}'",
                                 path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseArchitecture(buffer.str());
}

auto serializeArchitecture(const Architecture& arch) -> std::string {
  ordered_json j;
  j["zones"] = ordered_json::array();
  for (const auto& zone : arch.zones) {
    j["zones"].push_back({{"kind", toString(zone.kind)},
                          {"origin_x", zone.origin.x},
                          {"origin_y", zone.origin.y},
                          {"width", zone.width},
                          {"height", zone.height},
                          {"pitch_x", zone.pitchX},
                          {"pitch_y", zone.pitchY}});
  }
  j["r_pair"] = arch.rPair;
  j["r_safe"] = arch.rSafe;
  j["aod_min_sep"] = arch.aodMinSep;
  j["t_load"] = arch.tLoad;
  j["t_store"] = arch.tStore;
  j["shuttle_speed"] = arch.shuttleSpeed;
  j["t_cz"] = arch.tCz;
  j["t_1q"] = arch.t1q;
  j["array_rows"] = arch.arrayRows;
  j["array_cols"] = arch.arrayCols;
  j["intra_array_pitch"] = arch.intraArrayPitch;
  return j.dump(2) + "\n";
}

auto ZoneGrid::sites() const -> std::vector<Point> {
  std::vector<Point> result;
  result.reserve(capacity());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      result.push_back(site(r, c));
    }
  }
  return result;
}

auto deriveLogicalGrid(const Architecture& arch) -> LogicalGrid {
  const auto fx = arch.footprintX();
  const auto fy = arch.footprintY();
  auto makeGrid = [&](const ZoneSpec& zone, const double pitchX,
                      const double pitchY, const double extraX) {
    ZoneGrid grid;
    grid.kind = zone.kind;
    grid.origin = zone.origin;
    grid.pitchX = pitchX;
    grid.pitchY = pitchY;
    grid.cols = latticeCount(zone.width - fx - extraX, pitchX);
    grid.rows = latticeCount(zone.height - fy, pitchY);
    if (grid.cols == 0 || grid.rows == 0) {
      throw InputError(fmt::format("{} zone is too small for one {}x{} array",
                                   toString(zone.kind), arch.arrayRows,
                                   arch.arrayCols));
    }
    return grid;
  };
  LogicalGrid grid;
  const auto& storage = arch.zone(ZoneKind::Storage);
  grid.storage =
      makeGrid(storage, fx + storage.pitchX, fy + storage.pitchY, 0.0);
  const auto& ent = arch.zone(ZoneKind::Entangling);
  grid.entangling = makeGrid(
      ent, std::max(fx + ent.pitchX, fx + arch.rSafe + arch.rPair),
      std::max(fy + ent.pitchY, fy + arch.rSafe), 0.5 * arch.rPair);
  if (grid.entangling.rows < 2) {
    throw InputError("entangling zone must fit at least two rows of sites");
  }
  for (const auto& zone : arch.zones) {
    if (zone.kind == ZoneKind::Readout) {
      grid.readout = makeGrid(zone, fx + zone.pitchX, fy + zone.pitchY, 0.0);
    }
  }
  return grid;
}

auto expandLogicalPosition(const Architecture& arch, const Point& p)
    -> std::vector<Point> {
  std::vector<Point> atoms;
  atoms.reserve(arch.atomsPerQubit());
  for (std::size_t i = 0; i < arch.arrayRows; ++i) {
    for (std::size_t j = 0; j < arch.arrayCols; ++j) {
      atoms.push_back({p.x + static_cast<double>(j) * arch.intraArrayPitch,
                       p.y + static_cast<double>(i) * arch.intraArrayPitch});
    }
  }
  return atoms;
}
} // namespace zar
