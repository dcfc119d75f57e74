#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tilesim/assembly.hpp"
#include "tilesim/tiles.hpp"

namespace tilesim {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Interaction mode naming

inline Json mode_to_json(const InteractionMode& mode) {
  switch (mode.kind) {
    case InteractionMode::Kind::Symmetric: return "sym";
    case InteractionMode::Kind::Asymmetric: return "asym";
    case InteractionMode::Kind::General: {
      Json bindings = Json::array();
      for (Colour a = 1; a <= mode.max_colour; ++a)
        for (Colour b = a; b <= mode.max_colour; ++b)
          if (mode.binds(a, b)) bindings.push_back({a, b});
      return Json{{"bindings", bindings}};
    }
  }
  throw std::logic_error("unknown interaction mode");
}

inline InteractionMode mode_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "sym") return InteractionMode::symmetric();
    if (s == "asym") return InteractionMode::asymmetric();
    throw std::invalid_argument("unknown mode '" + s + "'");
  }
  std::vector<std::pair<Colour, Colour>> bindings;
  for (const auto& pair : j.at("bindings"))
    bindings.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
  return InteractionMode::general(bindings);
}

// Mode flag syntax: `sym`, `asym`, or `matrix:<path>` (a bare path to an
// existing JSON binding list also works).
inline InteractionMode parse_mode(const std::string& text) {
  if (text == "sym") return InteractionMode::symmetric();
  if (text == "asym") return InteractionMode::asymmetric();
  std::string path = text;
  if (text.rfind("matrix:", 0) == 0) path = text.substr(7);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("mode must be sym, asym, or matrix:<path>; cannot open '" +
                                       path + "'");
  Json j;
  in >> j;
  return mode_from_json(j);
}

// ---------------------------------------------------------------------------
// Structure files

struct StructureFile {
  std::vector<Tile> tiles;
  InteractionMode mode;
  double f = 0.0;
  std::uint64_t rng_seed = 0;
  std::vector<Placement> placements;
  bool terminated = false;
  std::uint64_t n_final = 0;
};

inline StructureFile structure_of(const Assembly& asm_, std::uint64_t rng_seed) {
  const TileSystem& sys = asm_.system();
  return {sys.tiles,       sys.mode,           sys.f, rng_seed, asm_.placements(),
          asm_.terminated(), asm_.placed_count()};
}

inline Json to_json(const StructureFile& s) {
  Json placements = Json::array();
  for (const auto& p : s.placements)
    placements.push_back({p.x, p.y, p.tile, p.orient});
  return Json{{"system", format_tiles(s.tiles)}, {"mode", mode_to_json(s.mode)},
              {"f", s.f},                        {"rng_seed", s.rng_seed},
              {"placements", placements},        {"terminated", s.terminated},
              {"N_final", s.n_final}};
}

inline StructureFile structure_from_json(const Json& j) {
  StructureFile s;
  s.tiles = parse_tiles(j.at("system").get<std::string>());
  s.mode = mode_from_json(j.at("mode"));
  s.f = j.at("f").get<double>();
  s.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  for (const auto& p : j.at("placements"))
    s.placements.push_back({p.at(0).get<std::int32_t>(), p.at(1).get<std::int32_t>(),
                            p.at(2).get<std::uint8_t>(), p.at(3).get<std::uint8_t>()});
  s.terminated = j.at("terminated").get<bool>();
  s.n_final = j.at("N_final").get<std::uint64_t>();
  return s;
}

// ---------------------------------------------------------------------------
// Plain-file helpers

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string trace_csv(const RunTrace& trace) {
  std::string out = "N,a\n";
  for (const auto& [n, a] : trace.samples)
    out += std::to_string(n) + "," + std::to_string(a) + "\n";
  return out;
}

}  // namespace tilesim
