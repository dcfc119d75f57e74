#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tilesim {

// Face colours are small integers; 0 is neutral and never binds.
using Colour = std::uint8_t;

// Lattice directions, clockwise. Direction d from cell (x,y) leads to
// (x,y)+delta(d).
enum Dir : int { North = 0, East = 1, South = 2, West = 3 };

constexpr int dx_of(int d) { return d == East ? 1 : d == West ? -1 : 0; }
constexpr int dy_of(int d) { return d == North ? 1 : d == South ? -1 : 0; }
constexpr int opposite(int d) { return (d + 2) & 3; }

// A unit square with four coloured faces, stored clockwise from North.
struct Tile {
  std::array<Colour, 4> faces{};

  constexpr Colour face(int d) const { return faces[d & 3]; }
  // Face shown toward world direction d when the tile sits at orientation k
  // (k clockwise quarter-turns): pure index shift.
  constexpr Colour world_face(int d, int k) const { return faces[(d - k) & 3]; }

  friend auto operator<=>(const Tile&, const Tile&) = default;
};

inline Tile rotated(const Tile& t, int quarter_turns) {
  Tile out;
  for (int d = 0; d < 4; ++d) out.faces[d] = t.world_face(d, quarter_turns);
  return out;
}

// Mirror about the vertical axis: N and S fixed, E and W exchanged. Reverses
// the clockwise face order.
inline Tile reflected(const Tile& t) {
  return Tile{{t.faces[North], t.faces[West], t.faces[South], t.faces[East]}};
}

// Exchange of the colour labels 1 and 2; neutral and any higher colours fixed.
inline Tile colour_swapped(const Tile& t) {
  Tile out = t;
  for (auto& c : out.faces)
    c = c == 1 ? Colour{2} : c == 2 ? Colour{1} : c;
  return out;
}

// Composite transform, applied as swap, then reflect, then rotate.
inline Tile transform(const Tile& t, int rot, bool reflect, bool swap) {
  Tile out = swap ? colour_swapped(t) : t;
  if (reflect) out = reflected(out);
  return rotated(out, rot);
}

// Smallest face sequence over the 4 rotations.
inline Tile rotation_class(const Tile& t) {
  Tile best = t;
  for (int k = 1; k < 4; ++k) best = std::min(best, rotated(t, k));
  return best;
}

// Canonical form of a single tile: minimum over rotations and the colour
// swap. Reflection is deliberately not quotiented; chiral tiles stay
// distinct, which is what makes the single-tile catalogue come out at 13.
inline Tile canonical_single(const Tile& t) {
  return std::min(rotation_class(t), rotation_class(colour_swapped(t)));
}

// Smallest rotational period of the face pattern: 1, 2 or 4. Orientations are
// only meaningful modulo this.
inline int rotation_symmetry(const Tile& t) {
  if (rotated(t, 1) == t) return 1;
  if (rotated(t, 2) == t) return 2;
  return 4;
}

// ---------------------------------------------------------------------------
// Interactions

struct InteractionMode {
  enum class Kind { Symmetric, Asymmetric, General };

  Kind kind = Kind::Symmetric;
  // General mode only: binds_[a * (max_colour_+1) + b] over colours 0..max.
  std::vector<std::uint8_t> table;
  Colour max_colour = 2;

  static InteractionMode symmetric() { return {Kind::Symmetric, {}, 2}; }
  static InteractionMode asymmetric() { return {Kind::Asymmetric, {}, 2}; }

  // Build a general matrix from an undirected binding list; binding is
  // mutual, so the matrix is symmetric by construction.
  static InteractionMode general(const std::vector<std::pair<Colour, Colour>>& bindings) {
    Colour cmax = 0;
    for (auto [a, b] : bindings) {
      if (a == 0 || b == 0) throw std::invalid_argument("binding involves neutral colour 0");
      cmax = std::max({cmax, a, b});
    }
    InteractionMode m{Kind::General, {}, cmax};
    m.table.assign(static_cast<std::size_t>(cmax + 1) * (cmax + 1), 0);
    for (auto [a, b] : bindings) {
      m.table[static_cast<std::size_t>(a) * (cmax + 1) + b] = 1;
      m.table[static_cast<std::size_t>(b) * (cmax + 1) + a] = 1;
    }
    return m;
  }

  bool binds(Colour a, Colour b) const {
    if (a == 0 || b == 0) return false;
    switch (kind) {
      case Kind::Symmetric:
        return a == b;
      case Kind::Asymmetric:
        return (a == 1 && b == 2) || (a == 2 && b == 1);
      case Kind::General:
        if (a > max_colour || b > max_colour)
          throw std::out_of_range("colour out of range for interaction matrix");
        return table[static_cast<std::size_t>(a) * (max_colour + 1) + b] != 0;
    }
    return false;
  }

  bool is_general() const { return kind == Kind::General; }

  friend bool operator==(const InteractionMode&, const InteractionMode&) = default;
};

inline bool interacts(Colour a, Colour b, const InteractionMode& mode) {
  return mode.binds(a, b);
}

// ---------------------------------------------------------------------------
// Tile systems

// One or two tile types plus the interaction rule. f is the probability of
// drawing tile B at each attempt (and at the seed); ignored for single tiles.
struct TileSystem {
  std::vector<Tile> tiles;
  InteractionMode mode;
  double f = 0.0;

  TileSystem(std::vector<Tile> tiles_, InteractionMode mode_, double f_ = 0.0)
      : tiles(std::move(tiles_)), mode(std::move(mode_)), f(f_) {
    if (tiles.empty() || tiles.size() > 2) throw std::invalid_argument("need 1 or 2 tiles");
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("f must lie in [0,1]");
    for (const auto& t : tiles)
      for (Colour c : t.faces)
        if (c > mode.max_colour) throw std::invalid_argument("tile colour out of range for mode");
    build_tables();
  }

  int tile_count() const { return static_cast<int>(tiles.size()); }
  double type_prob(int type) const {
    return tiles.size() == 1 ? (type == 0 ? 1.0 : 0.0) : (type == 1 ? f : 1.0 - f);
  }

  // A perimeter colour is live if some face colour present in the system can
  // bind it; faces of dead colours can never take part in an attachment, so
  // they are not counted as free sides.
  bool live(Colour c) const { return c != 0 && live_[c]; }

  // Base-face indices of tile `type` whose colour binds c. Placing the tile
  // across a free side of colour c in world direction d succeeds exactly for
  // orientations k = (d + 2 - i) mod 4 with i in this list.
  const std::vector<int>& binding_faces(int type, Colour c) const {
    return bind_idx_[static_cast<std::size_t>(type) * (mode.max_colour + 1) + c];
  }
  int binding_face_count(int type, Colour c) const {
    return static_cast<int>(binding_faces(type, c).size());
  }

  std::set<Colour> colours_present() const {
    std::set<Colour> out;
    for (const auto& t : tiles)
      for (Colour c : t.faces)
        if (c != 0) out.insert(c);
    return out;
  }

 private:
  void build_tables() {
    const int n_colours = mode.max_colour + 1;
    bind_idx_.assign(static_cast<std::size_t>(tiles.size()) * n_colours, {});
    live_.assign(n_colours, false);
    for (std::size_t t = 0; t < tiles.size(); ++t)
      for (Colour c = 1; c < n_colours; ++c)
        for (int i = 0; i < 4; ++i)
          if (mode.binds(c, tiles[t].faces[i])) {
            bind_idx_[t * n_colours + c].push_back(i);
            live_[c] = true;
          }
  }

  std::vector<std::vector<int>> bind_idx_;
  std::vector<std::uint8_t> live_;
};

// ---------------------------------------------------------------------------
// Structural predicates (tile-set criteria inputs)

struct FaceStats {
  int active_count = 0;
  bool self_interacting = false;
};

// Does any face of a bind any face of b?
inline bool cross_interacting(const Tile& a, const Tile& b, const InteractionMode& mode) {
  for (Colour ca : a.faces)
    for (Colour cb : b.faces)
      if (mode.binds(ca, cb)) return true;
  return false;
}

inline bool self_interacting(const Tile& t, const InteractionMode& mode) {
  return cross_interacting(t, t, mode);
}

// Active faces of t against an explicit colour set (typically the colours
// present in the whole system).
template <typename ColourSet>
int active_faces_against(const Tile& t, const InteractionMode& mode, const ColourSet& colours) {
  int n = 0;
  for (Colour c : t.faces) {
    bool active = false;
    for (Colour o : colours)
      if (mode.binds(c, o)) active = true;
    n += active ? 1 : 0;
  }
  return n;
}

// Single-tile form: faces active against the tile's own colours.
inline FaceStats face_stats(const Tile& t, const InteractionMode& mode) {
  std::set<Colour> own;
  for (Colour c : t.faces)
    if (c != 0) own.insert(c);
  return {active_faces_against(t, mode, own), self_interacting(t, mode)};
}

struct PairStats {
  bool cross_interacting = false;
};

inline PairStats pair_stats(const Tile& a, const Tile& b, const InteractionMode& mode) {
  return {cross_interacting(a, b, mode)};
}

// ---------------------------------------------------------------------------
// Enumeration

// All distinct interactive single tiles over colours {0,1,2}: every colouring
// of four faces, quotiented by rotation and the colour swap, minus the
// all-neutral tile. There are 13.
inline std::vector<Tile> enumerate_singles() {
  std::set<Tile> seen;
  for (int code = 1; code < 81; ++code) {  // skip 0 = all-neutral
    int v = code;
    Tile t;
    for (auto& c : t.faces) {
      c = static_cast<Colour>(v % 3);
      v /= 3;
    }
    seen.insert(canonical_single(t));
  }
  return {seen.begin(), seen.end()};
}

// The 23 rotation classes of non-neutral tiles over {0,1,2}. Pair members are
// identified only up to rotation; the swap and mirror are global operations
// on the pair.
inline std::vector<Tile> enumerate_rotation_classes() {
  std::set<Tile> seen;
  for (int code = 1; code < 81; ++code) {
    int v = code;
    Tile t;
    for (auto& c : t.faces) {
      c = static_cast<Colour>(v % 3);
      v /= 3;
    }
    seen.insert(rotation_class(t));
  }
  return {seen.begin(), seen.end()};
}

using TilePair = std::pair<Tile, Tile>;

// Canonical representative of an unordered pair of rotation classes under the
// global group {id, swap, reflect, swap*reflect} applied to both tiles
// simultaneously.
inline TilePair canonical_pair(const Tile& a, const Tile& b) {
  TilePair best{Tile{{3, 3, 3, 3}}, Tile{{3, 3, 3, 3}}};
  for (int g = 0; g < 4; ++g) {
    const bool swap = g & 1, refl = g & 2;
    Tile ga = rotation_class(transform(a, 0, refl, swap));
    Tile gb = rotation_class(transform(b, 0, refl, swap));
    if (gb < ga) std::swap(ga, gb);
    best = std::min(best, TilePair{ga, gb});
  }
  return best;
}

// All distinct two-tile sets: unordered pairs of two different rotation
// classes, quotiented by the simultaneous swap/reflection group. There are 106.
inline std::vector<TilePair> enumerate_pairs() {
  const auto classes = enumerate_rotation_classes();
  std::set<TilePair> seen;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      seen.insert(canonical_pair(classes[i], classes[j]));
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Text syntax

// "1,2,0,0" with optional braces/whitespace.
inline Tile parse_tile(std::string_view text) {
  std::string cleaned;
  for (char ch : text)
    if (ch != '{' && ch != '}' && ch != ' ' && ch != '\t') cleaned.push_back(ch);
  std::istringstream in(cleaned);
  Tile t;
  for (int i = 0; i < 4; ++i) {
    int value = -1;
    char sep = ',';
    if (!(in >> value) || value < 0 || value > 255 || (i < 3 && (!(in >> sep) || sep != ',')))
      throw std::invalid_argument("bad tile syntax: '" + std::string(text) +
                                  "' (expected four comma-separated colours)");
    t.faces[i] = static_cast<Colour>(value);
  }
  char trailing;
  if (in >> trailing) throw std::invalid_argument("bad tile syntax: trailing characters");
  return t;
}

// One or two tiles joined with ';'.
inline std::vector<Tile> parse_tiles(std::string_view text) {
  std::vector<Tile> tiles;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    std::string_view part = text.substr(start, semi == std::string_view::npos ? semi : semi - start);
    tiles.push_back(parse_tile(part));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (tiles.size() > 2) throw std::invalid_argument("at most two tiles supported");
  return tiles;
}

inline std::string format_tile(const Tile& t) {
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (i) out.push_back(',');
    out += std::to_string(int(t.faces[i]));
  }
  return out;
}

inline std::string format_tiles(const std::vector<Tile>& tiles) {
  std::string out;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    if (i) out.push_back(';');
    out += format_tile(tiles[i]);
  }
  return out;
}

}  // namespace tilesim
