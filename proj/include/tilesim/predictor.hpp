#pragma once

#include <array>
#include <cassert>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tilesim/polynomial.hpp"
#include "tilesim/tiles.hpp"

// Analytical estimate of the critical concentration: exact enumeration of up
// to three conditioned attachment steps from a canonical corner environment.
// The estimate applies to (i) single-colour sets under symmetric interactions
// and (ii) two-colour sets under asymmetric interactions in which colour 2
// appears at most once on either tile.

namespace tilesim::predictor {

constexpr int kDepth = 3;  // successful placements expanded from the corner

// ---------------------------------------------------------------------------
// Applicability and normalization

namespace detail {

inline std::set<Colour> colour_union(const TileSystem& sys) {
  std::set<Colour> out;
  for (const auto& t : sys.tiles)
    for (Colour c : t.faces)
      if (c != 0) out.insert(c);
  return out;
}

inline int colour_count(const Tile& t, Colour c) {
  int n = 0;
  for (Colour x : t.faces) n += x == c ? 1 : 0;
  return n;
}

inline bool applicable_as_given(const TileSystem& sys) {
  if (sys.tile_count() != 2) return false;
  const auto colours = colour_union(sys);
  if (sys.mode.kind == InteractionMode::Kind::Symmetric)
    return colours == std::set<Colour>{1};
  if (sys.mode.kind == InteractionMode::Kind::Asymmetric)
    return colours == std::set<Colour>{1, 2} && colour_count(sys.tiles[0], 2) <= 1 &&
           colour_count(sys.tiles[1], 2) <= 1;
  return false;
}

inline TileSystem transformed_system(const TileSystem& sys, bool reflect, bool swap) {
  std::vector<Tile> tiles;
  for (const auto& t : sys.tiles) tiles.push_back(transform(t, 0, reflect, swap));
  return TileSystem(tiles, sys.mode, sys.f);
}

inline bool contains_class(const TileSystem& sys, const Tile& reference) {
  const Tile target = rotation_class(reference);
  for (const auto& t : sys.tiles)
    if (rotation_class(t) == target) return true;
  return false;
}

}  // namespace detail

// Relabels colours so the rare colour is 2 (or the single colour is 1), then
// mirrors the whole set if that is what it takes to contain the {1,2,0,0}
// enantiomer rather than {2,1,0,0}. The corner below has a fixed chirality;
// this puts every set in the frame where that corner is the one that tends to
// close.
inline TileSystem normalize_chirality(const TileSystem& sys) {
  TileSystem out = sys;
  if (!detail::applicable_as_given(out)) {
    const TileSystem swapped = detail::transformed_system(out, false, true);
    if (detail::applicable_as_given(swapped))
      out = swapped;
    else
      return sys;  // not in scope; leave untouched
  }
  if (!detail::contains_class(out, parse_tile("1,2,0,0")) &&
      detail::contains_class(out, parse_tile("2,1,0,0")))
    out = detail::transformed_system(out, true, false);
  return out;
}

inline bool applicable(const TileSystem& sys) {
  return detail::applicable_as_given(normalize_chirality(sys));
}

// ---------------------------------------------------------------------------
// Local corner configuration

// A small tracked neighbourhood: the two context cells of the corner plus
// everything placed during the expansion. Context cells expose one known face
// toward the region; their remaining faces are unknown and contribute nothing.
struct LocalConfig {
  static constexpr int kReach = 4;  // grid spans [-kReach, kReach]^2
  static constexpr Colour kUnknown = 255;

  enum class Cell : std::uint8_t { Empty, Tile, Context };

  struct CellData {
    Cell kind = Cell::Empty;
    std::array<Colour, 4> face{kUnknown, kUnknown, kUnknown, kUnknown};
  };

  struct Side {
    std::int8_t x, y;
    std::uint8_t dir;
    Colour colour;
  };

  std::array<CellData, (2 * kReach + 1) * (2 * kReach + 1)> cells{};
  std::vector<Side> free;

  static bool in_range(int x, int y) {
    return x >= -kReach && x <= kReach && y >= -kReach && y <= kReach;
  }
  CellData& at(int x, int y) { return cells[(x + kReach) + (2 * kReach + 1) * (y + kReach)]; }
  const CellData& at(int x, int y) const {
    return cells[(x + kReach) + (2 * kReach + 1) * (y + kReach)];
  }

  // Place a tile and update the free sides: sides pointing into the filled
  // cell disappear; new non-neutral faces adjacent to empty cells appear.
  // Faces meeting occupied or context cells are inert.
  void place(int x, int y, const Tile& tile, int orient) {
    assert(in_range(x, y) && at(x, y).kind == Cell::Empty);
    CellData& cell = at(x, y);
    cell.kind = Cell::Tile;
    for (int d = 0; d < 4; ++d) cell.face[d] = tile.world_face(d, orient);
    std::erase_if(free, [&](const Side& s) {
      return s.x + dx_of(s.dir) == x && s.y + dy_of(s.dir) == y;
    });
    for (int d = 0; d < 4; ++d) {
      const Colour c = cell.face[d];
      if (c == 0) continue;
      const int nx = x + dx_of(d), ny = y + dy_of(d);
      assert(in_range(nx, ny));
      if (at(nx, ny).kind == Cell::Empty)
        free.push_back({static_cast<std::int8_t>(x), static_cast<std::int8_t>(y),
                        static_cast<std::uint8_t>(d), c});
    }
  }
};

// The canonical start state: an empty corner site whose western neighbour
// exposes a colour-1 side and whose southern neighbour exposes a neutral
// side, so that (clockwise around the site) the neutral face immediately
// precedes the interacting one. The mirrored corner is never generated.
inline LocalConfig corner_start() {
  LocalConfig config;
  auto& west = config.at(-1, 0);
  west.kind = LocalConfig::Cell::Context;
  west.face[East] = 1;
  auto& south = config.at(0, -1);
  south.kind = LocalConfig::Cell::Context;
  south.face[North] = 0;
  config.free.push_back({-1, 0, East, 1});
  return config;
}

// ---------------------------------------------------------------------------
// Exact expansion

namespace detail {

struct Branch {
  LocalConfig::Side side;
  int type;
  int orient;
};

inline std::vector<Branch> successful_branches(const LocalConfig& config, const TileSystem& sys) {
  std::vector<Branch> out;
  for (const auto& side : config.free)
    for (int type = 0; type < sys.tile_count(); ++type)
      for (int orient = 0; orient < 4; ++orient) {
        const Colour touching = sys.tiles[type].world_face(opposite(side.dir), orient);
        if (sys.mode.binds(side.colour, touching)) out.push_back({side, type, orient});
      }
  return out;
}

inline LocalConfig apply_branch(const LocalConfig& config, const TileSystem& sys,
                                const Branch& branch) {
  LocalConfig next = config;
  next.place(branch.side.x + dx_of(branch.side.dir), branch.side.y + dy_of(branch.side.dir),
             sys.tiles[branch.type], branch.orient);
  return next;
}

// Mean final free-side count as an exact function of f, by per-step
// conditioning on success: each branch carries weight p_type / (4m) and the
// step is normalized by the sum over its successful branches.
inline RationalFn expected_final_sides(const LocalConfig& config, const TileSystem& sys,
                                       int depth) {
  const long m = static_cast<long>(config.free.size());
  if (m == 0 || depth == kDepth) return RationalFn::constant(m);
  const auto branches = successful_branches(config, sys);
  if (branches.empty()) return RationalFn::constant(m);  // nothing can ever attach

  const std::array<Poly, 2> type_poly{Poly::one_minus_f(), Poly::f()};
  const Rational per_branch(1, 4 * m);
  Poly z;
  std::vector<Poly> weights;
  weights.reserve(branches.size());
  for (const auto& b : branches) {
    Poly w = (sys.tile_count() == 2 ? type_poly[b.type] : Poly::constant(1)) * per_branch;
    z = z + w;
    weights.push_back(std::move(w));
  }
  RationalFn total;  // zero
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const RationalFn child =
        expected_final_sides(apply_branch(config, sys, branches[i]), sys, depth + 1);
    RationalFn term{weights[i] * child.num, z * child.den};
    term.reduce();
    total = total + term;
  }
  return total;
}

// Same traversal with plain rational scalars at a fixed f; used as the
// independent evaluation route in tests. Also verifies that the branch
// probabilities of every step sum to one.
inline Rational expected_final_sides_at(const LocalConfig& config, const TileSystem& sys,
                                        int depth, const Rational& f) {
  const long m = static_cast<long>(config.free.size());
  if (m == 0 || depth == kDepth) return Rational(m);
  const auto branches = successful_branches(config, sys);
  if (branches.empty()) return Rational(m);

  Rational z = 0;
  std::vector<Rational> weights;
  for (const auto& b : branches) {
    Rational w = sys.tile_count() == 2 ? (b.type == 1 ? f : 1 - f) : Rational(1);
    w /= 4 * m;
    z += w;
    weights.push_back(w);
  }
  Rational total = 0, prob_sum = 0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Rational p = weights[i] / z;
    prob_sum += p;
    total += p * expected_final_sides_at(apply_branch(config, sys, branches[i]), sys, depth + 1, f);
  }
  assert(prob_sum == 1);
  return total;
}

}  // namespace detail

struct MeanDeltaA {
  RationalFn mean;                           // exact mean of delta_a over (0,1)
  Poly numerator;                            // mean cleared of its positive denominator
  std::vector<BigInt> numerator_coefficients;  // primitive integer form of the numerator
  int sign_near_zero = 0;                    // sign of the mean as f -> 0+
  int sign_near_one = 0;                     // sign of the mean as f -> 1-
};

// Mean change in the number of free faces over up to three conditioned
// placements from the corner, relative to the single initial free side.
inline MeanDeltaA mean_delta_a(const TileSystem& sys) {
  if (!applicable(sys)) throw std::invalid_argument("predictor does not apply to this system");
  const TileSystem normalized = normalize_chirality(sys);
  RationalFn mean = detail::expected_final_sides(corner_start(), normalized, 0) +
                    RationalFn::constant(-1);
  mean.reduce();

  MeanDeltaA out;
  out.mean = mean;
  // The reduced denominator must keep one sign over the whole open interval;
  // only then does the numerator alone carry the root.
  if (count_roots_open01(mean.den) != 0 || mean.den(Rational(1, 2)) <= 0)
    throw std::logic_error("predictor denominator changes sign on (0,1)");
  out.numerator = mean.num;
  out.numerator_coefficients = primitive_integer_coefficients(mean.num);
  const Rational eps(1, 1000000);
  const Rational near0 = mean.num(eps), near1 = mean.num(1 - eps);
  out.sign_near_zero = near0 > 0 ? 1 : near0 < 0 ? -1 : 0;
  out.sign_near_one = near1 > 0 ? 1 : near1 < 0 ? -1 : 0;
  return out;
}

// Independent scalar evaluation at a fixed rational concentration.
inline Rational mean_delta_a_at(const TileSystem& sys, const Rational& f) {
  if (!applicable(sys)) throw std::invalid_argument("predictor does not apply to this system");
  const TileSystem normalized = normalize_chirality(sys);
  return detail::expected_final_sides_at(corner_start(), normalized, 0, f) - 1;
}

struct Prediction {
  bool applicable = false;
  std::optional<double> fc;
  std::string failure;  // set when applicable but no usable root exists
  std::optional<MeanDeltaA> detail;
};

// The predicted critical concentration: the unique root of the mean-delta_a
// numerator on (0,1), isolated by exact bisection to 1e-6.
inline Prediction predicted_fc(const TileSystem& sys) {
  Prediction out;
  if (!applicable(sys)) return out;
  out.applicable = true;
  out.detail = mean_delta_a(sys);
  const Poly& num = out.detail->numerator;
  const int roots = count_roots_open01(num);
  if (roots == 0) {
    out.failure = "no root in (0,1)";
    return out;
  }
  if (roots > 1) {
    out.failure = "multiple roots in (0,1)";
    return out;
  }
  if (num(Rational(0)) == 0 || num(Rational(1)) == 0) {
    out.failure = "root at interval boundary";
    return out;
  }
  out.fc = bisect_root01(num);
  return out;
}

}  // namespace tilesim::predictor
