#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "tilesim/rng.hpp"
#include "tilesim/tiles.hpp"

namespace tilesim {

struct Placement {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::uint8_t tile = 0;
  std::uint8_t orient = 0;

  friend auto operator<=>(const Placement&, const Placement&) = default;
};

struct FreeSide {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::uint8_t dir = 0;
  Colour colour = 0;

  friend auto operator<=>(const FreeSide&, const FreeSide&) = default;
};

struct StepEvent {
  enum class Kind { Attached, Rejected, Terminated };
  Kind kind = Kind::Rejected;
  Placement placement{};  // valid for Attached
  int delta_a = 0;        // valid for Attached
};

// Per-run record of the free-side count against tiles placed.
struct RunTrace {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;  // (N, a)
  bool terminated = false;  // ran out of free sides (a == 0)
  bool stalled = false;     // free sides left but nothing can ever attach (f = 0 or 1 only)
  std::uint64_t n_final = 0;
  std::uint64_t a_final = 0;
};

namespace detail {

constexpr std::uint64_t pack_xy(std::int32_t x, std::int32_t y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
         static_cast<std::uint32_t>(y);
}

struct CellRecord {
  std::uint8_t tile = 0;
  std::uint8_t orient = 0;
  std::array<Colour, 4> face{};                    // world-facing colours
  std::array<std::int32_t, 4> slot{-1, -1, -1, -1};  // index into the side bucket, -1 if none
};

// Insert-only open-addressing map from packed coordinates to CellRecord.
// Cells are never vacated once placed, which keeps probing simple.
class CellMap {
 public:
  static constexpr std::size_t npos = ~std::size_t{0};

  CellMap() { rehash(1024); }

  void reserve(std::size_t n) {
    std::size_t cap = 1024;
    while (n * 10 >= cap * 7) cap *= 2;
    if (cap > keys_.size()) rehash(cap);
  }

  std::size_t find(std::uint64_t key) const {
    std::size_t i = mix64(key) & mask_;
    while (used_[i]) {
      if (keys_[i] == key) return i;
      i = (i + 1) & mask_;
    }
    return npos;
  }

  // Key must not already be present.
  std::size_t insert(std::uint64_t key) {
    if ((count_ + 1) * 10 >= keys_.size() * 7) rehash(keys_.size() * 2);
    std::size_t i = mix64(key) & mask_;
    while (used_[i]) i = (i + 1) & mask_;
    used_[i] = 1;
    keys_[i] = key;
    vals_[i] = CellRecord{};
    ++count_;
    return i;
  }

  CellRecord& value(std::size_t i) { return vals_[i]; }
  const CellRecord& value(std::size_t i) const { return vals_[i]; }
  std::size_t size() const { return count_; }

 private:
  void rehash(std::size_t capacity) {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<CellRecord> old_vals = std::move(vals_);
    std::vector<std::uint8_t> old_used = std::move(used_);
    keys_.assign(capacity, 0);
    vals_.assign(capacity, CellRecord{});
    used_.assign(capacity, 0);
    mask_ = capacity - 1;
    for (std::size_t j = 0; j < old_keys.size(); ++j) {
      if (!old_used[j]) continue;
      std::size_t i = mix64(old_keys[j]) & mask_;
      while (used_[i]) i = (i + 1) & mask_;
      used_[i] = 1;
      keys_[i] = old_keys[j];
      vals_[i] = old_vals[j];
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<CellRecord> vals_;
  std::vector<std::uint8_t> used_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

}  // namespace detail

// Growing structure on the square lattice. The seed sits at the origin with
// orientation 0; every later tile attaches across a sampled free side.
//
// Free sides are kept in one bucket per colour so both the uniform sampling
// of attempt_step and the weighted sampling of conditioned_step are O(number
// of colours). The bucket slot of each side is stored in its owning cell
// record, making removals O(1) when a neighbouring cell fills.
class Assembly {
 public:
  enum class Engine { Attempt, Conditioned };

  Assembly(const TileSystem& sys, std::uint64_t rng_seed,
           std::optional<int> seed_override = std::nullopt)
      : sys_(&sys), rng_(rng_seed), sides_(sys.mode.max_colour + 1), weight_(sys.mode.max_colour + 1, 0.0) {
    for (Colour c = 1; c <= sys.mode.max_colour; ++c) {
      double w = 0.0;
      for (int t = 0; t < sys.tile_count(); ++t)
        w += sys.type_prob(t) * sys.binding_face_count(t, c) / 4.0;
      weight_[c] = w;
    }
    int seed_type = 0;
    if (seed_override)
      seed_type = *seed_override;
    else if (sys.tile_count() == 2)
      seed_type = rng_.bernoulli(sys.f) ? 1 : 0;
    place(0, 0, seed_type, 0);
  }

  const TileSystem& system() const { return *sys_; }
  void reserve_cells(std::uint64_t n) { cells_.reserve(n); }
  std::uint64_t placed_count() const { return placements_.size(); }
  std::uint64_t free_side_count() const { return a_; }
  bool terminated() const { return a_ == 0; }
  bool stalled() const { return a_ > 0 && attachable_ == 0; }
  const std::vector<Placement>& placements() const { return placements_; }

  bool occupied(std::int32_t x, std::int32_t y) const {
    return cells_.find(detail::pack_xy(x, y)) != detail::CellMap::npos;
  }

  std::optional<Placement> placement_at(std::int32_t x, std::int32_t y) const {
    std::size_t i = cells_.find(detail::pack_xy(x, y));
    if (i == detail::CellMap::npos) return std::nullopt;
    const auto& rec = cells_.value(i);
    return Placement{x, y, rec.tile, rec.orient};
  }

  std::vector<FreeSide> free_sides() const {
    std::vector<FreeSide> out;
    out.reserve(a_);
    for (int c = 0; c < static_cast<int>(sides_.size()); ++c)
      for (const auto& s : sides_[c]) out.push_back({s.x, s.y, s.dir, static_cast<Colour>(c)});
    return out;
  }

  // One iteration of the growth loop: sample (type, orientation, free side)
  // independently and test only the sampled contact. Other faces touching
  // already-placed tiles are inert; they neither veto the placement nor stay
  // in the free set.
  StepEvent attempt_step() {
    if (a_ == 0 || attachable_ == 0) return {StepEvent::Kind::Terminated};
    int type = 0;
    if (sys_->tile_count() == 2) type = rng_.bernoulli(sys_->f) ? 1 : 0;
    const int orient = static_cast<int>(rng_.below(4));
    auto [colour, idx] = pick_uniform_side(rng_.below(a_));
    const SideRef side = sides_[colour][idx];
    const Colour touching = sys_->tiles[type].world_face(opposite(side.dir), orient);
    if (!sys_->mode.binds(colour, touching)) return {StepEvent::Kind::Rejected};
    return attach(side, type, orient);
  }

  // Direct sample from the conditional law of attempt_step given acceptance:
  // side s with P proportional to sum_type p_type * n_bind(type, colour(s)) / 4,
  // then type proportional to p_type * n_bind, then a uniform binding
  // orientation. Never rejects.
  StepEvent conditioned_step() {
    if (a_ == 0 || attachable_ == 0) return {StepEvent::Kind::Terminated};
    const int n_colours = static_cast<int>(sides_.size());
    double total = 0.0;
    for (int c = 1; c < n_colours; ++c) total += weight_[c] * sides_[c].size();
    double r = rng_.uniform() * total;
    Colour colour = 0;
    for (int c = 1; c < n_colours; ++c) {
      const double wc = weight_[c] * sides_[c].size();
      if (wc <= 0.0) continue;
      colour = static_cast<Colour>(c);  // last positive bucket absorbs fp rounding
      if (r < wc) break;
      r -= wc;
    }
    const SideRef side = sides_[colour][rng_.below(sides_[colour].size())];

    int type = 0;
    if (sys_->tile_count() == 2) {
      const double wa = (1.0 - sys_->f) * sys_->binding_face_count(0, colour);
      const double wb = sys_->f * sys_->binding_face_count(1, colour);
      type = rng_.uniform() * (wa + wb) < wa ? 0 : 1;
    }
    const auto& faces = sys_->binding_faces(type, colour);
    const int base_face = faces[rng_.below(faces.size())];
    const int orient = (opposite(side.dir) - base_face) & 3;
    return attach(side, type, orient);
  }

  StepEvent step(Engine engine) {
    return engine == Engine::Attempt ? attempt_step() : conditioned_step();
  }

  // Grow until a placement limit, termination, or stall; record (N, a) every
  // `stride` attachments and at the end.
  RunTrace run_to(std::uint64_t n_max, std::uint64_t stride = 100,
                  Engine engine = Engine::Conditioned) {
    reserve_cells(std::min<std::uint64_t>(n_max, 16384));
    RunTrace trace;
    std::uint64_t next_sample = stride;
    while (placed_count() < n_max) {
      const StepEvent ev = step(engine);
      if (ev.kind == StepEvent::Kind::Terminated) break;
      if (ev.kind == StepEvent::Kind::Attached && placed_count() >= next_sample) {
        trace.samples.emplace_back(placed_count(), a_);
        next_sample += stride;
      }
    }
    trace.terminated = terminated();
    trace.stalled = stalled();
    trace.n_final = placed_count();
    trace.a_final = a_;
    if (trace.samples.empty() || trace.samples.back().first != trace.n_final)
      trace.samples.emplace_back(trace.n_final, a_);
    return trace;
  }

 private:
  struct SideRef {
    std::int32_t x, y;
    std::uint8_t dir;
  };

  std::pair<Colour, std::size_t> pick_uniform_side(std::uint64_t r) const {
    for (int c = 1; c < static_cast<int>(sides_.size()); ++c) {
      if (r < sides_[c].size()) return {static_cast<Colour>(c), static_cast<std::size_t>(r)};
      r -= sides_[c].size();
    }
    assert(false && "side index out of range");
    return {1, 0};
  }

  StepEvent attach(const SideRef& side, int type, int orient) {
    const std::int32_t x = side.x + dx_of(side.dir);
    const std::int32_t y = side.y + dy_of(side.dir);
    const std::uint64_t a_before = a_;
    place(x, y, type, orient);
    Placement p{x, y, static_cast<std::uint8_t>(type), static_cast<std::uint8_t>(orient)};
    return {StepEvent::Kind::Attached, p, static_cast<int>(a_) - static_cast<int>(a_before)};
  }

  void place(std::int32_t x, std::int32_t y, int type, int orient) {
    const std::size_t idx = cells_.insert(detail::pack_xy(x, y));
    auto& rec = cells_.value(idx);
    rec.tile = static_cast<std::uint8_t>(type);
    rec.orient = static_cast<std::uint8_t>(orient);
    for (int d = 0; d < 4; ++d) rec.face[d] = sys_->tiles[type].world_face(d, orient);

    for (int d = 0; d < 4; ++d) {
      const std::int32_t nx = x + dx_of(d), ny = y + dy_of(d);
      const std::size_t nidx = cells_.find(detail::pack_xy(nx, ny));
      if (nidx != detail::CellMap::npos) {
        remove_side(nidx, opposite(d));  // neighbour's face now points at us
      } else {
        const Colour c = rec.face[d];
        if (c != 0 && sys_->live(c)) add_side(idx, x, y, d, c);
      }
    }
    placements_.push_back(
        Placement{x, y, static_cast<std::uint8_t>(type), static_cast<std::uint8_t>(orient)});
  }

  void add_side(std::size_t cell_idx, std::int32_t x, std::int32_t y, int d, Colour c) {
    auto& bucket = sides_[c];
    cells_.value(cell_idx).slot[d] = static_cast<std::int32_t>(bucket.size());
    bucket.push_back({x, y, static_cast<std::uint8_t>(d)});
    ++a_;
    if (weight_[c] > 0.0) ++attachable_;
  }

  void remove_side(std::size_t cell_idx, int d) {
    auto& rec = cells_.value(cell_idx);
    const std::int32_t slot = rec.slot[d];
    if (slot < 0) return;
    const Colour c = rec.face[d];
    auto& bucket = sides_[c];
    const std::size_t last = bucket.size() - 1;
    if (static_cast<std::size_t>(slot) != last) {
      bucket[slot] = bucket[last];
      const auto& moved = bucket[slot];
      const std::size_t midx = cells_.find(detail::pack_xy(moved.x, moved.y));
      assert(midx != detail::CellMap::npos);
      cells_.value(midx).slot[moved.dir] = slot;
    }
    bucket.pop_back();
    rec.slot[d] = -1;
    --a_;
    if (weight_[c] > 0.0) --attachable_;
  }

  const TileSystem* sys_;
  Rng rng_;
  detail::CellMap cells_;
  std::vector<std::vector<SideRef>> sides_;  // bucket per colour
  std::vector<double> weight_;               // per-colour conditional weight at this f
  std::vector<Placement> placements_;
  std::uint64_t a_ = 0;
  std::uint64_t attachable_ = 0;
};

// Normal form of a structure: placements sorted by position, orientations
// reduced modulo each tile's rotational self-symmetry. The seed is pinned at
// the origin with orientation 0, so equal normal forms mean the same
// structure.
inline std::vector<Placement> canonical_structure(const Assembly& asm_) {
  std::vector<Placement> out = asm_.placements();
  for (auto& p : out)
    p.orient = static_cast<std::uint8_t>(p.orient % rotation_symmetry(asm_.system().tiles[p.tile]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tilesim
