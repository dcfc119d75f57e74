#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tilesim/assembly.hpp"
#include "tilesim/metrics.hpp"
#include "tilesim/parallel.hpp"
#include "tilesim/predictor.hpp"
#include "tilesim/stats.hpp"
#include "tilesim/tiles.hpp"

namespace tilesim {

// ---------------------------------------------------------------------------
// Single-tile taxonomy

enum class SingleClass {
  NonInteracting,
  BoundDeterministic,
  UnboundDeterministic,
  BoundNonDeterministic,
  UnboundNonDeterministic,
};

inline const char* to_string(SingleClass c) {
  switch (c) {
    case SingleClass::NonInteracting: return "non-interacting";
    case SingleClass::BoundDeterministic: return "bound deterministic";
    case SingleClass::UnboundDeterministic: return "unbound deterministic";
    case SingleClass::BoundNonDeterministic: return "bound non-deterministic";
    case SingleClass::UnboundNonDeterministic: return "unbound non-deterministic";
  }
  return "?";
}

struct SingleParams {
  int reps = 100;
  std::uint64_t n_max = 10000;
  std::uint64_t stride = 100;
  double window_frac = 0.2;     // trailing slope window
  int window_radius = 5;        // seed window for unbound determinism
  double bound_threshold = 0.95;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

struct SingleClassification {
  SingleClass label = SingleClass::NonInteracting;
  double terminated_frac = 0.0;
  double slope = 0.0;
  bool inconclusive = false;
  std::string note;
};

namespace detail {

// Occupancy of the (2r+1)^2 window around the seed, orientations reduced
// modulo tile symmetry; usable as an identity key for unbound structures once
// the window holds no free sides.
using WindowKey = std::vector<std::tuple<int, int, int, int>>;

inline WindowKey window_snapshot(const Assembly& asm_, int radius) {
  WindowKey key;
  for (int x = -radius; x <= radius; ++x)
    for (int y = -radius; y <= radius; ++y)
      if (auto p = asm_.placement_at(x, y))
        key.emplace_back(x, y, p->tile,
                         p->orient % rotation_symmetry(asm_.system().tiles[p->tile]));
  return key;
}

inline bool window_settled(const Assembly& asm_, int radius) {
  for (const FreeSide& s : asm_.free_sides())
    if (std::abs(s.x) <= radius && std::abs(s.y) <= radius) return false;
  return true;
}

}  // namespace detail

// Empirical classification of a single tile: bound when almost every run
// terminates and the mean free-side count is not growing; deterministic when
// terminated structures coincide (bound) or the settled seed window does
// (unbound).
inline SingleClassification classify_single(const Tile& tile, const InteractionMode& mode,
                                            const SingleParams& params) {
  const Tile t = canonical_single(tile);
  if (!self_interacting(t, mode)) return {SingleClass::NonInteracting, 0.0, 0.0, false, ""};

  const TileSystem sys({t}, mode);
  struct RunResult {
    bool terminated = false;
    std::vector<Placement> structure;  // terminated runs
    detail::WindowKey window;          // runs reaching n_max
    bool settled = false;
    std::vector<double> abar_row;
  };
  const std::size_t grid = params.n_max / params.stride;
  std::vector<RunResult> runs(params.reps);
  parallel_for(runs.size(), params.workers, [&](std::size_t rep) {
    Assembly a(sys, split_seed(params.master_seed, rep));
    const RunTrace trace = a.run_to(params.n_max, params.stride);
    RunResult& r = runs[rep];
    r.terminated = trace.terminated;
    r.abar_row.assign(grid, static_cast<double>(trace.terminated ? 0 : trace.a_final));
    for (const auto& [n, value] : trace.samples)
      if (n % params.stride == 0 && n / params.stride >= 1)
        r.abar_row[n / params.stride - 1] = static_cast<double>(value);
    if (trace.terminated) {
      r.structure = canonical_structure(a);
    } else {
      r.window = detail::window_snapshot(a, params.window_radius);
      r.settled = detail::window_settled(a, params.window_radius);
    }
  });

  int terminated = 0;
  std::vector<double> abar(grid, 0.0);
  for (const auto& r : runs) {
    terminated += r.terminated ? 1 : 0;
    for (std::size_t s = 0; s < grid; ++s) abar[s] += r.abar_row[s];
  }
  for (double& v : abar) v /= params.reps;

  std::vector<double> xs, ys;
  const std::size_t s_lo =
      std::min(grid - 2, static_cast<std::size_t>((1.0 - params.window_frac) *
                                                  static_cast<double>(params.n_max)) /
                             params.stride);
  for (std::size_t s = s_lo; s < grid; ++s) {
    xs.push_back(static_cast<double>((s + 1) * params.stride));
    ys.push_back(abar[s]);
  }
  const double slope = ols_fit(xs, ys).slope;

  SingleClassification out;
  out.terminated_frac = static_cast<double>(terminated) / params.reps;
  out.slope = slope;

  const bool bound = out.terminated_frac >= params.bound_threshold;
  const bool unbound = out.terminated_frac <= 1.0 - params.bound_threshold;
  if (!bound && !unbound) {
    out.inconclusive = true;
    out.note = "termination fraction between thresholds; rerun with larger reps";
  }
  if (bound && slope > 0.0) {
    out.inconclusive = true;
    out.note = "terminations dominate but the free-side count still grows";
  }

  if (bound || (out.inconclusive && out.terminated_frac >= 0.5)) {
    bool all_equal = true;
    const std::vector<Placement>* reference = nullptr;
    for (const auto& r : runs) {
      if (!r.terminated) continue;
      if (!reference)
        reference = &r.structure;
      else
        all_equal &= (r.structure == *reference);
    }
    if (terminated < params.reps) out.inconclusive = true;
    out.label = all_equal && terminated == params.reps ? SingleClass::BoundDeterministic
                                                       : SingleClass::BoundNonDeterministic;
    return out;
  }

  // Unbound: compare settled seed windows; any termination at all is already
  // a second outcome.
  bool all_settled = true, all_equal = true;
  const detail::WindowKey* reference = nullptr;
  for (const auto& r : runs) {
    if (r.terminated) continue;
    all_settled &= r.settled;
    if (!reference)
      reference = &r.window;
    else
      all_equal &= (r.window == *reference);
  }
  if (!all_settled) {
    out.inconclusive = true;
    out.note = "seed window still has free sides at the horizon";
  }
  const bool deterministic = terminated == 0 && all_settled && all_equal;
  out.label =
      deterministic ? SingleClass::UnboundDeterministic : SingleClass::UnboundNonDeterministic;
  return out;
}

// ---------------------------------------------------------------------------
// Two-tile taxonomy

struct PairFlags {
  bool non_interacting = false;
  bool seed_dependent = false;
  bool extended_seed_dependent = false;
  bool f_dep_bottleneck = false;
  bool f_indep_bottleneck = false;
  bool hdnm = false;
  bool random_walker = false;
  // Empirical, filled by classify_pair:
  std::optional<double> critical_fc;
  bool dimensional_transition = false;
};

// Structural criteria, evaluated on face counts alone.
inline PairFlags structural_pair_flags(const Tile& a, const Tile& b, const InteractionMode& mode) {
  PairFlags flags;
  std::set<Colour> colours;
  for (const Tile* t : {&a, &b})
    for (Colour c : t->faces)
      if (c != 0) colours.insert(c);

  const bool self_a = self_interacting(a, mode);
  const bool self_b = self_interacting(b, mode);
  const bool cross = cross_interacting(a, b, mode);
  const int active_a = active_faces_against(a, mode, colours);
  const int active_b = active_faces_against(b, mode, colours);

  flags.non_interacting = !self_a && !self_b && !cross;
  flags.seed_dependent = self_a && self_b && !cross;
  flags.f_dep_bottleneck = cross && ((self_a && !self_b) || (self_b && !self_a));
  flags.f_indep_bottleneck = cross && !self_a && !self_b;
  flags.hdnm = self_a && self_b && cross && active_a >= 4 && active_b >= 4;
  flags.random_walker = cross && active_a <= 2 && active_b <= 2 && active_a >= 1 && active_b >= 1;

  // Extended seed dependence (symmetric interactions): one tile carries a
  // single interactive face, and the colour it binds sits at least twice, on
  // opposite faces, on the other tile.
  if (mode.kind == InteractionMode::Kind::Symmetric) {
    auto check = [&](const Tile& x, const Tile& y) {
      if (active_faces_against(x, mode, colours) != 1) return false;
      Colour single = 0;
      for (Colour c : x.faces) {
        bool active = false;
        for (Colour o : colours) active |= mode.binds(c, o);
        if (active) single = c;
      }
      for (int d = 0; d < 2; ++d)
        if (y.faces[d] == single && y.faces[d + 2] == single) return true;
      return false;
    };
    flags.extended_seed_dependent = check(a, b) || check(b, a);
  }
  return flags;
}

struct PairParams {
  std::uint64_t n_max = 10000;
  int reps = 50;
  double f_step = 0.1;            // density grid spacing
  double fc_tol = 0.01;
  double confirm_margin = 0.05;   // offset beyond the bracket for phase checks
  double confirm_threshold = 0.95;
  double density_range_min = 0.1;
  double trend_z = 2.5758293035489004;  // two-sided 0.01
  int fractal_reps = 10;
  int fractal_min_extent = 64;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

struct CatalogueRecord {
  Tile tile_a, tile_b;
  std::string mode_name;
  PairFlags flags;
  std::string label;
  std::optional<double> f_c;
  std::optional<FcDirection> fc_direction;
  std::optional<double> fractal_dimension;
  std::optional<double> fractal_r2;
  std::vector<DensityPoint> density;
  double density_min = 0.0;
  double density_max = 0.0;
  double trend_z = 0.0;
  bool inconclusive = false;
  std::string notes;
  std::uint64_t master_seed = 0;
  std::uint64_t n_max = 0;
  int reps = 0;
};

namespace detail {

inline void append_note(std::string& notes, const std::string& note) {
  if (!notes.empty()) notes += "; ";
  notes += note;
}

// Fraction of runs that terminate / reach the horizon at one concentration.
struct PhaseFractions {
  double terminated = 0.0;
  double reached = 0.0;
};

inline PhaseFractions phase_fractions(const TileSystem& sys, std::uint64_t n_max, int reps,
                                      std::uint64_t seed, unsigned workers) {
  std::vector<std::uint8_t> term(reps), reach(reps);
  parallel_for(term.size(), workers, [&](std::size_t rep) {
    Assembly a(sys, split_seed(seed, rep));
    const RunTrace trace = a.run_to(n_max);
    term[rep] = trace.terminated ? 1 : 0;
    reach[rep] = trace.n_final >= n_max ? 1 : 0;
  });
  PhaseFractions out;
  for (int r = 0; r < reps; ++r) {
    out.terminated += term[r];
    out.reached += reach[r];
  }
  out.terminated /= reps;
  out.reached /= reps;
  return out;
}

}  // namespace detail

// Full classification of one pair under one mode: structural flags, density
// curve, critical search with phase confirmation, dimensional-transition
// test, and a fractal fit at criticality. The primary label resolves
// overlapping categories in a fixed precedence; every flag stays in the
// record so other orderings remain reconstructable.
inline CatalogueRecord classify_pair(const Tile& a, const Tile& b, const InteractionMode& mode,
                                     const PairParams& params) {
  CatalogueRecord rec;
  rec.tile_a = a;
  rec.tile_b = b;
  rec.mode_name = mode.kind == InteractionMode::Kind::Symmetric    ? "sym"
                  : mode.kind == InteractionMode::Kind::Asymmetric ? "asym"
                                                                   : "matrix";
  rec.master_seed = params.master_seed;
  rec.n_max = params.n_max;
  rec.reps = params.reps;
  rec.flags = structural_pair_flags(a, b, mode);

  const std::vector<Tile> tiles{a, b};

  std::vector<double> f_grid;
  for (double f = 0.0; f < 1.0 + params.f_step / 2; f += params.f_step)
    f_grid.push_back(std::min(f, 1.0));
  SweepParams sweep;
  sweep.n_max = params.n_max;
  sweep.reps = params.reps;
  sweep.master_seed = split_seed(params.master_seed, 1);
  sweep.workers = params.workers;
  rec.density = density_curve(tiles, mode, f_grid, sweep);

  std::vector<double> means;
  for (const auto& p : rec.density) means.push_back(p.mean_density);
  rec.density_min = *std::min_element(means.begin(), means.end());
  rec.density_max = *std::max_element(means.begin(), means.end());
  rec.trend_z = mann_kendall_z(means);

  // Critical transition: persistent slope sign change, confirmed by phase
  // fractions a margin beyond the bracket.
  FcParams fc_params;
  fc_params.tol = params.fc_tol;
  fc_params.n_eval = params.n_max;
  fc_params.reps = params.reps;
  fc_params.master_seed = split_seed(params.master_seed, 2);
  fc_params.workers = params.workers;
  const auto fc = find_fc(tiles, mode, fc_params);
  if (fc && (fc->bracket_lo <= 0.0 || fc->bracket_hi >= 1.0)) {
    // A sign change anchored at f = 0 or f = 1 means the "phase" on one side
    // is a single endpoint (a one-tile system), not a critical transition.
    rec.inconclusive = true;
    detail::append_note(rec.notes, "slope sign change anchored at a concentration endpoint");
  } else if (fc) {
    const bool bound_below = fc->direction == FcDirection::BoundBelowUnboundAbove;
    const double f_bound = bound_below ? std::max(0.0, fc->bracket_lo - params.confirm_margin)
                                       : std::min(1.0, fc->bracket_hi + params.confirm_margin);
    const double f_unbound = bound_below ? std::min(1.0, fc->bracket_hi + params.confirm_margin)
                                         : std::max(0.0, fc->bracket_lo - params.confirm_margin);
    const auto bound_side = detail::phase_fractions(TileSystem(tiles, mode, f_bound), params.n_max,
                                                    params.reps, split_seed(params.master_seed, 3),
                                                    params.workers);
    const auto unbound_side = detail::phase_fractions(
        TileSystem(tiles, mode, f_unbound), params.n_max, params.reps,
        split_seed(params.master_seed, 4), params.workers);
    if (bound_side.terminated >= params.confirm_threshold &&
        unbound_side.reached >= params.confirm_threshold) {
      rec.flags.critical_fc = fc->f_c;
      rec.f_c = fc->f_c;
      rec.fc_direction = fc->direction;
    } else {
      rec.inconclusive = true;
      detail::append_note(rec.notes, "slope sign change at f=" + std::to_string(fc->f_c) +
                                         " without phase confirmation");
    }
    if (fc->crossings > 1) {
      rec.inconclusive = true;
      detail::append_note(rec.notes, "multiple persistent slope crossings");
    }
  }

  // Dimensional transition: no critical point, unbound throughout the
  // interior, and a significant monotonic density trend of useful size.
  if (!rec.flags.critical_fc) {
    bool interior_unbound = true;
    for (std::size_t i = 1; i + 1 < rec.density.size(); ++i)
      interior_unbound &= rec.density[i].reached_nmax_frac >= params.confirm_threshold;
    rec.flags.dimensional_transition = interior_unbound &&
                                       (rec.density_max - rec.density_min) >= params.density_range_min &&
                                       std::abs(rec.trend_z) > params.trend_z;
  }

  if (rec.flags.critical_fc) {
    FractalParams fractal;
    fractal.n_max = params.n_max;
    fractal.reps = params.fractal_reps;
    fractal.min_extent = params.fractal_min_extent;
    fractal.master_seed = split_seed(params.master_seed, 5);
    fractal.workers = params.workers;
    if (const auto agg = fractal_at(tiles, mode, *rec.flags.critical_fc, fractal)) {
      rec.fractal_dimension = agg->pooled.dimension;
      rec.fractal_r2 = agg->pooled.r_squared;
    } else {
      detail::append_note(rec.notes, "structures at f_c too small for a fractal fit");
    }
  }

  const PairFlags& fl = rec.flags;
  rec.label = fl.non_interacting          ? "non-interacting"
              : fl.seed_dependent         ? "seed-dependent"
              : fl.extended_seed_dependent ? "extended-seed-dependent"
              : fl.f_indep_bottleneck     ? "f-independent-bottleneck"
              : fl.f_dep_bottleneck       ? "f-dependent-bottleneck"
              : fl.random_walker          ? "random-walker"
              : fl.critical_fc            ? "critical"
              : fl.dimensional_transition ? "dimensional-transition"
              : fl.hdnm                   ? "hdnm"
                                          : "other";
  return rec;
}

// Classify every distinct pair under the requested modes. Parallel over
// records; each record draws an independent seed stream keyed by its index,
// so the catalogue is reproducible for any worker count.
inline std::vector<CatalogueRecord> build_catalogue(
    const std::vector<InteractionMode>& modes, const PairParams& params,
    const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  const auto pairs = enumerate_pairs();
  const std::size_t total = pairs.size() * modes.size();
  std::vector<CatalogueRecord> records(total);
  std::function<void(std::size_t)> tick;
  if (progress) tick = [&progress, total](std::size_t job) { progress(job, total); };
  parallel_for(
      total, params.workers,
      [&](std::size_t job) {
        const auto& [a, b] = pairs[job % pairs.size()];
        const InteractionMode& mode = modes[job / pairs.size()];
        PairParams local = params;
        local.master_seed = split_seed(params.master_seed, job);
        local.workers = 1;  // parallelism lives at the record level
        records[job] = classify_pair(a, b, mode, local);
      },
      tick);
  return records;
}

}  // namespace tilesim
