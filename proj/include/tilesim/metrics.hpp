#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tilesim/assembly.hpp"
#include "tilesim/parallel.hpp"
#include "tilesim/stats.hpp"
#include "tilesim/tiles.hpp"

namespace tilesim {

// ---------------------------------------------------------------------------
// Density

// Occupied fraction of the disc of radius r = sqrt(N / pi) / 2 centred on the
// seed, with N the tiles placed so far. The half radius keeps the growth
// front outside the measured region.
inline double density(const Assembly& asm_) {
  const double n = static_cast<double>(asm_.placed_count());
  const double r2 = n / (4.0 * 3.14159265358979323846);
  const int reach = static_cast<int>(std::sqrt(r2));
  std::uint64_t total = 0, occupied = 0;
  for (int x = -reach; x <= reach; ++x) {
    const double rem = r2 - static_cast<double>(x) * x;
    if (rem < 0.0) continue;
    const int ymax = static_cast<int>(std::sqrt(rem));
    for (int y = -ymax; y <= ymax; ++y) {
      ++total;
      occupied += asm_.occupied(x, y) ? 1 : 0;
    }
  }
  return total ? static_cast<double>(occupied) / static_cast<double>(total) : 1.0;
}

struct DensityPoint {
  double f = 0.0;
  double mean_density = 0.0;
  double std = 0.0;
  int reps = 0;
  // Extra run statistics used by the behaviour classifier.
  double terminated_frac = 0.0;
  double reached_nmax_frac = 0.0;
};

struct SweepParams {
  std::uint64_t n_max = 10000;
  int reps = 100;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

inline std::vector<DensityPoint> density_curve(const std::vector<Tile>& tiles,
                                               const InteractionMode& mode,
                                               std::span<const double> f_grid,
                                               const SweepParams& params) {
  std::vector<TileSystem> systems;
  systems.reserve(f_grid.size());
  for (double f : f_grid) systems.emplace_back(tiles, mode, f);

  const std::size_t reps = static_cast<std::size_t>(params.reps);
  struct RunResult {
    double density;
    bool terminated;
    bool reached;
  };
  std::vector<RunResult> results(f_grid.size() * reps);
  parallel_for(results.size(), params.workers, [&](std::size_t job) {
    const std::size_t fi = job / reps;
    Assembly a(systems[fi], split_seed(params.master_seed, job));
    const RunTrace trace = a.run_to(params.n_max);
    results[job] = {density(a), trace.terminated, trace.n_final >= params.n_max};
  });

  std::vector<DensityPoint> curve;
  curve.reserve(f_grid.size());
  for (std::size_t fi = 0; fi < f_grid.size(); ++fi) {
    std::vector<double> densities(reps);
    int terminated = 0, reached = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& res = results[fi * reps + r];
      densities[r] = res.density;
      terminated += res.terminated ? 1 : 0;
      reached += res.reached ? 1 : 0;
    }
    const MeanStd ms = mean_std(densities);
    curve.push_back({f_grid[fi], ms.mean, ms.std, params.reps,
                     static_cast<double>(terminated) / params.reps,
                     static_cast<double>(reached) / params.reps});
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Free-side slope

struct SlopeEstimate {
  double f = 0.0;
  double slope = 0.0;
  double std_err = 0.0;
  std::uint64_t n_eval = 0;
  int reps = 0;
  // True when every run stopped for good (terminated or stalled) before the
  // fit window; the tail is then a frozen pad and the slope 0 by
  // construction. Runs that merely keep a constant perimeter while still
  // attaching (lines, walkers) do not count as stopped.
  bool window_underrun = false;
};

struct SlopeParams {
  std::uint64_t n_eval = 50000;
  double window_frac = 0.2;
  int reps = 50;
  std::uint64_t stride = 100;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

struct MeanFreeSides {
  std::vector<double> abar;     // index s <-> N = (s+1) * stride
  int stopped_by_window = 0;    // runs that terminated or stalled before the window start
};

// Mean free-side count over runs at each sampled N; a run that stops early
// contributes its frozen final count (0 when it terminated) from then on.
inline MeanFreeSides mean_free_sides(const TileSystem& sys, const SlopeParams& params,
                                     std::uint64_t window_start) {
  const std::size_t grid = params.n_eval / params.stride;
  std::vector<std::vector<double>> rows(params.reps);
  std::vector<std::uint8_t> stopped(params.reps, 0);
  parallel_for(rows.size(), params.workers, [&](std::size_t rep) {
    Assembly a(sys, split_seed(params.master_seed, rep));
    const RunTrace trace = a.run_to(params.n_eval, params.stride);
    std::vector<double>& row = rows[rep];
    row.assign(grid, static_cast<double>(trace.terminated ? 0 : trace.a_final));
    for (const auto& [n, value] : trace.samples)
      if (n % params.stride == 0 && n / params.stride >= 1)
        row[n / params.stride - 1] = static_cast<double>(value);
    stopped[rep] = (trace.terminated || trace.stalled) && trace.n_final < window_start ? 1 : 0;
  });
  MeanFreeSides out;
  out.abar.assign(grid, 0.0);
  for (const auto& row : rows)  // fixed order: reproducible float sums
    for (std::size_t s = 0; s < grid; ++s) out.abar[s] += row[s];
  for (double& v : out.abar) v /= params.reps;
  for (auto s : stopped) out.stopped_by_window += s;
  return out;
}

inline SlopeEstimate slope_at(const std::vector<Tile>& tiles, const InteractionMode& mode,
                              double f, const SlopeParams& params) {
  if (params.n_eval < 1000) throw std::invalid_argument("slope_at: n_eval too small");
  if (!(params.window_frac > 0.0 && params.window_frac < 1.0))
    throw std::invalid_argument("slope_at: window_frac must be in (0,1)");
  const TileSystem sys(tiles, mode, f);
  const std::uint64_t window_start =
      static_cast<std::uint64_t>((1.0 - params.window_frac) * static_cast<double>(params.n_eval));
  const MeanFreeSides mean = mean_free_sides(sys, params, window_start);

  const std::size_t grid = mean.abar.size();
  std::size_t s_lo = window_start / params.stride;
  if (s_lo + 2 > grid) s_lo = grid - 2;
  std::vector<double> xs, ys;
  xs.reserve(grid - s_lo);
  for (std::size_t s = s_lo; s < grid; ++s) {
    xs.push_back(static_cast<double>((s + 1) * params.stride));
    ys.push_back(mean.abar[s]);
  }
  SlopeEstimate est;
  est.f = f;
  est.n_eval = params.n_eval;
  est.reps = params.reps;
  est.window_underrun = mean.stopped_by_window == params.reps;
  const LinearFit fit = ols_fit(xs, ys);
  est.slope = fit.slope;
  est.std_err = fit.stderr_slope;
  return est;
}

// ---------------------------------------------------------------------------
// Critical concentration

enum class FcDirection { BoundBelowUnboundAbove, UnboundBelowBoundAbove };

struct FcResult {
  double f_c = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  FcDirection direction = FcDirection::BoundBelowUnboundAbove;
  int crossings = 1;  // persistent sign changes seen in the coarse scan
  std::vector<SlopeEstimate> evaluations;
};

struct FcParams {
  double tol = 0.01;
  std::uint64_t n_eval = 50000;
  double window_frac = 0.2;
  int reps = 50;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  double coarse_step = 0.05;
};

// Coarse scan for a persistent sign change of the slope, then bisection of
// the change point. Absence of a sign change is a valid outcome (no critical
// transition) and yields nullopt.
inline std::optional<FcResult> find_fc(const std::vector<Tile>& tiles,
                                       const InteractionMode& mode, const FcParams& params) {
  if (params.tol < 0.005) throw std::invalid_argument("find_fc: tol below resolution floor");
  std::uint64_t eval_index = 0;
  std::vector<SlopeEstimate> evaluations;
  auto estimate_at = [&](double f) {
    SlopeParams sp;
    sp.n_eval = params.n_eval;
    sp.window_frac = params.window_frac;
    sp.reps = params.reps;
    sp.master_seed = split_seed(params.master_seed, eval_index++);
    sp.workers = params.workers;
    const SlopeEstimate est = slope_at(tiles, mode, f, sp);
    evaluations.push_back(est);
    return est;
  };
  // Phase sign of a slope estimate. An exactly flat window is bound when the
  // free-side count itself sits at zero (everything terminated), but unbound
  // when a constant perimeter persists (line and walker shapes keep a > 0
  // forever without growth in a).
  auto sign_of = [](const SlopeEstimate& est) {
    if (est.slope > 0.0) return 1;
    if (est.slope < 0.0) return -1;
    return est.window_underrun ? -1 : 1;
  };

  const int n_grid = static_cast<int>(std::lround(1.0 / params.coarse_step)) + 1;
  std::vector<double> fs(n_grid);
  std::vector<int> signs(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    fs[i] = std::min(1.0, i * params.coarse_step);
    signs[i] = sign_of(estimate_at(fs[i]));
  }

  // A crossing is persistent when the sign holds on two adjacent grid points
  // on each available side; a single-point flicker is ignored.
  int first = -1, crossings = 0;
  for (int i = 0; i + 1 < n_grid; ++i) {
    if (signs[i] == signs[i + 1]) continue;
    const bool left_ok = i == 0 || signs[i - 1] == signs[i];
    const bool right_ok = i + 2 >= n_grid || signs[i + 2] == signs[i + 1];
    if (left_ok && right_ok) {
      ++crossings;
      if (first < 0) first = i;
    }
  }
  if (first < 0) return std::nullopt;

  double lo = fs[first], hi = fs[first + 1];
  const int sign_lo = signs[first];
  while (hi - lo > params.tol) {
    const double mid = 0.5 * (lo + hi);
    if (sign_of(estimate_at(mid)) == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  FcResult result;
  result.f_c = 0.5 * (lo + hi);
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.direction = sign_lo < 0 ? FcDirection::BoundBelowUnboundAbove
                                 : FcDirection::UnboundBelowBoundAbove;
  result.crossings = crossings;
  result.evaluations = std::move(evaluations);
  return result;
}

// ---------------------------------------------------------------------------
// Box-counting dimension

struct FractalFit {
  double dimension = 0.0;
  double r_squared = 1.0;
  std::vector<std::uint64_t> box_sizes;
  std::vector<double> box_counts;  // mean counts when pooled over runs
  int reps = 1;
};

// Box counts over the structure's bounding square, padded to the next power
// of two and anchored at its lower-left corner; box sides 1, 2, 4, ...,
// extent/4. Returns nullopt when the structure spans less than min_extent.
inline std::optional<FractalFit> box_dimension_cells(std::span<const Placement> cells,
                                                     int min_extent = 128) {
  if (cells.empty()) return std::nullopt;
  std::int64_t x0 = cells[0].x, x1 = cells[0].x, y0 = cells[0].y, y1 = cells[0].y;
  for (const auto& p : cells) {
    x0 = std::min<std::int64_t>(x0, p.x);
    x1 = std::max<std::int64_t>(x1, p.x);
    y0 = std::min<std::int64_t>(y0, p.y);
    y1 = std::max<std::int64_t>(y1, p.y);
  }
  const std::int64_t extent = std::max(x1 - x0 + 1, y1 - y0 + 1);
  if (extent < min_extent) return std::nullopt;
  std::uint64_t padded = 1;
  while (padded < static_cast<std::uint64_t>(extent)) padded <<= 1;

  FractalFit fit;
  std::vector<std::uint64_t> keys(cells.size());
  for (std::uint64_t eps = 1; eps <= padded / 4; eps <<= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::uint64_t bx = static_cast<std::uint64_t>(cells[i].x - x0) / eps;
      const std::uint64_t by = static_cast<std::uint64_t>(cells[i].y - y0) / eps;
      keys[i] = (bx << 32) | by;
    }
    std::sort(keys.begin(), keys.end());
    const auto unique_end = std::unique(keys.begin(), keys.end());
    fit.box_sizes.push_back(eps);
    fit.box_counts.push_back(static_cast<double>(unique_end - keys.begin()));
  }
  if (fit.box_sizes.size() < 2) return std::nullopt;

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < fit.box_sizes.size(); ++i) {
    lx.push_back(std::log(static_cast<double>(fit.box_sizes[i])));
    ly.push_back(std::log(fit.box_counts[i]));
  }
  const LinearFit line = ols_fit(lx, ly);
  fit.dimension = -line.slope;
  fit.r_squared = line.r_squared;
  return fit;
}

inline std::optional<FractalFit> box_dimension(const Assembly& asm_, int min_extent = 128) {
  return box_dimension_cells(asm_.placements(), min_extent);
}

struct FractalAggregate {
  FractalFit pooled;      // fit of mean counts over the shared box-size range
  double mean_dimension = 0.0;
  double std_dimension = 0.0;
  int used_runs = 0;
  int skipped_runs = 0;
};

struct FractalParams {
  std::uint64_t n_max = 50000;
  int reps = 20;
  int min_extent = 128;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

// Grow `reps` structures at fixed f and pool their box counts (geometric mean
// per box size over the range all kept runs share). Runs that stay below
// min_extent are skipped and counted.
inline std::optional<FractalAggregate> fractal_at(const std::vector<Tile>& tiles,
                                                  const InteractionMode& mode, double f,
                                                  const FractalParams& params) {
  const TileSystem sys(tiles, mode, f);
  std::vector<std::optional<FractalFit>> fits(params.reps);
  parallel_for(fits.size(), params.workers, [&](std::size_t rep) {
    Assembly a(sys, split_seed(params.master_seed, rep));
    a.run_to(params.n_max);
    fits[rep] = box_dimension(a, params.min_extent);
  });

  FractalAggregate agg;
  std::size_t common = ~std::size_t{0};
  std::vector<double> dims;
  for (const auto& fit : fits) {
    if (!fit) {
      ++agg.skipped_runs;
      continue;
    }
    ++agg.used_runs;
    dims.push_back(fit->dimension);
    common = std::min(common, fit->box_sizes.size());
  }
  if (agg.used_runs == 0 || common < 2) return std::nullopt;

  const MeanStd ms = mean_std(dims);
  agg.mean_dimension = ms.mean;
  agg.std_dimension = ms.std;

  std::vector<double> log_mean(common, 0.0);
  for (const auto& fit : fits) {
    if (!fit) continue;
    for (std::size_t i = 0; i < common; ++i) log_mean[i] += std::log(fit->box_counts[i]);
  }
  std::vector<double> lx(common), ly(common);
  for (std::size_t i = 0; i < common; ++i) {
    lx[i] = std::log(static_cast<double>(std::uint64_t{1} << i));
    ly[i] = log_mean[i] / agg.used_runs;
    agg.pooled.box_sizes.push_back(std::uint64_t{1} << i);
    agg.pooled.box_counts.push_back(std::exp(ly[i]));
  }
  const LinearFit line = ols_fit(lx, ly);
  agg.pooled.dimension = -line.slope;
  agg.pooled.r_squared = line.r_squared;
  agg.pooled.reps = agg.used_runs;
  return agg;
}

}  // namespace tilesim
