#include <catch2/catch_amalgamated.hpp>

#include "tilesim/metrics.hpp"

using namespace tilesim;

namespace {

TileSystem single(const std::string& tile, InteractionMode mode) {
  return TileSystem({parse_tile(tile)}, std::move(mode));
}

std::vector<Placement> straight_line(int length) {
  std::vector<Placement> cells;
  for (int x = 0; x < length; ++x) cells.push_back({x, 0, 0, 0});
  return cells;
}

std::vector<Placement> filled_square(int side) {
  std::vector<Placement> cells;
  for (int x = 0; x < side; ++x)
    for (int y = 0; y < side; ++y) cells.push_back({x, y, 0, 0});
  return cells;
}

}  // namespace

TEST_CASE("density measurement", "[metrics]") {
  SECTION("seed-only structure has density one") {
    const auto sys = single("1,2,0,0", InteractionMode::asymmetric());
    Assembly a(sys, 1);
    CHECK(density(a) == 1.0);
  }

  SECTION("plane filler saturates the disc") {
    const auto sys = single("1,1,1,1", InteractionMode::symmetric());
    Assembly a(sys, 3);
    a.run_to(8000);
    CHECK(density(a) > 0.95);
  }

  SECTION("line grower leaves the disc almost empty") {
    const auto sys = single("1,0,2,0", InteractionMode::asymmetric());
    Assembly a(sys, 3);
    a.run_to(4000);
    REQUIRE(a.placed_count() == 4000);
    CHECK(density(a) < 0.05);
  }
}

TEST_CASE("density curve", "[metrics]") {
  // Seed-dependent pair: only the seed's type ever grows, so the expected
  // density is (1-f) rho_A + f rho_B, roughly f here.
  SweepParams params;
  params.n_max = 2000;
  params.reps = 240;
  params.master_seed = 11;
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto curve = density_curve(parse_tiles("2,0,2,0;1,1,1,1"), InteractionMode::symmetric(),
                                   grid, params);
  REQUIRE(curve.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CAPTURE(grid[i]);
    CHECK(curve[i].f == grid[i]);
    CHECK(curve[i].reps == 240);
    CHECK(curve[i].mean_density == Catch::Approx(grid[i]).margin(0.12));
  }
  // All runs of this pair stay unbound (lines or plane) out to the horizon.
  for (const auto& p : curve) CHECK(p.reached_nmax_frac == 1.0);
}

TEST_CASE("slope estimates", "[metrics]") {
  SlopeParams params;
  params.n_eval = 5000;
  params.reps = 24;
  params.master_seed = 5;

  SECTION("bound tile: free sides hit zero, slope flat at zero") {
    const auto est = slope_at({parse_tile("1,2,0,0")}, InteractionMode::asymmetric(), 0.0, params);
    CHECK(est.slope <= 0.0);
    CHECK(est.window_underrun);  // every run ends long before the window
  }

  SECTION("plane filler: perimeter keeps growing") {
    const auto est = slope_at({parse_tile("1,2,1,2")}, InteractionMode::asymmetric(), 0.0, params);
    CHECK(est.slope > 0.0);
    CHECK_FALSE(est.window_underrun);
  }

  SECTION("parameter validation") {
    SlopeParams bad = params;
    bad.n_eval = 10;
    CHECK_THROWS_AS(slope_at({parse_tile("1,2,1,2")}, InteractionMode::asymmetric(), 0.0, bad),
                    std::invalid_argument);
    bad = params;
    bad.window_frac = 1.5;
    CHECK_THROWS_AS(slope_at({parse_tile("1,2,1,2")}, InteractionMode::asymmetric(), 0.0, bad),
                    std::invalid_argument);
  }
}

TEST_CASE("critical point search", "[metrics]") {
  FcParams params;
  params.n_eval = 4000;  // quick variant; the acceptance suite runs the full horizon
  params.reps = 32;
  params.tol = 0.02;
  params.master_seed = 99;

  SECTION("critical pair brackets a sign change") {
    const auto fc = find_fc(parse_tiles("1,2,0,0;1,2,1,0"), InteractionMode::asymmetric(), params);
    REQUIRE(fc.has_value());
    CHECK(fc->direction == FcDirection::BoundBelowUnboundAbove);
    CHECK(fc->f_c > 0.40);
    CHECK(fc->f_c < 0.65);
    CHECK(fc->bracket_hi - fc->bracket_lo <= params.tol * 1.0001);
    // the bracket really straddles the sign change
    CHECK(fc->bracket_lo <= fc->f_c);
    CHECK(fc->bracket_hi >= fc->f_c);
  }

  SECTION("non-critical pair yields nothing") {
    // Seed-dependent system: no bound/unbound transition in the interior.
    const auto fc = find_fc(parse_tiles("2,0,2,0;1,1,1,1"), InteractionMode::symmetric(), params);
    CHECK_FALSE(fc.has_value());
  }

  SECTION("tolerance validation") {
    FcParams bad = params;
    bad.tol = 0.001;
    CHECK_THROWS_AS(find_fc(parse_tiles("1,2,0,0;1,2,1,0"), InteractionMode::asymmetric(), bad),
                    std::invalid_argument);
  }
}

TEST_CASE("box-counting dimension", "[metrics]") {
  SECTION("solid square has dimension 2") {
    const auto fit = box_dimension_cells(filled_square(256));
    REQUIRE(fit.has_value());
    CHECK(fit->dimension == Catch::Approx(2.0).margin(0.05));
    CHECK(fit->r_squared > 0.999);
  }

  SECTION("straight line has dimension 1") {
    const auto fit = box_dimension_cells(straight_line(1024));
    REQUIRE(fit.has_value());
    CHECK(fit->dimension == Catch::Approx(1.0).margin(0.05));
    CHECK(fit->r_squared > 0.999);
  }

  SECTION("too small to fit") {
    CHECK_FALSE(box_dimension_cells(filled_square(16)).has_value());
  }

  SECTION("union of two disjoint congruent structures keeps the dimension") {
    auto cells = filled_square(200);
    for (const auto& p : filled_square(200)) cells.push_back({p.x + 232, p.y, 0, 0});
    const auto one = box_dimension_cells(filled_square(200));
    const auto two = box_dimension_cells(cells);
    REQUIRE(one.has_value());
    REQUIRE(two.has_value());
    CHECK(std::abs(one->dimension - two->dimension) < 0.05);
  }

  SECTION("box sizes double up to a quarter of the padded extent") {
    const auto fit = box_dimension_cells(straight_line(1024));
    REQUIRE(fit.has_value());
    REQUIRE(fit->box_sizes.size() == 9);  // 1..256
    CHECK(fit->box_sizes.front() == 1);
    CHECK(fit->box_sizes.back() == 256);
    // exact counts for the line: 1024 / eps
    for (std::size_t i = 0; i < fit->box_sizes.size(); ++i)
      CHECK(fit->box_counts[i] == Catch::Approx(1024.0 / fit->box_sizes[i]));
  }
}

TEST_CASE("pooled fractal measurement", "[metrics]") {
  FractalParams params;
  params.n_max = 4000;
  params.reps = 6;
  params.min_extent = 32;
  params.master_seed = 17;
  // Plane filler: compact cluster, dimension near 2.
  const auto agg = fractal_at({parse_tile("1,1,1,1")}, InteractionMode::symmetric(), 0.0, params);
  REQUIRE(agg.has_value());
  CHECK(agg->used_runs == 6);
  CHECK(agg->pooled.dimension == Catch::Approx(1.9).margin(0.25));
  CHECK(agg->mean_dimension == Catch::Approx(agg->pooled.dimension).margin(0.1));
}

TEST_CASE("sweeps are reproducible for any worker count", "[metrics]") {
  SweepParams one;
  one.n_max = 1500;
  one.reps = 16;
  one.master_seed = 4242;
  one.workers = 1;
  SweepParams eight = one;
  eight.workers = 8;
  const std::vector<double> grid = {0.2, 0.5, 0.8};
  const auto tiles = parse_tiles("1,0,0,0;1,1,1,1");
  const auto a = density_curve(tiles, InteractionMode::symmetric(), grid, one);
  const auto b = density_curve(tiles, InteractionMode::symmetric(), grid, eight);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mean_density == b[i].mean_density);  // bitwise equal
    CHECK(a[i].std == b[i].std);
    CHECK(a[i].terminated_frac == b[i].terminated_frac);
  }
}
