#include <catch2/catch_amalgamated.hpp>

#include "tilesim/predictor.hpp"

using namespace tilesim;
namespace pred = tilesim::predictor;

namespace {

TileSystem sys_of(const std::string& tiles, const std::string& mode) {
  return TileSystem(parse_tiles(tiles),
                    mode == "sym" ? InteractionMode::symmetric() : InteractionMode::asymmetric(),
                    0.5);
}

}  // namespace

TEST_CASE("applicability", "[predictor]") {
  CHECK(pred::applicable(sys_of("1,0,0,0;1,1,1,1", "sym")));
  CHECK(pred::applicable(sys_of("2,0,0,0;1,2,1,1", "asym")));
  CHECK(pred::applicable(sys_of("1,2,0,0;1,2,1,0", "asym")));
  CHECK_FALSE(pred::applicable(sys_of("1,2,1,2;1,0,0,0", "sym")));   // two colours, symmetric
  CHECK_FALSE(pred::applicable(sys_of("1,2,1,2;1,2,0,0", "asym")));  // colour 2 twice on one tile
  CHECK_FALSE(pred::applicable(TileSystem({parse_tile("1,0,0,0")}, InteractionMode::symmetric())));
  // colour labels flipped: swap normalization applies
  CHECK(pred::applicable(sys_of("2,0,0,0;2,2,2,2", "sym")));
  CHECK(pred::applicable(sys_of("2,1,0,0;2,1,2,0", "asym")));
}

TEST_CASE("chirality normalization", "[predictor]") {
  // A set holding {2,1,0,0} is mirrored into its {1,2,0,0} form.
  const auto mirrored = pred::normalize_chirality(sys_of("2,1,0,0;2,1,0,1", "asym"));
  bool has_preferred = false;
  for (const auto& t : mirrored.tiles)
    has_preferred |= rotation_class(t) == rotation_class(parse_tile("1,2,0,0"));
  CHECK(has_preferred);

  // Already preferred: unchanged.
  const auto kept = pred::normalize_chirality(sys_of("1,2,0,0;1,2,1,0", "asym"));
  CHECK(kept.tiles == parse_tiles("1,2,0,0;1,2,1,0"));

  // Neither enantiomer: unchanged.
  const auto neither = pred::normalize_chirality(sys_of("2,0,0,0;1,1,2,0", "asym"));
  CHECK(neither.tiles == parse_tiles("2,0,0,0;1,1,2,0"));
}

TEST_CASE("corner environment", "[predictor]") {
  const auto corner = pred::corner_start();
  REQUIRE(corner.free.size() == 1);
  CHECK(corner.free[0].colour == 1);
  CHECK(corner.free[0].x == -1);
  CHECK(corner.free[0].y == 0);
  CHECK(corner.free[0].dir == East);

  // Clockwise around the target site the neutral context face (south)
  // immediately precedes the interacting one (west).
  CHECK(corner.at(0, -1).kind == pred::LocalConfig::Cell::Context);
  CHECK(corner.at(0, -1).face[North] == 0);
  CHECK(corner.at(-1, 0).face[East] == 1);
  CHECK(corner.at(0, 0).kind == pred::LocalConfig::Cell::Empty);
}

TEST_CASE("mean delta-a endpoint values", "[predictor]") {
  // At f = 0 only tile A attaches; for these systems it closes the corner
  // outright and the mean is exactly -1.
  CHECK(pred::mean_delta_a_at(sys_of("1,2,0,0;1,2,1,0", "asym"), Rational(0)) == -1);
  CHECK(pred::mean_delta_a_at(sys_of("1,0,0,0;1,1,1,1", "sym"), Rational(0)) == -1);
  // Sign check at f = 1 for {1,2,0,0}-{1,1,2,0}: 5/2 - 1 = 3/2.
  CHECK(pred::mean_delta_a_at(sys_of("1,2,0,0;1,1,2,0", "asym"), Rational(1)) == Rational(3, 2));
}

TEST_CASE("exact reproduction of the asymmetric reference cubics", "[predictor]") {
  // The expansion must land on the published numerators exactly (up to the
  // cleared positive constant).
  struct Case {
    const char* tiles;
    std::vector<long> coeffs;  // by power
  };
  const std::vector<Case> cases = {
      {"1,2,0,0;1,2,1,0", {-2, 2, 4, -1}},   // -f^3/2 + 2f^2 + f - 1
      {"1,2,0,0;1,2,1,1", {-8, 14, 33, -1}},
      {"1,2,0,0;2,1,1,0", {-12, 21, 30, -5}},
      {"1,2,0,0;1,1,2,0", {-2, 0, 5}},       // 5f^2/2 - 1
      {"2,0,0,0;1,1,2,0", {-2, 0, 2, 3}},
      {"2,0,0,0;1,2,1,0", {-2, 0, 2, 3}},
      {"2,0,0,0;1,2,1,1", {-4, 0, 24, -1}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.tiles);
    const auto result = pred::mean_delta_a(sys_of(c.tiles, "asym"));
    REQUIRE(result.numerator_coefficients.size() == c.coeffs.size());
    for (std::size_t i = 0; i < c.coeffs.size(); ++i)
      CHECK(result.numerator_coefficients[i] == c.coeffs[i]);
  }
}

TEST_CASE("predicted critical concentrations", "[predictor]") {
  struct Case {
    const char* tiles;
    const char* mode;
    double reference;  // root of the published cubic (frozen oracle)
  };
  const std::vector<Case> cases = {
      {"1,2,0,0;1,2,1,0", "asym", 0.523548}, {"1,2,0,0;1,2,1,1", "asym", 0.324963},
      {"1,2,0,0;2,1,1,0", "asym", 0.379095}, {"1,2,0,0;1,1,2,0", "asym", 0.632456},
      {"2,0,0,0;1,1,2,0", "asym", 0.698750}, {"2,0,0,0;1,2,1,0", "asym", 0.698750},
      {"2,0,0,0;1,2,1,1", "asym", 0.411796},
  };
  for (const auto& c : cases) {
    CAPTURE(c.tiles);
    const auto result = pred::predicted_fc(sys_of(c.tiles, c.mode));
    REQUIRE(result.applicable);
    REQUIRE(result.fc.has_value());
    CHECK(*result.fc == Catch::Approx(c.reference).margin(1e-4));
  }

  // The mirrored set must predict the same value as its preferred enantiomer.
  const auto mirrored = pred::predicted_fc(sys_of("2,1,0,0;2,1,0,1", "asym"));
  REQUIRE(mirrored.fc.has_value());
  CHECK(*mirrored.fc == Catch::Approx(0.523548).margin(1e-4));

  CHECK_FALSE(pred::predicted_fc(sys_of("1,2,1,2;1,0,0,0", "sym")).applicable);
  CHECK_THROWS_AS(pred::mean_delta_a(sys_of("1,2,1,2;1,0,0,0", "sym")), std::invalid_argument);
}

TEST_CASE("endpoint signs and root uniqueness", "[predictor]") {
  const std::vector<std::pair<const char*, const char*>> systems = {
      {"1,0,0,0;1,1,1,1", "sym"},  {"1,1,0,0;1,1,1,1", "sym"},  {"1,0,0,0;1,1,1,0", "sym"},
      {"1,1,0,0;1,1,1,0", "sym"},  {"1,2,0,0;1,2,1,0", "asym"}, {"1,2,0,0;1,2,1,1", "asym"},
      {"1,2,0,0;2,1,1,0", "asym"}, {"1,2,0,0;1,1,2,0", "asym"}, {"2,0,0,0;1,1,2,0", "asym"},
      {"2,0,0,0;1,2,1,0", "asym"}, {"2,0,0,0;1,2,1,1", "asym"},
  };
  for (const auto& [tiles, mode] : systems) {
    CAPTURE(tiles, mode);
    const auto result = pred::mean_delta_a(sys_of(tiles, mode));
    CHECK(result.sign_near_zero == -1);
    CHECK(result.sign_near_one == 1);
    CHECK(count_roots_open01(result.numerator) == 1);
  }
}

TEST_CASE("branch probabilities sum to one", "[predictor]") {
  // Exact rational check of the first-step conditional law at three
  // concentrations.
  const std::vector<std::pair<const char*, const char*>> systems = {
      {"1,0,0,0;1,1,1,1", "sym"}, {"1,2,0,0;1,2,1,0", "asym"}};
  for (const auto& [tiles, mode] : systems) {
    const TileSystem sys = sys_of(tiles, mode);
    const auto corner = pred::corner_start();
    const auto branches = pred::detail::successful_branches(corner, sys);
    REQUIRE_FALSE(branches.empty());
    for (const Rational& f : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
      Rational z = 0;
      for (const auto& b : branches) z += (b.type == 1 ? f : 1 - f) / Rational(4 * corner.free.size());
      Rational sum = 0;
      for (const auto& b : branches)
        sum += ((b.type == 1 ? f : 1 - f) / Rational(4 * corner.free.size())) / z;
      CHECK(sum == 1);
    }
  }
}

TEST_CASE("exactness: polynomial route equals scalar traversal", "[predictor]") {
  const std::vector<std::pair<const char*, const char*>> systems = {
      {"1,0,0,0;1,1,1,1", "sym"}, {"1,1,0,0;1,1,1,0", "sym"}, {"1,2,0,0;1,2,1,1", "asym"},
      {"2,0,0,0;1,2,1,0", "asym"}};
  const std::vector<Rational> points = {Rational(1, 10), Rational(1, 2), Rational(9, 10),
                                        Rational(3, 7)};
  for (const auto& [tiles, mode] : systems) {
    CAPTURE(tiles, mode);
    const auto result = pred::mean_delta_a(sys_of(tiles, mode));
    for (const Rational& f : points)
      CHECK(result.mean(f) == pred::mean_delta_a_at(sys_of(tiles, mode), f));
  }
}
