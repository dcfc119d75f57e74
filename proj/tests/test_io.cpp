#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "tilesim/io.hpp"
#include "tilesim/svg.hpp"

using namespace tilesim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "tilesim-io-tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct CommandResult {
  int exit_code;
  std::string output;  // stdout only
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TILESIM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("double formatting is stable", "[io]") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-3.25) == "-3.25");
  // round-trip
  const double v = 0.5226297;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("structure files round-trip", "[io]") {
  const TileSystem sys(parse_tiles("1,3,0,0;2,5,0,4"),
                       InteractionMode::general({{1, 2}, {3, 4}, {5, 6}}), 0.5);
  Assembly a(sys, 77, 0);
  a.run_to(100);
  const StructureFile original = structure_of(a, 77);
  const Json j = to_json(original);
  const StructureFile restored = structure_from_json(j);

  CHECK(restored.tiles == original.tiles);
  CHECK(restored.mode == original.mode);
  CHECK(restored.f == original.f);
  CHECK(restored.rng_seed == 77);
  CHECK(restored.placements == original.placements);
  CHECK(restored.terminated == original.terminated);
  CHECK(restored.n_final == original.n_final);

  SECTION("schema fields are exactly as documented") {
    CHECK(j.contains("system"));
    CHECK(j.contains("mode"));
    CHECK(j.contains("f"));
    CHECK(j.contains("rng_seed"));
    CHECK(j.contains("placements"));
    CHECK(j.contains("terminated"));
    CHECK(j.contains("N_final"));
    CHECK(j.at("system").get<std::string>() == "1,3,0,0;2,5,0,4");
  }
}

TEST_CASE("mode parsing", "[io]") {
  CHECK(parse_mode("sym").kind == InteractionMode::Kind::Symmetric);
  CHECK(parse_mode("asym").kind == InteractionMode::Kind::Asymmetric);

  const auto path = temp_dir() / "bindings.json";
  write_text_file(path.string(), R"({"bindings": [[1,2],[3,4],[5,6]]})");
  const auto from_file = parse_mode("matrix:" + path.string());
  CHECK(from_file.kind == InteractionMode::Kind::General);
  CHECK(from_file.binds(5, 6));
  CHECK_FALSE(from_file.binds(1, 1));
  const auto bare = parse_mode(path.string());
  CHECK(bare == from_file);

  CHECK_THROWS_AS(parse_mode("nonsense"), std::invalid_argument);
}

TEST_CASE("trace csv", "[io]") {
  const TileSystem sys({parse_tile("1,2,1,2")}, InteractionMode::asymmetric());
  Assembly a(sys, 3);
  const RunTrace trace = a.run_to(500, 100);
  const std::string csv = trace_csv(trace);
  CHECK(csv.rfind("N,a\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 samples
}

TEST_CASE("svg rendering", "[io]") {
  const TileSystem sys({parse_tile("1,2,0,0")}, InteractionMode::asymmetric());
  Assembly a(sys, 5);
  const StructureFile seed_only = structure_of(a, 5);

  SECTION("single square centred in the viewport") {
    const std::string svg = render_svg(seed_only);
    CHECK(svg.find("<svg xmlns") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') >= 3);
    // one background rect plus exactly one cell rect
    std::size_t rects = 0, pos = 0;
    while ((pos = svg.find("<rect", pos)) != std::string::npos) {
      ++rects;
      pos += 5;
    }
    CHECK(rects == 2);
  }

  SECTION("deterministic output") {
    RenderSpec spec;
    spec.face_ticks = true;
    spec.circle_overlay = true;
    CHECK(render_svg(seed_only, spec) == render_svg(seed_only, spec));
  }

  SECTION("circle overlay radius follows the disc law") {
    Assembly grown(sys, 5);
    grown.run_to(4);
    const StructureFile structure = structure_of(grown, 5);
    RenderSpec spec;
    spec.circle_overlay = true;
    const std::string svg = render_svg(structure, spec);
    const double expected_radius = 0.5 * std::sqrt(4.0 / 3.14159265358979323846) * spec.cell_size;
    CHECK(svg.find("r=\"" + format_double(expected_radius) + "\"") != std::string::npos);
  }

  SECTION("haemoglobin wild-type complex renders two colours, two tiles each") {
    const TileSystem hb(parse_tiles("1,3,0,0;2,5,0,4"),
                        InteractionMode::general({{1, 2}, {3, 4}, {5, 6}}), 0.5);
    Assembly complex(hb, 9, 0);
    complex.run_to(100);
    REQUIRE(complex.placed_count() == 4);
    const std::string svg = render_svg(structure_of(complex, 9));
    RenderSpec spec;
    std::size_t tile_a = 0, tile_b = 0, pos = 0;
    while ((pos = svg.find(spec.tile_palette[0], pos)) != std::string::npos) {
      ++tile_a;
      pos += 1;
    }
    pos = 0;
    while ((pos = svg.find(spec.tile_palette[1], pos)) != std::string::npos) {
      ++tile_b;
      pos += 1;
    }
    CHECK(tile_a == 2);
    CHECK(tile_b == 2);
  }
}

TEST_CASE("cli basics", "[io]") {
  SECTION("enumerate counts") {
    const auto singles = run_cli("enumerate --kind single --format csv");
    CHECK(singles.exit_code == 0);
    CHECK(std::count(singles.output.begin(), singles.output.end(), '\n') == 14);  // header + 13

    const auto pairs = run_cli("enumerate --kind pair --format csv");
    CHECK(pairs.exit_code == 0);
    CHECK(std::count(pairs.output.begin(), pairs.output.end(), '\n') == 107);  // header + 106
  }

  SECTION("predict emits the documented fields") {
    const auto result = run_cli("predict --tiles \"1,2,0,0;1,2,1,0\" --mode asym");
    REQUIRE(result.exit_code == 0);
    const Json j = Json::parse(result.output);
    CHECK(j.at("applicable").get<bool>());
    CHECK(j.at("predicted_fc").get<double>() == Catch::Approx(0.5235).margin(1e-3));
    CHECK(j.at("numerator_coefficients").size() == 4);
  }

  SECTION("run writes structure, trace, and render") {
    const auto dir = temp_dir();
    const auto structure = (dir / "line.json").string();
    const auto trace = (dir / "line.csv").string();
    const auto svg = (dir / "line.svg").string();
    const auto result = run_cli("run --tiles 1,0,2,0 --mode asym --nmax 500 --master-seed 3 --out " +
                                structure + " --trace " + trace + " --render " + svg);
    REQUIRE(result.exit_code == 0);
    const Json summary = Json::parse(result.output);
    CHECK(summary.at("N_final").get<int>() == 500);

    const auto restored = structure_from_json(Json::parse(read_text_file(structure)));
    CHECK(restored.placements.size() == 500);
    // a straight line: all cells share one column or one row
    bool same_x = true, same_y = true;
    for (const auto& p : restored.placements) {
      same_x &= p.x == restored.placements[0].x;
      same_y &= p.y == restored.placements[0].y;
    }
    CHECK((same_x || same_y));
    CHECK(read_text_file(trace).rfind("N,a\n", 0) == 0);
    CHECK(read_text_file(svg).find("</svg>") != std::string::npos);
  }

  SECTION("invalid input fails with a nonzero exit") {
    CHECK(run_cli("run --tiles 1,2,0 --mode asym").exit_code != 0);
    CHECK(run_cli("run --tiles 1,2,0,0 --mode bogus").exit_code != 0);
    CHECK(run_cli("run --tiles 1,2,0,0 --mode asym --f 1.5").exit_code != 0);
  }

  SECTION("density command is byte-identical across worker counts") {
    const auto dir = temp_dir();
    const auto out1 = (dir / "density1.csv").string();
    const auto out8 = (dir / "density8.csv").string();
    const std::string base =
        "density --tiles \"2,0,2,0;1,1,1,1\" --mode sym --f-grid 0:1:0.25 --reps 12 "
        "--nmax 400 --master-seed 5 ";
    REQUIRE(run_cli(base + "--workers 1 --out " + out1).exit_code == 0);
    REQUIRE(run_cli(base + "--workers 8 --out " + out8).exit_code == 0);
    CHECK(read_text_file(out1) == read_text_file(out8));
    CHECK(read_text_file(out1).rfind("f,mean_density,std,reps\n", 0) == 0);
  }
}
