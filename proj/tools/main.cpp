// tilesim: simulator and analysis CLI for two-tile lattice self-assembly.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <set>

#include "tilesim/tilesim.hpp"

using namespace tilesim;

namespace {

// ---------------------------------------------------------------------------
// Shared option bundles

struct SystemArgs {
  std::string tiles;
  std::string mode = "sym";
  double f = 0.0;

  std::vector<Tile> parsed_tiles() const { return parse_tiles(tiles); }
  InteractionMode parsed_mode() const { return parse_mode(mode); }
  TileSystem system() const { return TileSystem(parsed_tiles(), parsed_mode(), f); }
};

void add_system_options(CLI::App* cmd, SystemArgs& args, bool with_f = true) {
  cmd->add_option("--tiles", args.tiles, "tile set, e.g. \"1,2,0,0;1,2,1,0\"")->required();
  cmd->add_option("--mode", args.mode, "sym | asym | matrix:<path to JSON binding list>");
  if (with_f)
    cmd->add_option("--f", args.f, "probability of drawing tile B")->check(CLI::Range(0.0, 1.0));
}

std::vector<double> parse_f_grid(const std::string& text) {
  double lo = 0.0, hi = 1.0, step = 0.1;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 || hi < lo ||
      lo < 0.0 || hi > 1.0)
    throw std::invalid_argument("bad --f-grid, expected lo:hi:step within [0,1]");
  std::vector<double> grid;
  for (double f = lo; f < hi + step / 2; f += step) grid.push_back(std::min(f, hi));
  return grid;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    write_text_file(out_path, content);
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

const char* direction_name(FcDirection d) {
  return d == FcDirection::BoundBelowUnboundAbove ? "bound_below_unbound_above"
                                                  : "unbound_below_bound_above";
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_enumerate(const std::string& kind, const std::string& format, const std::string& out) {
  std::vector<std::string> rows;
  if (kind == "single") {
    for (const Tile& t : enumerate_singles()) rows.push_back(format_tile(t));
  } else if (kind == "rotation") {
    for (const Tile& t : enumerate_rotation_classes()) rows.push_back(format_tile(t));
  } else if (kind == "pair") {
    for (const auto& [a, b] : enumerate_pairs())
      rows.push_back(format_tile(a) + ";" + format_tile(b));
  } else {
    throw std::invalid_argument("--kind must be single, pair, or rotation");
  }
  std::string content;
  if (format == "json") {
    Json j = Json::array();
    for (const auto& r : rows) j.push_back(r);
    content = j.dump(2) + "\n";
  } else {
    content = kind == "pair" ? "tile_a,tile_b\n" : "tile\n";
    for (const auto& r : rows) {
      if (kind == "pair") {
        const auto semi = r.find(';');
        content += csv_quote(r.substr(0, semi)) + "," + csv_quote(r.substr(semi + 1)) + "\n";
      } else {
        content += csv_quote(r) + "\n";
      }
    }
  }
  emit(content, out);
  return 0;
}

struct RunArgs {
  SystemArgs sys;
  std::uint64_t n_max = 10000;
  std::uint64_t stride = 100;
  std::uint64_t master_seed = 0;
  std::string seed_override;
  std::string engine = "conditioned";
  std::string out, trace_out, render_out;
  bool render_circle = false;
  bool render_ticks = false;
};

int cmd_run(const RunArgs& args) {
  const TileSystem sys = args.sys.system();
  std::optional<int> seed_override;
  if (args.seed_override == "A")
    seed_override = 0;
  else if (args.seed_override == "B")
    seed_override = 1;
  else if (!args.seed_override.empty())
    throw std::invalid_argument("--seed-override must be A or B");
  const auto engine =
      args.engine == "attempt" ? Assembly::Engine::Attempt : Assembly::Engine::Conditioned;

  Assembly assembly(sys, args.master_seed, seed_override);
  const RunTrace trace = assembly.run_to(args.n_max, args.stride, engine);
  const StructureFile structure = structure_of(assembly, args.master_seed);

  if (!args.out.empty()) write_text_file(args.out, to_json(structure).dump(2) + "\n");
  if (!args.trace_out.empty()) write_text_file(args.trace_out, trace_csv(trace));
  if (!args.render_out.empty()) {
    RenderSpec spec;
    spec.circle_overlay = args.render_circle;
    spec.face_ticks = args.render_ticks;
    write_text_file(args.render_out, render_svg(structure, spec));
  }
  const Json summary{{"N_final", trace.n_final},
                     {"a_final", trace.a_final},
                     {"terminated", trace.terminated},
                     {"stalled", trace.stalled},
                     {"density", density(assembly)}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct DensityArgs {
  SystemArgs sys;
  std::string f_grid = "0:1:0.1";
  SweepParams params;
  std::string format = "csv";
  std::string out;
};

int cmd_density(const DensityArgs& args) {
  const auto grid = parse_f_grid(args.f_grid);
  const auto curve =
      density_curve(args.sys.parsed_tiles(), args.sys.parsed_mode(), grid, args.params);
  std::string content;
  if (args.format == "json") {
    Json j = Json::array();
    for (const auto& p : curve)
      j.push_back({{"f", p.f},
                   {"mean_density", p.mean_density},
                   {"std", p.std},
                   {"reps", p.reps},
                   {"terminated_frac", p.terminated_frac},
                   {"reached_nmax_frac", p.reached_nmax_frac}});
    content = j.dump(2) + "\n";
  } else {
    content = "f,mean_density,std,reps\n";
    for (const auto& p : curve)
      content += format_double(p.f) + "," + format_double(p.mean_density) + "," +
                 format_double(p.std) + "," + std::to_string(p.reps) + "\n";
  }
  emit(content, args.out);
  return 0;
}

struct FcArgs {
  SystemArgs sys;
  FcParams params;
  std::string format = "json";
  std::string out;
};

int cmd_fc(const FcArgs& args) {
  const auto result = find_fc(args.sys.parsed_tiles(), args.sys.parsed_mode(), args.params);
  std::string content;
  if (args.format == "csv") {
    content = "f,slope,stderr\n";
    if (result)
      for (const auto& e : result->evaluations)
        content += format_double(e.f) + "," + format_double(e.slope) + "," +
                   format_double(e.std_err) + "\n";
  } else {
    Json j{{"system", args.sys.tiles}, {"mode", args.sys.mode}};
    if (result) {
      j["f_c"] = result->f_c;
      j["bracket"] = {result->bracket_lo, result->bracket_hi};
      j["direction"] = direction_name(result->direction);
      j["crossings"] = result->crossings;
      Json evals = Json::array();
      for (const auto& e : result->evaluations)
        evals.push_back({{"f", e.f}, {"slope", e.slope}, {"stderr", e.std_err}});
      j["evaluations"] = evals;
    } else {
      j["f_c"] = nullptr;
    }
    content = j.dump(2) + "\n";
  }
  emit(content, args.out);
  return 0;
}

struct FractalArgs {
  SystemArgs sys;
  FractalParams params;
  std::string format = "csv";
  std::string out;
};

int cmd_fractal(const FractalArgs& args) {
  const auto agg =
      fractal_at(args.sys.parsed_tiles(), args.sys.parsed_mode(), args.sys.f, args.params);
  if (!agg) throw std::runtime_error("structures stayed below --min-extent; nothing to fit");
  std::string content;
  if (args.format == "json") {
    Json j{{"system", args.sys.tiles},
           {"mode", args.sys.mode},
           {"f", args.sys.f},
           {"eps", agg->pooled.box_sizes},
           {"box_count", agg->pooled.box_counts},
           {"D", agg->pooled.dimension},
           {"r2", agg->pooled.r_squared},
           {"mean_dimension", agg->mean_dimension},
           {"std_dimension", agg->std_dimension},
           {"used_runs", agg->used_runs},
           {"skipped_runs", agg->skipped_runs}};
    content = j.dump(2) + "\n";
  } else {
    content = "eps,box_count\n";
    for (std::size_t i = 0; i < agg->pooled.box_sizes.size(); ++i)
      content += std::to_string(agg->pooled.box_sizes[i]) + "," +
                 format_double(agg->pooled.box_counts[i]) + "\n";
    content += "D,r2\n";
    content +=
        format_double(agg->pooled.dimension) + "," + format_double(agg->pooled.r_squared) + "\n";
  }
  emit(content, args.out);
  return 0;
}

int cmd_predict(const SystemArgs& sys_args, const std::string& out) {
  const TileSystem sys = sys_args.system();
  const auto prediction = predictor::predicted_fc(sys);
  Json j{{"system", sys_args.tiles},
         {"mode", sys_args.mode},
         {"applicable", prediction.applicable}};
  if (prediction.detail) {
    Json coeffs = Json::array();
    for (const auto& c : prediction.detail->numerator_coefficients) coeffs.push_back(c.str());
    j["numerator_coefficients"] = coeffs;
  }
  if (prediction.fc)
    j["predicted_fc"] = *prediction.fc;
  else {
    j["predicted_fc"] = nullptr;
    if (!prediction.failure.empty()) j["failure"] = prediction.failure;
  }
  emit(j.dump(2) + "\n", out);
  return 0;
}

Json record_to_json(const CatalogueRecord& rec, std::size_t index) {
  Json flags{{"non_interacting", rec.flags.non_interacting},
             {"seed_dependent", rec.flags.seed_dependent},
             {"extended_seed_dependent", rec.flags.extended_seed_dependent},
             {"f_dep_bottleneck", rec.flags.f_dep_bottleneck},
             {"f_indep_bottleneck", rec.flags.f_indep_bottleneck},
             {"hdnm", rec.flags.hdnm},
             {"random_walker", rec.flags.random_walker},
             {"critical", rec.flags.critical_fc.has_value()},
             {"dimensional_transition", rec.flags.dimensional_transition}};
  Json density{{"f", Json::array()},
               {"mean", Json::array()},
               {"std", Json::array()},
               {"terminated_frac", Json::array()},
               {"reached_nmax_frac", Json::array()}};
  for (const auto& p : rec.density) {
    density["f"].push_back(p.f);
    density["mean"].push_back(p.mean_density);
    density["std"].push_back(p.std);
    density["terminated_frac"].push_back(p.terminated_frac);
    density["reached_nmax_frac"].push_back(p.reached_nmax_frac);
  }
  return Json{{"index", index},
              {"tile_a", format_tile(rec.tile_a)},
              {"tile_b", format_tile(rec.tile_b)},
              {"mode", rec.mode_name},
              {"label", rec.label},
              {"flags", flags},
              {"f_c", rec.f_c ? Json(*rec.f_c) : Json(nullptr)},
              {"fc_direction",
               rec.fc_direction ? Json(direction_name(*rec.fc_direction)) : Json(nullptr)},
              {"fractal_dimension",
               rec.fractal_dimension ? Json(*rec.fractal_dimension) : Json(nullptr)},
              {"fractal_r2", rec.fractal_r2 ? Json(*rec.fractal_r2) : Json(nullptr)},
              {"density", density},
              {"density_min", rec.density_min},
              {"density_max", rec.density_max},
              {"trend_z", rec.trend_z},
              {"inconclusive", rec.inconclusive},
              {"notes", rec.notes},
              {"master_seed", rec.master_seed},
              {"n_max", rec.n_max},
              {"reps", rec.reps}};
}

std::string record_csv_header() {
  return "index,tile_a,tile_b,mode,label,seed_dependent,extended_seed_dependent,"
         "f_dep_bottleneck,f_indep_bottleneck,random_walker,hdnm,critical,"
         "dimensional_transition,f_c,fractal_dimension,fractal_r2,density_min,density_max,"
         "trend_z,inconclusive,notes,master_seed\n";
}

std::string record_csv_row(const Json& j, std::size_t index) {
  auto opt = [&](const char* key) {
    return j.at(key).is_null() ? std::string() : format_double(j.at(key).get<double>());
  };
  auto flag = [&](const char* key) { return j.at("flags").at(key).get<bool>() ? "1" : "0"; };
  std::string row = std::to_string(index) + "," + csv_quote(j.at("tile_a").get<std::string>()) +
                    "," + csv_quote(j.at("tile_b").get<std::string>()) + "," +
                    j.at("mode").get<std::string>() + "," + j.at("label").get<std::string>() + ",";
  row += std::string(flag("seed_dependent")) + "," + flag("extended_seed_dependent") + "," +
         flag("f_dep_bottleneck") + "," + flag("f_indep_bottleneck") + "," +
         flag("random_walker") + "," + flag("hdnm") + "," + flag("critical") + "," +
         flag("dimensional_transition") + ",";
  row += opt("f_c") + "," + opt("fractal_dimension") + "," + opt("fractal_r2") + "," +
         format_double(j.at("density_min").get<double>()) + "," +
         format_double(j.at("density_max").get<double>()) + "," +
         format_double(j.at("trend_z").get<double>()) + "," +
         (j.at("inconclusive").get<bool>() ? "1" : "0") + "," +
         csv_quote(j.at("notes").get<std::string>()) + "," +
         std::to_string(j.at("master_seed").get<std::uint64_t>()) + "\n";
  return row;
}

struct ClassifyArgs {
  SystemArgs sys;
  int reps = 100;
  std::uint64_t n_max = 10000;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  std::string out;
};

int cmd_classify(const ClassifyArgs& args) {
  const auto tiles = args.sys.parsed_tiles();
  const auto mode = args.sys.parsed_mode();
  if (tiles.size() == 1) {
    SingleParams params;
    params.reps = args.reps;
    params.n_max = args.n_max;
    params.master_seed = args.master_seed;
    params.workers = args.workers;
    const auto result = classify_single(tiles[0], mode, params);
    const Json j{{"tile", format_tile(tiles[0])},
                 {"mode", args.sys.mode},
                 {"label", to_string(result.label)},
                 {"terminated_frac", result.terminated_frac},
                 {"slope", result.slope},
                 {"inconclusive", result.inconclusive},
                 {"note", result.note},
                 {"master_seed", params.master_seed},
                 {"n_max", params.n_max},
                 {"reps", params.reps}};
    emit(j.dump(2) + "\n", args.out);
  } else {
    PairParams params;
    params.reps = args.reps;
    params.n_max = args.n_max;
    params.master_seed = args.master_seed;
    params.workers = args.workers;
    const auto rec = classify_pair(tiles[0], tiles[1], mode, params);
    emit(record_to_json(rec, 0).dump(2) + "\n", args.out);
  }
  return 0;
}

struct CatalogueArgs {
  std::string modes = "sym,asym";
  PairParams params;
  std::string out = "catalogue.jsonl";
  std::string csv_out;
  bool resume = false;
};

int cmd_catalogue(const CatalogueArgs& args) {
  std::vector<InteractionMode> modes;
  for (std::size_t start = 0; start <= args.modes.size();) {
    const auto comma = args.modes.find(',', start);
    const std::string name =
        args.modes.substr(start, comma == std::string::npos ? comma : comma - start);
    if (name == "sym")
      modes.push_back(InteractionMode::symmetric());
    else if (name == "asym")
      modes.push_back(InteractionMode::asymmetric());
    else
      throw std::invalid_argument("--modes must list sym and/or asym");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  const auto pairs = enumerate_pairs();
  const std::size_t total = pairs.size() * modes.size();

  // Resume: records already present in --out are kept, keyed by index.
  std::map<std::size_t, Json> done;
  if (args.resume) {
    std::ifstream in(args.out);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      const Json j = Json::parse(line);
      done[j.at("index").get<std::size_t>()] = j;
    }
    std::fprintf(stderr, "resuming: %zu of %zu records already present\n", done.size(), total);
  }
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < total; ++i)
    if (!done.count(i)) todo.push_back(i);

  // Finished records are appended as they complete, so the output file
  // doubles as the sweep manifest; the final file is rewritten in index
  // order, making it identical for any worker count.
  std::ofstream append(args.out, args.resume ? std::ios::app : std::ios::trunc);
  if (!append) throw std::runtime_error("cannot write '" + args.out + "'");
  std::mutex io_mutex;
  std::size_t completed = 0;
  std::vector<Json> fresh(todo.size());
  try {
    parallel_for(
        todo.size(), args.params.workers,
        [&](std::size_t k) {
          const std::size_t index = todo[k];
          const auto& [a, b] = pairs[index % pairs.size()];
          const InteractionMode& mode = modes[index / pairs.size()];
          PairParams local = args.params;
          local.master_seed = split_seed(args.params.master_seed, index);
          local.workers = 1;
          const auto rec = classify_pair(a, b, mode, local);
          fresh[k] = record_to_json(rec, index);
          std::scoped_lock lock(io_mutex);
          append << fresh[k].dump() << "\n";
          append.flush();
        },
        [&](std::size_t k) {
          std::scoped_lock lock(io_mutex);
          ++completed;
          std::fprintf(stderr, "[%zu/%zu] %s;%s %s -> %s\n", done.size() + completed, total,
                       fresh[k].at("tile_a").get<std::string>().c_str(),
                       fresh[k].at("tile_b").get<std::string>().c_str(),
                       fresh[k].at("mode").get<std::string>().c_str(),
                       fresh[k].at("label").get<std::string>().c_str());
        });
  } catch (...) {
    std::fprintf(stderr, "catalogue aborted; partial manifest kept in %s (use --resume)\n",
                 args.out.c_str());
    throw;
  }
  append.close();

  for (std::size_t k = 0; k < todo.size(); ++k) done[todo[k]] = std::move(fresh[k]);
  std::string content;
  for (const auto& [index, j] : done) content += j.dump() + "\n";
  write_text_file(args.out, content);

  if (!args.csv_out.empty()) {
    std::string csv = record_csv_header();
    for (const auto& [index, j] : done) csv += record_csv_row(j, index);
    write_text_file(args.csv_out, csv);
  }
  std::fprintf(stderr, "catalogue complete: %zu records in %s\n", done.size(), args.out.c_str());
  return 0;
}

struct RenderArgs {
  std::string in;
  std::string out;
  RenderSpec spec;
};

int cmd_render(const RenderArgs& args) {
  const StructureFile structure = structure_from_json(Json::parse(read_text_file(args.in)));
  write_text_file(args.out, render_svg(structure, args.spec));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic self-assembly of one- and two-tile sets on the square lattice"};
  app.require_subcommand(1);

  std::string enum_kind = "single", enum_format = "csv", enum_out;
  auto* enumerate = app.add_subcommand("enumerate", "list distinct tiles or tile pairs");
  enumerate->add_option("--kind", enum_kind, "single | pair | rotation");
  enumerate->add_option("--format", enum_format, "csv | json");
  enumerate->add_option("--out", enum_out, "output path (default stdout)");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "grow one assembly");
  add_system_options(run, run_args.sys);
  run->add_option("--nmax", run_args.n_max, "stop after this many tiles");
  run->add_option("--stride", run_args.stride, "trace sampling stride");
  run->add_option("--master-seed", run_args.master_seed, "RNG seed");
  run->add_option("--seed-override", run_args.seed_override, "force the seed tile: A | B");
  run->add_option("--engine", run_args.engine, "conditioned | attempt");
  run->add_option("--out", run_args.out, "structure JSON path");
  run->add_option("--trace", run_args.trace_out, "trace CSV path");
  run->add_option("--render", run_args.render_out, "SVG path");
  run->add_flag("--render-circle", run_args.render_circle, "overlay the measurement disc");
  run->add_flag("--render-ticks", run_args.render_ticks, "mark non-neutral faces");

  DensityArgs density_args;
  auto* density_cmd = app.add_subcommand("density", "density curve over f");
  add_system_options(density_cmd, density_args.sys, false);
  density_cmd->add_option("--f-grid", density_args.f_grid, "lo:hi:step");
  density_cmd->add_option("--reps", density_args.params.reps, "runs per grid point");
  density_cmd->add_option("--nmax", density_args.params.n_max, "horizon per run");
  density_cmd->add_option("--master-seed", density_args.params.master_seed, "RNG master seed");
  density_cmd->add_option("--workers", density_args.params.workers, "worker threads");
  density_cmd->add_option("--format", density_args.format, "csv | json");
  density_cmd->add_option("--out", density_args.out, "output path (default stdout)");

  FcArgs fc_args;
  auto* fc = app.add_subcommand("fc", "measure the critical concentration");
  add_system_options(fc, fc_args.sys, false);
  fc->add_option("--tol", fc_args.params.tol, "bisection tolerance (>= 0.005)");
  fc->add_option("--neval", fc_args.params.n_eval, "slope evaluation horizon");
  fc->add_option("--reps", fc_args.params.reps, "runs per slope evaluation");
  fc->add_option("--window-frac", fc_args.params.window_frac, "trailing fit window fraction");
  fc->add_option("--master-seed", fc_args.params.master_seed, "RNG master seed");
  fc->add_option("--workers", fc_args.params.workers, "worker threads");
  fc->add_option("--format", fc_args.format, "json | csv");
  fc->add_option("--out", fc_args.out, "output path (default stdout)");

  FractalArgs fractal_args;
  auto* fractal = app.add_subcommand("fractal", "box-counting dimension at fixed f");
  add_system_options(fractal, fractal_args.sys);
  fractal->add_option("--n", fractal_args.params.n_max, "tiles per structure");
  fractal->add_option("--reps", fractal_args.params.reps, "structures to pool");
  fractal->add_option("--min-extent", fractal_args.params.min_extent, "minimum bounding extent");
  fractal->add_option("--master-seed", fractal_args.params.master_seed, "RNG master seed");
  fractal->add_option("--workers", fractal_args.params.workers, "worker threads");
  fractal->add_option("--format", fractal_args.format, "csv | json");
  fractal->add_option("--out", fractal_args.out, "output path (default stdout)");

  SystemArgs predict_args;
  std::string predict_out;
  auto* predict = app.add_subcommand("predict", "analytical critical-concentration estimate");
  add_system_options(predict, predict_args, false);
  predict->add_option("--out", predict_out, "output path (default stdout)");

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "behaviour taxonomy for a tile or a pair");
  add_system_options(classify, classify_args.sys, false);
  classify->add_option("--reps", classify_args.reps, "runs per measurement");
  classify->add_option("--nmax", classify_args.n_max, "horizon per run");
  classify->add_option("--master-seed", classify_args.master_seed, "RNG master seed");
  classify->add_option("--workers", classify_args.workers, "worker threads");
  classify->add_option("--out", classify_args.out, "output path (default stdout)");

  CatalogueArgs catalogue_args;
  auto* catalogue = app.add_subcommand("catalogue", "classify all 106 pairs under both modes");
  catalogue->add_option("--modes", catalogue_args.modes, "comma list: sym,asym");
  catalogue->add_option("--reps", catalogue_args.params.reps, "runs per measurement");
  catalogue->add_option("--nmax", catalogue_args.params.n_max, "horizon per run");
  catalogue->add_option("--master-seed", catalogue_args.params.master_seed, "RNG master seed");
  catalogue->add_option("--workers", catalogue_args.params.workers, "worker threads");
  catalogue->add_option("--out", catalogue_args.out, "JSON-lines output path");
  catalogue->add_option("--csv", catalogue_args.csv_out, "also write a CSV summary");
  catalogue->add_flag("--resume", catalogue_args.resume, "skip records already in --out");

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "render a structure file to SVG");
  render->add_option("--in", render_args.in, "structure JSON path")->required();
  render->add_option("--out", render_args.out, "SVG path")->required();
  render->add_option("--cell-size", render_args.spec.cell_size, "pixels per cell");
  render->add_flag("--circle", render_args.spec.circle_overlay, "overlay the measurement disc");
  render->add_flag("--face-ticks", render_args.spec.face_ticks, "mark non-neutral faces");

  CLI11_PARSE(app, argc, argv);

  // Worker defaults honour TILESIM_WORKERS, then hardware concurrency.
  if (!density_cmd->count("--workers")) density_args.params.workers = default_workers();
  if (!fc->count("--workers")) fc_args.params.workers = default_workers();
  if (!fractal->count("--workers")) fractal_args.params.workers = default_workers();
  if (!classify->count("--workers")) classify_args.workers = default_workers();
  if (!catalogue->count("--workers")) catalogue_args.params.workers = default_workers();

  try {
    if (*enumerate) return cmd_enumerate(enum_kind, enum_format, enum_out);
    if (*run) return cmd_run(run_args);
    if (*density_cmd) return cmd_density(density_args);
    if (*fc) return cmd_fc(fc_args);
    if (*fractal) return cmd_fractal(fractal_args);
    if (*predict) return cmd_predict(predict_args, predict_out);
    if (*classify) return cmd_classify(classify_args);
    if (*catalogue) return cmd_catalogue(catalogue_args);
    if (*render) return cmd_render(render_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
