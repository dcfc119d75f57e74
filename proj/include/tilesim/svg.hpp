#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tilesim/io.hpp"

namespace tilesim {

struct RenderSpec {
  double cell_size = 12.0;
  std::vector<std::string> tile_palette = {"#4878a8", "#e0903f"};
  bool face_ticks = false;       // mark non-neutral faces, coloured by face colour
  bool circle_overlay = false;   // the density measurement disc
  double margin_cells = 1.0;
};

namespace detail {
inline const char* face_colour_palette(Colour c) {
  static const char* palette[] = {"#000000", "#c03030", "#3050c0", "#2f8f2f",
                                  "#9040a0", "#c07820", "#20a0a0"};
  return palette[c <= 6 ? c : 0];
}
}  // namespace detail

// One unit square per placement, lattice y pointing up. Output is a pure
// function of the structure file and spec.
inline std::string render_svg(const StructureFile& structure, const RenderSpec& spec = {}) {
  if (structure.placements.empty()) throw std::invalid_argument("nothing to render");
  std::int64_t x0 = structure.placements[0].x, x1 = x0;
  std::int64_t y0 = structure.placements[0].y, y1 = y0;
  for (const auto& p : structure.placements) {
    x0 = std::min<std::int64_t>(x0, p.x);
    x1 = std::max<std::int64_t>(x1, p.x);
    y0 = std::min<std::int64_t>(y0, p.y);
    y1 = std::max<std::int64_t>(y1, p.y);
  }
  const double cell = spec.cell_size;
  const double margin = spec.margin_cells * cell;
  const double width = (x1 - x0 + 1) * cell + 2 * margin;
  const double height = (y1 - y0 + 1) * cell + 2 * margin;
  // lattice (x, y) -> svg coordinates of the cell's upper-left corner
  const auto sx = [&](double x) { return margin + (x - x0) * cell; };
  const auto sy = [&](double y) { return margin + (y1 - y) * cell; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(width) +
         "\" height=\"" + format_double(height) + "\" viewBox=\"0 0 " + format_double(width) +
         " " + format_double(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (const auto& p : structure.placements) {
    const std::string& fill = spec.tile_palette[p.tile % spec.tile_palette.size()];
    out += "<rect x=\"" + format_double(sx(p.x)) + "\" y=\"" + format_double(sy(p.y)) +
           "\" width=\"" + format_double(cell) + "\" height=\"" + format_double(cell) +
           "\" fill=\"" + fill + "\" stroke=\"#303030\" stroke-width=\"" +
           format_double(cell * 0.04) + "\"/>\n";
  }

  if (spec.face_ticks) {
    for (const auto& p : structure.placements) {
      const Tile& tile = structure.tiles[p.tile];
      const double cx = sx(p.x) + cell / 2, cy = sy(p.y) + cell / 2;
      for (int d = 0; d < 4; ++d) {
        const Colour c = tile.world_face(d, p.orient);
        if (c == 0) continue;
        const double tx = cx + dx_of(d) * cell * 0.35;
        const double ty = cy - dy_of(d) * cell * 0.35;
        out += "<circle cx=\"" + format_double(tx) + "\" cy=\"" + format_double(ty) +
               "\" r=\"" + format_double(cell * 0.1) + "\" fill=\"" +
               detail::face_colour_palette(c) + "\"/>\n";
      }
    }
  }

  if (spec.circle_overlay) {
    const double n = static_cast<double>(structure.placements.size());
    const double radius = 0.5 * std::sqrt(n / 3.14159265358979323846) * cell;
    // centred on the seed cell's centre
    out += "<circle cx=\"" + format_double(sx(0) + cell / 2) + "\" cy=\"" +
           format_double(sy(0) + cell / 2) + "\" r=\"" + format_double(radius) +
           "\" fill=\"none\" stroke=\"#d02020\" stroke-width=\"" + format_double(cell * 0.08) +
           "\" stroke-dasharray=\"" + format_double(cell * 0.3) + "\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace tilesim
