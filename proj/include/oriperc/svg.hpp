#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oriperc/config.hpp"

namespace oriperc {

struct RenderOptions {
  double cell = 28.0;  // pixels per lattice unit
  // Polyline in lattice coordinates drawn on top (a reach witness at integer
  // points, a dual cycle at half-integer points); empty = no overlay.
  std::vector<std::pair<double, double>> highlight;
};

// Self-contained SVG of one orientation configuration: every edge as an
// arrow in its sampled direction, sites as dots, the origin emphasised.
// Slab windows draw the middle plane only.
std::string render_svg(const Config& c, const RenderOptions& opt = {});

// Independent-arc variant; antiparallel pairs are offset sideways so both
// arrows stay visible, absent edges are omitted.
std::string render_svg(const ArcSet& s, const RenderOptions& opt = {});

}  // namespace oriperc
