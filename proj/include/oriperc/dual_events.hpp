#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "oriperc/dual.hpp"
#include "oriperc/reach.hpp"

namespace oriperc {

// Directed dual path from (a,0) to the column i = 0 at some row b >= 0,
// confined to dual indices i,j >= 0 and to the ring
// inner <= max(i,j) <= outer - 1. Pass outer < 0 for no outer bound. The
// start must itself satisfy the confinement (so a = 0 succeeds trivially).
// Returns the site sequence ending at the landing site (0, b).
std::optional<std::vector<DualSite>> detect_b_plus(const DualConfig& d, int start_col,
                                                   int inner, int outer);

struct CircuitWitness {
  std::vector<DualSite> cycle;  // closed walk; last->first arc is present too
  int winding = 0;              // +1 counterclockwise, -1 clockwise
  int anchor = -1;              // least a >= 0 with (a,0) on the cycle
};

// Directed dual cycle around the origin point. Every such cycle crosses the
// dual sites straddling the positive x axis, so the search seeds from the
// cut arcs {(a,-1)->(a,0), a>=0} (counterclockwise) or their reverses
// (clockwise) and closes through exactly one of them. orientation: +1
// counterclockwise only, -1 clockwise only, 0 either.
std::optional<CircuitWitness> detect_circuit(const DualConfig& d, int orientation);

// Net angle swept around the origin point along the closed walk, in turns.
double winding_number(const std::vector<DualSite>& cycle);

// Four-quadrant clockwise passage: start at (start_col, 0), cross the
// negative-x, negative-y and positive-x half-axes in order, and land back on
// the row j = 0 at some column >= 0. Landing set via full state search.
std::vector<int> four_leg_landings(const DualConfig& d, int start_col);

struct ExtremalLegs {
  bool found = false;
  int innermost = -1;  // smallest reachable landing column
  int outermost = -1;  // largest reachable landing column
  std::vector<DualSite> inner_path;  // witness passage for the innermost landing
};

ExtremalLegs extremal_legs(const DualConfig& d, int start_col);

struct Complementarity {
  bool primal_escape = false;   // origin reaches max(x,y) = n inside the window
  bool dual_blocking = false;   // U-dual path from row j = -1 to column i = -1
  // exactly one of the two must hold on every QuadrantBox configuration
  bool holds() const { return primal_escape != dual_blocking; }
};

Complementarity complementarity_check(const Config& c);

struct DualCheckRecord {
  uint64_t coins = 0;
  bool primal_escape = false;
  bool dual_blocking = false;
};

struct DualCheckSummary {
  uint64_t configurations = 0;
  uint64_t violations = 0;
  uint64_t primal_escapes = 0;
};

// Exhaustive complementarity scan over all orientation assignments of
// QuadrantBox(size). The sink, when set, sees every configuration.
DualCheckSummary run_dual_check(int size,
                                const std::function<void(const DualCheckRecord&)>& sink = {});

// Empirical fraction of U-dual arcs pointing away from the dual origin
// (n + 1/2, -1/2) under the outward model on QuadrantBox(n); every window
// dual edge points away with probability exactly 1 - p, so the away count is
// Binomial(arcs, 1-p). Resamples until at least min_arcs arcs are observed.
struct OutwardFrequency {
  uint64_t away = 0;
  uint64_t arcs = 0;
  double frequency() const { return arcs ? static_cast<double>(away) / arcs : 0.0; }
};

OutwardFrequency dual_outward_frequency(double p, int n, uint64_t min_arcs, uint64_t seed);

}  // namespace oriperc
