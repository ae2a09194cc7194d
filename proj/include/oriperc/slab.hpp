#pragma once

#include <array>
#include <optional>

#include "oriperc/config.hpp"
#include "oriperc/estimators.hpp"

namespace oriperc {

// Chess coloring of the middle plane: detour plane is +1 for black sources,
// -1 for white, which keeps differently colored sources edge-disjoint.
constexpr bool is_black(const Site& s) { return ((s.x + s.y) & 1) == 0; }

// Three-arc detour realizing a middle-plane step through an outer plane:
// up/down at the source, across, down/up at the head.
struct AuxPath {
  Site source;               // z = 0
  Site head;                 // z = 0, one plane step away
  std::array<Arc, 3> arcs;   // vertical, horizontal, vertical
};

// The four candidate detours (+x, -x, +y, -y) from a middle-plane site.
std::array<AuxPath, 4> aux_paths(const Site& source);
AuxPath aux_path(const Site& source, int dx, int dy);

enum class Avail : uint8_t { Neither = 0, Forward = 1, Backward = 2 };

// Sub-coupling state of the off-middle-plane edges: each direction is
// available with probability 1-p, and an available direction always agrees
// with the coupled configuration's true orientation. Middle-plane edges
// carry no state.
class AvailabilityMap {
 public:
  AvailabilityMap(std::shared_ptr<const RegionGeometry> geo, std::vector<uint8_t> state);

  const RegionGeometry& geometry() const { return *geo_; }
  std::shared_ptr<const RegionGeometry> geometry_ptr() const { return geo_; }
  Avail state(int edge_idx) const { return static_cast<Avail>(state_[edge_idx]); }
  bool available(int edge_idx, bool forward) const {
    return state_[edge_idx] == static_cast<uint8_t>(forward ? Avail::Forward : Avail::Backward);
  }
  bool available(const Arc& a) const;

 private:
  std::shared_ptr<const RegionGeometry> geo_;
  std::vector<uint8_t> state_;  // per edge
  friend void resample_coupled(struct CoupledSample& cs, uint64_t seed);
};

struct CoupledSample {
  Config config;
  AvailabilityMap avail;
};

// One uniform per off-middle edge drives both outputs: orientation backward
// iff Y <= 1-p; backward available iff Y <= 1-p, forward available iff
// 1-p < Y <= 2-2p, neither above. The config marginal is exactly the plain
// slab sample for the same seed.
CoupledSample sample_coupled(double p, const Region& slab_region, uint64_t seed);
CoupledSample sample_coupled(double p, std::shared_ptr<const RegionGeometry> geo, uint64_t seed);
void resample_coupled(CoupledSample& cs, uint64_t seed);

// Middle-plane arc process: the Grimmett-oriented middle arcs plus one
// auxiliary arc per (source, direction) whose three-arc detour is fully
// available. Region of the result is the planar Box of the slab radius;
// sources whose detour leaves the slab window contribute nothing.
ArcSet enrich(const AvailabilityMap& avail, const Config& middle);

// True when every arc of the detour is available.
bool aux_arc_available(const AvailabilityMap& avail, const Site& source, int dx, int dy);

// (1-p)^3 p^6: the conditional floor for one auxiliary arc given its six
// edge-sharing neighbors.
double rho(double p);

struct ConditionalBound {
  double exact = 0.0;      // from the two 9-edge window enumerations
  double floor = 0.0;      // rho(p)
  Estimate mc;             // rejection-sampling estimate of the same quantity
  uint64_t proposals = 0;  // rejection sampling effort
};

// P(auxiliary arc present | its 6 dependent indicators all absent), exactly
// via 3^9 availability-state enumeration per window, plus a Monte Carlo
// rejection estimate on the 15-edge dependency patch.
ConditionalBound conditional_bound_check(double p, uint64_t samples, uint64_t seed);

// Exact check of P(intersection of A_i) >= product P(A_i) over every subset
// of the four detour events at one source, via one 3^9 enumeration.
bool positive_association_check(double p, double tol = 1e-12);

// Replaces every auxiliary step of a middle-plane path by its detour and
// validates each arc against the coupled sample; nullopt when some step is
// neither a present middle arc nor a fully available detour.
struct LiftedPath {
  std::vector<Site> sites;  // 3D walk, z in {-1,0,1}
  int aux_steps = 0;
};
std::optional<LiftedPath> lift_enriched_path(std::span<const Site> path2d, const Config& slab,
                                             const AvailabilityMap& avail);

// Empirical detour-presence frequency over the +x detour family. Any two
// distinct sources route their +x detours through disjoint edge sets
// (neighbouring sources use opposite outer planes, and head verticals point
// back down while source verticals point up), so the presence indicators are
// independent Bernoulli((1-p)^3) and the count is exactly binomial.
struct AuxPresence {
  uint64_t present = 0;
  uint64_t candidates = 0;
  double frequency() const {
    return candidates ? static_cast<double>(present) / candidates : 0.0;
  }
};
AuxPresence aux_presence_frequency(double p, int n, uint64_t min_candidates, uint64_t seed);

}  // namespace oriperc
