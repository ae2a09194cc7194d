#pragma once

#include <optional>
#include <span>
#include <vector>

#include "oriperc/config.hpp"

namespace oriperc {

// Reusable BFS work space; epoch stamping avoids per-sample clears.
class ReachScratch {
 public:
  std::vector<int32_t> mark, queue, parent, tmark;
  int32_t epoch = 0;
  void prepare(int nsites) {
    if (static_cast<int>(mark.size()) < nsites) {
      mark.assign(nsites, 0);
      tmark.assign(nsites, 0);
      parent.assign(nsites, -1);
      queue.resize(nsites);
      epoch = 0;
    }
    ++epoch;
  }
};

// Breadth-first search over present arcs; a returned path has minimum arc
// count. nullopt when no target is reachable.
std::optional<std::vector<Site>> reach(const Config& c, const Site& source,
                                       std::span<const Site> targets);
std::optional<std::vector<Site>> reach(const ArcSet& s, const Site& source,
                                       std::span<const Site> targets);

// Fast origin-to-outer-shell test used by the estimators. outward_only
// restricts the walk to arcs pointing away from the origin (H-model
// monotonicity statistic).
bool reaches_shell(const Config& c, ReachScratch& sc, bool outward_only = false);
bool reaches_shell(const ArcSet& s, ReachScratch& sc);

}  // namespace oriperc
