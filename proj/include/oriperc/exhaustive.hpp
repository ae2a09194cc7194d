#pragma once

#include <functional>

#include "oriperc/config.hpp"

namespace oriperc {

struct EventProbability {
  double probability = 0.0;
  uint64_t configurations = 0;
  int edges = 0;
};

using EventFn = std::function<bool(const Config&)>;
// One event instance per worker thread, so stateful callables (BFS scratch)
// stay thread confined.
using EventFactory = std::function<EventFn()>;

// Exact event probability by full enumeration of the 2^E orientation
// assignments, each weighted p^k (1-p)^(E-k) by its coin pattern. Capped at
// 24 edges. The reduction sums fixed 4096-configuration blocks in block
// order, so the result is bit identical for every thread count.
EventProbability exhaustive_probability(const ModelSpec& model, const Region& region,
                                        const EventFactory& make_event, int threads = 1);
EventProbability exhaustive_probability(const ModelSpec& model, const Region& region,
                                        const EventFn& event);

// Ready-made events for the enumerator and the samplers.
EventFactory make_shell_reach_event();           // origin escapes to the region shell
EventFactory make_reversed_shell_reach_event();  // same, on the arc-reversed configuration
EventFactory make_bplus_event(int start_col, int inner, int outer);
EventFactory make_circuit_event(int orientation);  // +1 ccw, -1 cw, 0 either

}  // namespace oriperc
