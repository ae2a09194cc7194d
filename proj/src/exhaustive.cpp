#include "oriperc/exhaustive.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "oriperc/dual_events.hpp"
#include "oriperc/model.hpp"
#include "oriperc/reach.hpp"

namespace oriperc {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

constexpr uint64_t kBlock = 4096;

}  // namespace

EventProbability exhaustive_probability(const ModelSpec& model, const Region& region,
                                        const EventFactory& make_event, int threads) {
  auto geo = shared_geometry(region);
  const int ne = geo->edge_count();
  if (ne > 24) throw std::invalid_argument("exhaustive_probability: region exceeds 24 edges");

  // orientation bit = coin ^ flip, so a coin word maps to a bit word cheaply
  uint64_t flip_mask = 0;
  for (int i = 0; i < ne; ++i)
    if (!orient(model, geo->edges()[i], true).forward) flip_mask |= 1ull << i;

  // weight of a coin word depends only on its popcount
  std::vector<double> weight(ne + 1);
  for (int k = 0; k <= ne; ++k)
    weight[k] = std::pow(model.p, k) * std::pow(1.0 - model.p, ne - k);

  const uint64_t total = 1ull << ne;
  const uint64_t nblocks = (total + kBlock - 1) / kBlock;
  std::vector<double> block_sums(nblocks, 0.0);

  auto worker = [&](uint64_t b0, uint64_t b1) {
    EventFn event = make_event();
    Config c(geo, model, BitVec(ne));
    for (uint64_t b = b0; b < b1; ++b) {
      double sum = 0.0;
      const uint64_t m0 = b * kBlock;
      const uint64_t m1 = std::min(total, m0 + kBlock);
      for (uint64_t coins = m0; coins < m1; ++coins) {
        const uint64_t bits = coins ^ flip_mask;
        for (int i = 0; i < ne; ++i) c.set_forward(i, bits >> i & 1);
        if (event(c)) sum += weight[std::popcount(coins)];
      }
      block_sums[b] = sum;
    }
  };

  const int nw = std::min<uint64_t>(resolve_threads(threads), nblocks);
  if (nw <= 1) {
    worker(0, nblocks);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) {
      const uint64_t b0 = nblocks * t / nw, b1 = nblocks * (t + 1) / nw;
      pool.emplace_back(worker, b0, b1);
    }
    for (auto& th : pool) th.join();
  }

  // fixed-order reduction keeps the result identical for every thread count
  EventProbability out;
  for (double s : block_sums) out.probability += s;
  out.configurations = total;
  out.edges = ne;
  return out;
}

EventProbability exhaustive_probability(const ModelSpec& model, const Region& region,
                                        const EventFn& event) {
  return exhaustive_probability(model, region, [&]() { return event; }, 1);
}

EventFactory make_shell_reach_event() {
  return []() -> EventFn {
    auto sc = std::make_shared<ReachScratch>();
    return [sc](const Config& c) { return reaches_shell(c, *sc); };
  };
}

EventFactory make_reversed_shell_reach_event() {
  return []() -> EventFn {
    struct State {
      ReachScratch sc;
      std::optional<Config> rev;
    };
    auto st = std::make_shared<State>();
    return [st](const Config& c) {
      if (!st->rev) st->rev.emplace(c.geometry_ptr(), c.model(), BitVec(c.edge_count()));
      for (int i = 0; i < c.edge_count(); ++i) st->rev->set_forward(i, !c.forward(i));
      return reaches_shell(*st->rev, st->sc);
    };
  };
}

EventFactory make_bplus_event(int start_col, int inner, int outer) {
  return [=]() -> EventFn {
    std::shared_ptr<const DualGeometry> dgeo;
    auto dual = std::make_shared<std::optional<DualConfig>>();
    return [=](const Config& c) mutable {
      if (!*dual) *dual = DualConfig::dualize(c, DualVariant::U);
      (*dual)->redualize(c);
      return detect_b_plus(**dual, start_col, inner, outer).has_value();
    };
  };
}

EventFactory make_circuit_event(int orientation) {
  return [=]() -> EventFn {
    auto dual = std::make_shared<std::optional<DualConfig>>();
    return [=](const Config& c) {
      if (!*dual) *dual = DualConfig::dualize(c, DualVariant::U);
      (*dual)->redualize(c);
      return detect_circuit(**dual, orientation).has_value();
    };
  };
}

}  // namespace oriperc
