#include "oriperc/dual_events.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "oriperc/model.hpp"

namespace oriperc {

namespace {

// Epoch-stamped BFS scratch over dual sites; reused across calls on the hot
// sampling paths.
struct DualScratch {
  std::vector<uint32_t> mark;
  std::vector<int32_t> parent_site;
  std::vector<int32_t> queue;
  uint32_t epoch = 0;

  void prepare(int nsites) {
    if (static_cast<int>(mark.size()) < nsites) {
      mark.assign(nsites, 0);
      parent_site.assign(nsites, -1);
      epoch = 0;
    }
    ++epoch;
    if (epoch == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      epoch = 1;
    }
    queue.clear();
  }
};

DualScratch& scratch() {
  thread_local DualScratch sc;
  return sc;
}

bool is_cut_edge(const DualEdge& e) {
  return e.axis == Axis::Y && e.tail.j == -1 && e.tail.i >= 0;
}

// BFS over present dual arcs restricted by an admissibility predicate on
// sites; returns the first admissible site satisfying the goal, or -1.
template <typename Admit, typename Goal, typename SkipEdge>
int dual_bfs(const DualConfig& d, int src, DualScratch& sc, Admit admit, Goal goal,
             SkipEdge skip_edge) {
  const auto& g = d.geometry();
  sc.prepare(g.site_count());
  if (!admit(g.sites()[src])) return -1;
  sc.mark[src] = sc.epoch;
  sc.parent_site[src] = -1;
  if (goal(g.sites()[src])) return src;
  sc.queue.push_back(src);
  for (size_t qi = 0; qi < sc.queue.size(); ++qi) {
    const int v = sc.queue[qi];
    for (const auto& oa : g.out_arcs(v)) {
      if (d.forward(oa.edge) != static_cast<bool>(oa.forward)) continue;
      if (skip_edge(oa.edge)) continue;
      const int w = oa.to;
      if (sc.mark[w] == sc.epoch) continue;
      if (!admit(g.sites()[w])) continue;
      sc.mark[w] = sc.epoch;
      sc.parent_site[w] = v;
      if (goal(g.sites()[w])) return w;
      sc.queue.push_back(w);
    }
  }
  return -1;
}

std::vector<DualSite> rebuild_path(const DualGeometry& g, const DualScratch& sc, int hit) {
  std::vector<DualSite> path;
  for (int v = hit; v >= 0; v = sc.parent_site[v]) path.push_back(g.sites()[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<std::vector<DualSite>> detect_b_plus(const DualConfig& d, int start_col,
                                                   int inner, int outer) {
  if (start_col < 0 || inner < 0) throw std::invalid_argument("detect_b_plus: negative bound");
  const auto& g = d.geometry();
  const int src = g.site_index({start_col, 0});
  if (src < 0) throw std::invalid_argument("detect_b_plus: start outside dual window");
  auto admit = [&](const DualSite& s) {
    const int r = std::max(s.i, s.j);
    return s.i >= 0 && s.j >= 0 && r >= inner && (outer < 0 || r <= outer - 1);
  };
  auto goal = [](const DualSite& s) { return s.i == 0; };
  auto& sc = scratch();
  const int hit = dual_bfs(d, src, sc, admit, goal, [](int) { return false; });
  if (hit < 0) return std::nullopt;
  return rebuild_path(g, sc, hit);
}

double winding_number(const std::vector<DualSite>& cycle) {
  double total = 0.0;
  const size_t n = cycle.size();
  for (size_t k = 0; k < n; ++k) {
    const auto [ax, ay] = dual_point(cycle[k]);
    const auto [bx, by] = dual_point(cycle[(k + 1) % n]);
    total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return total / (2.0 * std::acos(-1.0));
}

std::optional<CircuitWitness> detect_circuit(const DualConfig& d, int orientation) {
  const auto& g = d.geometry();
  auto admit = [](const DualSite&) { return true; };
  auto try_orientation = [&](bool ccw) -> std::optional<CircuitWitness> {
    for (int e = 0; e < g.edge_count(); ++e) {
      const DualEdge& de = g.edges()[e];
      if (!is_cut_edge(de)) continue;
      // counterclockwise cycles cross the cut northward, clockwise southward
      if (d.forward(e) != ccw) continue;
      const DualSite from = ccw ? de.head() : de.tail;
      const DualSite to = ccw ? de.tail : de.head();
      const int src = g.site_index(from);
      const int dst_site = g.site_index(to);
      if (src < 0 || dst_site < 0) continue;
      auto& sc = scratch();
      auto goal = [&](const DualSite& s) { return s == to; };
      auto skip_cut = [&](int edge_idx) { return is_cut_edge(g.edges()[edge_idx]); };
      const int hit = dual_bfs(d, src, sc, admit, goal, skip_cut);
      if (hit < 0) continue;
      CircuitWitness w;
      w.cycle = rebuild_path(g, sc, hit);
      w.winding = ccw ? 1 : -1;
      w.anchor = INT32_MAX;
      for (const auto& s : w.cycle)
        if (s.j == 0 && s.i >= 0) w.anchor = std::min(w.anchor, s.i);
      if (w.anchor == INT32_MAX) w.anchor = -1;
      return w;
    }
    return std::nullopt;
  };
  if (orientation >= 0) {
    if (auto w = try_orientation(true)) return w;
  }
  if (orientation <= 0) {
    if (auto w = try_orientation(false)) return w;
  }
  return std::nullopt;
}

namespace {

// quadrant membership per stage; crossings of the half axes advance the stage
bool leg_in_stage(const DualSite& s, int stage) {
  switch (stage) {
    case 0: return s.i >= 0 && s.j >= 0;
    case 1: return s.i <= -1 && s.j >= 0;
    case 2: return s.i <= -1 && s.j <= -1;
    case 3: return s.i >= 0 && s.j <= -1;
    default: return false;
  }
}

// stage transition carried by the arc from -> to, if any; 4 = landed
int leg_crossing(const DualSite& from, const DualSite& to, int stage) {
  if (stage == 0 && from.i == 0 && to.i == -1 && from.j == to.j && from.j >= 0) return 1;
  if (stage == 1 && from.j == 0 && to.j == -1 && from.i == to.i && from.i <= -1) return 2;
  if (stage == 2 && from.i == -1 && to.i == 0 && from.j == to.j && from.j <= -1) return 3;
  if (stage == 3 && from.j == -1 && to.j == 0 && from.i == to.i && from.i >= 0) return 4;
  return -1;
}

struct LegSearch {
  std::vector<int> landings;            // sorted landing columns
  std::vector<int32_t> parent;          // per state = site*4 + stage
  std::vector<int32_t> landing_parent;  // per landing column entry, final stage-3 state
};

LegSearch four_leg_search(const DualConfig& d, int start_col) {
  if (start_col < 0) throw std::invalid_argument("four_leg search: start_col < 0");
  const auto& g = d.geometry();
  const int src = g.site_index({start_col, 0});
  if (src < 0) throw std::invalid_argument("four_leg search: start outside dual window");

  const int ns = g.site_count();
  LegSearch out;
  out.parent.assign(static_cast<size_t>(ns) * 4, -2);  // -2 unseen, -1 root
  std::vector<int32_t> queue;
  std::vector<std::pair<int, int32_t>> landed;  // column -> predecessor state
  if (!leg_in_stage(g.sites()[src], 0)) return out;
  out.parent[src * 4 + 0] = -1;
  queue.push_back(src * 4 + 0);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const int state = queue[qi];
    const int v = state / 4, stage = state % 4;
    const DualSite sv = g.sites()[v];
    for (const auto& oa : g.out_arcs(v)) {
      if (d.forward(oa.edge) != static_cast<bool>(oa.forward)) continue;
      const DualSite sw = g.sites()[oa.to];
      const int next = leg_crossing(sv, sw, stage);
      if (next == 4) {
        landed.push_back({sw.i, state});
        continue;
      }
      int nstage;
      if (next > 0) {
        nstage = next;
      } else if (leg_in_stage(sw, stage)) {
        nstage = stage;
      } else {
        continue;
      }
      const int wstate = oa.to * 4 + nstage;
      if (out.parent[wstate] != -2) continue;
      out.parent[wstate] = state;
      queue.push_back(wstate);
    }
  }
  std::sort(landed.begin(), landed.end());
  for (const auto& [col, pred] : landed) {
    if (!out.landings.empty() && out.landings.back() == col) continue;
    out.landings.push_back(col);
    out.landing_parent.push_back(pred);
  }
  return out;
}

}  // namespace

std::vector<int> four_leg_landings(const DualConfig& d, int start_col) {
  return four_leg_search(d, start_col).landings;
}

ExtremalLegs extremal_legs(const DualConfig& d, int start_col) {
  const auto& g = d.geometry();
  const LegSearch search = four_leg_search(d, start_col);
  ExtremalLegs out;
  if (search.landings.empty()) return out;
  out.found = true;
  out.innermost = search.landings.front();
  out.outermost = search.landings.back();
  // witness for the innermost landing: walk parents back to the root
  out.inner_path.push_back({out.innermost, 0});
  for (int state = search.landing_parent.front(); state >= 0; state = search.parent[state])
    out.inner_path.push_back(g.sites()[state / 4]);
  std::reverse(out.inner_path.begin(), out.inner_path.end());
  return out;
}

Complementarity complementarity_check(const Config& c) {
  if (c.region().kind() != Region::Kind::QuadrantBox)
    throw std::invalid_argument("complementarity_check needs a QuadrantBox region");
  Complementarity out;
  ReachScratch rs;
  out.primal_escape = reaches_shell(c, rs);

  const auto dgeo = shared_dual_geometry(c.geometry_ptr());
  DualConfig d = DualConfig::dualize(c, DualVariant::U, dgeo);
  const int n = c.region().radius();
  auto admit = [](const DualSite&) { return true; };
  auto goal = [](const DualSite& s) { return s.i == -1; };
  auto& sc = scratch();
  for (int a = 0; a + 1 <= n && !out.dual_blocking; ++a) {
    const int src = dgeo->site_index({a, -1});
    if (src < 0) continue;
    if (dual_bfs(d, src, sc, admit, goal, [](int) { return false; }) >= 0)
      out.dual_blocking = true;
  }
  return out;
}

DualCheckSummary run_dual_check(int size,
                                const std::function<void(const DualCheckRecord&)>& sink) {
  if (size < 1) throw std::invalid_argument("run_dual_check: size must be >= 1");
  const Region region = Region::quadrant(size);
  auto geo = shared_geometry(region);
  const int ne = geo->edge_count();
  if (ne > 20) throw std::invalid_argument("run_dual_check: window exceeds 20 edges");

  const ModelSpec model = ModelSpec::ne(0.5);
  Config c(geo, model, BitVec(ne));
  const auto dgeo = shared_dual_geometry(geo);
  DualConfig d = DualConfig::dualize(c, DualVariant::U, dgeo);
  ReachScratch rs;
  auto& sc = scratch();
  auto admit = [](const DualSite&) { return true; };
  auto goal = [](const DualSite& s) { return s.i == -1; };

  DualCheckSummary out;
  const uint64_t total = 1ull << ne;
  for (uint64_t coins = 0; coins < total; ++coins) {
    // NE quadrant: coin true = forward, so the coin word is the bit word
    for (int i = 0; i < ne; ++i) c.set_forward(i, coins >> i & 1);
    d.redualize(c);
    const bool primal = reaches_shell(c, rs);
    bool dual = false;
    for (int a = 0; a + 1 <= size && !dual; ++a) {
      const int src = dgeo->site_index({a, -1});
      if (src >= 0 && dual_bfs(d, src, sc, admit, goal, [](int) { return false; }) >= 0)
        dual = true;
    }
    ++out.configurations;
    if (primal) ++out.primal_escapes;
    if (primal == dual) ++out.violations;
    if (sink) sink({coins, primal, dual});
  }
  return out;
}

OutwardFrequency dual_outward_frequency(double p, int n, uint64_t min_arcs, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("dual_outward_frequency: n must be >= 1");
  const Region region = Region::quadrant(n);
  auto geo = shared_geometry(region);
  const ModelSpec model = ModelSpec::h(p);
  Config c = Config::sample(model, geo, rng::derive(seed, 0, rng::Stream::sample));
  const auto dgeo = shared_dual_geometry(geo);
  DualConfig d = DualConfig::dualize(c, DualVariant::U, dgeo);

  // dual origin is the point (n + 1/2, -1/2), i.e. index (n, -1)
  const double ox = n + 0.5, oy = -0.5;
  OutwardFrequency out;
  uint64_t produced = 0;
  uint64_t sample_i = 0;
  while (produced < min_arcs) {
    c.resample(rng::derive(seed, sample_i++, rng::Stream::sample));
    d.redualize(c);
    for (int e = 0; e < d.edge_count() && produced < min_arcs; ++e) {
      const DualEdge& de = d.geometry().edges()[e];
      const auto [tx, ty] = dual_point(de.tail);
      const auto [hx, hy] = dual_point(de.head());
      const bool fwd = d.forward(e);
      const double fx = fwd ? tx : hx, fy = fwd ? ty : hy;
      const double gx = fwd ? hx : tx, gy = fwd ? hy : ty;
      const double df = (fx - ox) * (fx - ox) + (fy - oy) * (fy - oy);
      const double dg = (gx - ox) * (gx - ox) + (gy - oy) * (gy - oy);
      ++produced;
      ++out.arcs;
      if (dg > df) ++out.away;
    }
  }
  return out;
}

}  // namespace oriperc
