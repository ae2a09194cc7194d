#include "oriperc/reach.hpp"

#include <stdexcept>

namespace oriperc {

namespace {

// UseArc(edge_idx, forward_needed) -> arc present; IsTarget(site_idx) -> done.
template <class UseArc, class IsTarget>
int bfs(const RegionGeometry& geo, int src, ReachScratch& sc, UseArc&& use, IsTarget&& is_target) {
  sc.prepare(geo.site_count());
  if (is_target(src)) {
    sc.parent[src] = -1;
    return src;
  }
  int head = 0, tail = 0;
  sc.mark[src] = sc.epoch;
  sc.parent[src] = -1;
  sc.queue[tail++] = src;
  while (head < tail) {
    int v = sc.queue[head++];
    for (const auto& oa : geo.out_arcs(v)) {
      if (sc.mark[oa.to] == sc.epoch) continue;
      if (!use(oa.edge, oa.forward)) continue;
      sc.mark[oa.to] = sc.epoch;
      sc.parent[oa.to] = v;
      if (is_target(oa.to)) return oa.to;
      sc.queue[tail++] = oa.to;
    }
  }
  return -1;
}

std::vector<Site> rebuild(const RegionGeometry& geo, const ReachScratch& sc, int hit) {
  std::vector<Site> path;
  for (int v = hit; v != -1; v = sc.parent[v]) path.push_back(geo.sites()[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

template <class UseArc>
std::optional<std::vector<Site>> reach_impl(const RegionGeometry& geo, const Site& source,
                                            std::span<const Site> targets, UseArc&& use) {
  int src = geo.site_index(source);
  if (src < 0) throw std::invalid_argument("reach source outside region");
  ReachScratch sc;
  sc.prepare(geo.site_count());
  for (const Site& t : targets) {
    int ti = geo.site_index(t);
    if (ti >= 0) sc.tmark[ti] = sc.epoch;
  }
  int epoch = sc.epoch;
  int hit = bfs(geo, src, sc, use, [&](int v) { return sc.tmark[v] == epoch; });
  if (hit < 0) return std::nullopt;
  return rebuild(geo, sc, hit);
}

bool shell_hit(const RegionGeometry& geo, int v) {
  const Site& s = geo.sites()[v];
  int n = geo.region().radius();
  int cheb = geo.region().kind() == Region::Kind::QuadrantBox
                 ? std::max(s.x, s.y)
                 : std::max(std::abs(s.x), std::abs(s.y));
  return cheb == n;
}

}  // namespace

std::optional<std::vector<Site>> reach(const Config& c, const Site& source,
                                       std::span<const Site> targets) {
  return reach_impl(c.geometry(), source, targets,
                    [&](int e, uint8_t fwd) { return c.forward(e) == static_cast<bool>(fwd); });
}

std::optional<std::vector<Site>> reach(const ArcSet& s, const Site& source,
                                       std::span<const Site> targets) {
  return reach_impl(s.geometry(), source, targets,
                    [&](int e, uint8_t fwd) { return s.has(e, fwd); });
}

bool reaches_shell(const Config& c, ReachScratch& sc, bool outward_only) {
  const RegionGeometry& geo = c.geometry();
  int src = geo.site_index(Site{0, 0, 0});
  if (src < 0) throw std::invalid_argument("origin outside region");
  auto is_target = [&](int v) { return shell_hit(geo, v); };
  int hit;
  if (outward_only) {
    hit = bfs(geo, src, sc,
              [&](int e, uint8_t fwd) {
                return c.forward(e) == static_cast<bool>(fwd) &&
                       outward_is_forward(geo.edge(e)) == static_cast<bool>(fwd);
              },
              is_target);
  } else {
    hit = bfs(geo, src, sc,
              [&](int e, uint8_t fwd) { return c.forward(e) == static_cast<bool>(fwd); },
              is_target);
  }
  return hit >= 0;
}

bool reaches_shell(const ArcSet& s, ReachScratch& sc) {
  const RegionGeometry& geo = s.geometry();
  int src = geo.site_index(Site{0, 0, 0});
  if (src < 0) throw std::invalid_argument("origin outside region");
  int hit = bfs(geo, src, sc, [&](int e, uint8_t fwd) { return s.has(e, fwd); },
                [&](int v) { return shell_hit(geo, v); });
  return hit >= 0;
}

}  // namespace oriperc
