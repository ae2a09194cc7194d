#include "oriperc/slab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace oriperc {

namespace {

void require_middle(const Site& s, const char* what) {
  if (s.z != 0) throw std::invalid_argument(std::string(what) + ": site not in the middle plane");
}

// Arc from a to b where a,b differ by one unit step.
Arc step_arc(const Site& a, const Site& b) {
  if (b.x == a.x + 1) return {{a, Axis::X}, true};
  if (b.x == a.x - 1) return {{b, Axis::X}, false};
  if (b.y == a.y + 1) return {{a, Axis::Y}, true};
  if (b.y == a.y - 1) return {{b, Axis::Y}, false};
  if (b.z == a.z + 1) return {{a, Axis::Z}, true};
  if (b.z == a.z - 1) return {{b, Axis::Z}, false};
  throw std::invalid_argument("step_arc: sites not adjacent");
}

}  // namespace

AuxPath aux_path(const Site& source, int dx, int dy) {
  require_middle(source, "aux_path");
  if (std::abs(dx) + std::abs(dy) != 1) throw std::invalid_argument("aux_path: bad direction");
  const int zp = is_black(source) ? 1 : -1;
  const Site lifted{source.x, source.y, zp};
  const Site across{source.x + dx, source.y + dy, zp};
  const Site head{source.x + dx, source.y + dy, 0};
  return {source, head, {step_arc(source, lifted), step_arc(lifted, across), step_arc(across, head)}};
}

std::array<AuxPath, 4> aux_paths(const Site& source) {
  return {aux_path(source, 1, 0), aux_path(source, -1, 0), aux_path(source, 0, 1),
          aux_path(source, 0, -1)};
}

AvailabilityMap::AvailabilityMap(std::shared_ptr<const RegionGeometry> geo,
                                 std::vector<uint8_t> state)
    : geo_(std::move(geo)), state_(std::move(state)) {
  if (state_.size() != static_cast<size_t>(geo_->edge_count()))
    throw std::invalid_argument("availability state count does not match edge count");
}

bool AvailabilityMap::available(const Arc& a) const {
  const int idx = geo_->edge_index(a.edge);
  return idx >= 0 && available(idx, a.forward);
}

namespace {

bool off_middle(const Edge& e) { return e.axis == Axis::Z || e.tail.z != 0; }

uint8_t avail_from_uniform(double u, double p) {
  // orientation is forward iff u < p; backward direction available iff
  // u >= p, forward direction available iff 2p-1 <= u < p, neither below
  if (u >= p) return static_cast<uint8_t>(Avail::Backward);
  if (u >= 2.0 * p - 1.0) return static_cast<uint8_t>(Avail::Forward);
  return static_cast<uint8_t>(Avail::Neither);
}

}  // namespace

CoupledSample sample_coupled(double p, const Region& slab_region, uint64_t seed) {
  return sample_coupled(p, shared_geometry(slab_region), seed);
}

CoupledSample sample_coupled(double p, std::shared_ptr<const RegionGeometry> geo,
                             uint64_t seed) {
  if (geo->region().kind() != Region::Kind::SlabBox)
    throw std::invalid_argument("sample_coupled needs a SlabBox region");
  if (!(p >= 0.5 && p <= 1.0))
    throw std::invalid_argument("sample_coupled needs p in [1/2, 1]");
  CoupledSample cs{Config::sample(ModelSpec::slab(p), geo, seed),
                   AvailabilityMap(geo, std::vector<uint8_t>(geo->edge_count(), 0))};
  resample_coupled(cs, seed);
  return cs;
}

void resample_coupled(CoupledSample& cs, uint64_t seed) {
  cs.config.resample(seed);
  const auto& geo = cs.config.geometry();
  const double p = cs.config.model().p;
  for (int i = 0; i < geo.edge_count(); ++i) {
    const Edge& e = geo.edges()[i];
    if (!off_middle(e)) {
      cs.avail.state_[i] = static_cast<uint8_t>(Avail::Neither);
      continue;
    }
    // same uniform that oriented the edge in Config::resample
    const double u = rng::unit(rng::prf(seed, sampling_key(e), rng::Stream::orient));
    cs.avail.state_[i] = avail_from_uniform(u, p);
  }
}

bool aux_arc_available(const AvailabilityMap& avail, const Site& source, int dx, int dy) {
  const AuxPath path = aux_path(source, dx, dy);
  for (const Arc& a : path.arcs)
    if (!avail.available(a)) return false;
  return true;
}

ArcSet enrich(const AvailabilityMap& avail, const Config& middle) {
  if (&avail.geometry() != &middle.geometry())
    throw std::invalid_argument("enrich: availability and config from different geometries");
  const Region& slab = middle.region();
  if (slab.kind() != Region::Kind::SlabBox)
    throw std::invalid_argument("enrich: inputs must live on a SlabBox");

  const Region plane = Region::box(slab.radius());
  auto pgeo = shared_geometry(plane);
  ArcSet out(pgeo, middle.model(), BitVec(pgeo->edge_count()), BitVec(pgeo->edge_count()));

  const auto& slab_geo = middle.geometry();
  for (int i = 0; i < pgeo->edge_count(); ++i) {
    const Edge& pe = pgeo->edges()[i];
    const Edge mid{{pe.tail.x, pe.tail.y, 0}, pe.axis};
    const int mi = slab_geo.edge_index(mid);
    // carried-over middle-plane orientation: exactly one arc per edge
    const bool fwd = middle.forward(mi);
    out.set(i, fwd, true);
    // auxiliary arcs, one candidate per direction of the edge
    const Site s2{pe.tail.x, pe.tail.y, 0};
    const Site h2{pe.head().x, pe.head().y, 0};
    const int dx = h2.x - s2.x, dy = h2.y - s2.y;
    if (aux_arc_available(avail, s2, dx, dy)) out.set(i, true, true);
    if (aux_arc_available(avail, h2, -dx, -dy)) out.set(i, false, true);
  }
  return out;
}

double rho(double p) {
  const double q = 1.0 - p;
  return q * q * q * p * p * p * p * p * p;
}

namespace {

// Availability-state probabilities per off-middle edge.
struct StateLaw {
  double pf, pb, pn;
};

StateLaw state_law(double p) { return {1.0 - p, 1.0 - p, 2.0 * p - 1.0}; }

// Local window of off-middle edges supporting a set of aux paths; maps each
// distinct edge to a small index for base-3 enumeration.
struct Window {
  std::vector<Edge> edges;
  std::map<Edge, int> index;

  int add(const Edge& e) {
    auto [it, fresh] = index.try_emplace(e, static_cast<int>(edges.size()));
    if (fresh) edges.push_back(e);
    return it->second;
  }
};

struct PathRef {
  std::array<int, 3> edge;
  std::array<bool, 3> forward;
};

PathRef add_path(Window& w, const AuxPath& p) {
  PathRef r;
  for (int k = 0; k < 3; ++k) {
    r.edge[k] = w.add(p.arcs[k].edge);
    r.forward[k] = p.arcs[k].forward;
  }
  return r;
}

bool path_on(const PathRef& r, const std::vector<uint8_t>& st) {
  for (int k = 0; k < 3; ++k) {
    const uint8_t need =
        static_cast<uint8_t>(r.forward[k] ? Avail::Forward : Avail::Backward);
    if (st[r.edge[k]] != need) return false;
  }
  return true;
}

// Probability-weighted enumeration of all 3^|window| availability states;
// calls visit(state, weight).
template <typename Visit>
void enumerate_states(const Window& w, double p, Visit visit) {
  const StateLaw law = state_law(p);
  const int m = static_cast<int>(w.edges.size());
  std::vector<uint8_t> st(m, 0);
  uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  for (uint64_t code = 0; code < total; ++code) {
    uint64_t c = code;
    double weight = 1.0;
    for (int i = 0; i < m; ++i) {
      const int digit = static_cast<int>(c % 3);
      c /= 3;
      st[i] = static_cast<uint8_t>(digit);
      weight *= digit == static_cast<int>(Avail::Neither)   ? law.pn
                : digit == static_cast<int>(Avail::Forward) ? law.pf
                                                            : law.pb;
    }
    visit(st, weight);
  }
}

// P(anchor arc's window-local part on AND the three competing indicators
// off) / P(three competing indicators off). `anchor` is the single shared
// edge-direction all four paths in the window have in common.
double shared_edge_conditional(double p, const Window& w, int anchor_edge, bool anchor_fwd,
                               const std::array<PathRef, 3>& others) {
  double num = 0.0, den = 0.0;
  enumerate_states(w, p, [&](const std::vector<uint8_t>& st, double weight) {
    bool all_off = true;
    for (const auto& o : others)
      if (path_on(o, st)) {
        all_off = false;
        break;
      }
    if (!all_off) return;
    den += weight;
    const uint8_t need =
        static_cast<uint8_t>(anchor_fwd ? Avail::Forward : Avail::Backward);
    if (st[anchor_edge] == need) num += weight;
  });
  if (den <= 0.0) throw std::domain_error("conditioning event has probability 0");
  return num / den;
}

struct DependencyPatch {
  AuxPath target;                    // s -> t in the +x direction
  std::array<AuxPath, 3> siblings;   // other directions out of s
  std::array<AuxPath, 3> incomers;   // other directions into t
};

DependencyPatch dependency_patch() {
  const Site s{0, 0, 0};
  const Site t{1, 0, 0};
  DependencyPatch d{aux_path(s, 1, 0),
                    {aux_path(s, -1, 0), aux_path(s, 0, 1), aux_path(s, 0, -1)},
                    {aux_path({2, 0, 0}, -1, 0), aux_path({1, 1, 0}, 0, -1),
                     aux_path({1, -1, 0}, 0, 1)}};
  for (const auto& in : d.incomers)
    if (!(in.head == t)) throw std::logic_error("dependency patch: incomer head mismatch");
  return d;
}

}  // namespace

ConditionalBound conditional_bound_check(double p, uint64_t samples, uint64_t seed) {
  if (!(p >= 0.5 && p <= 1.0))
    throw std::invalid_argument("conditional_bound_check needs p in [1/2, 1]");
  const DependencyPatch patch = dependency_patch();

  // The three blocks of the dependency patch touch disjoint edges: the
  // source block (source vertical + sibling edges), the crossing horizontal,
  // and the head block (head vertical + incomer edges). Conditioning
  // factorizes across blocks, so the exact conditional is
  // Q_source * (1-p) * Q_head.
  Window source_win;
  const PathRef target_src = add_path(source_win, patch.target);
  std::array<PathRef, 3> sib{};
  for (int k = 0; k < 3; ++k) sib[k] = add_path(source_win, patch.siblings[k]);
  const double q_source = shared_edge_conditional(p, source_win, target_src.edge[0],
                                                  target_src.forward[0], sib);

  Window head_win;
  const PathRef target_head = add_path(head_win, patch.target);
  std::array<PathRef, 3> inc{};
  for (int k = 0; k < 3; ++k) inc[k] = add_path(head_win, patch.incomers[k]);
  const double q_head = shared_edge_conditional(p, head_win, target_head.edge[2],
                                                target_head.forward[2], inc);

  ConditionalBound out;
  out.exact = q_source * (1.0 - p) * q_head;
  out.floor = rho(p);

  // rejection sampling over the full 15-edge patch
  Window patch_win;
  const PathRef tgt = add_path(patch_win, patch.target);
  std::array<PathRef, 6> deps{};
  for (int k = 0; k < 3; ++k) deps[k] = add_path(patch_win, patch.siblings[k]);
  for (int k = 0; k < 3; ++k) deps[3 + k] = add_path(patch_win, patch.incomers[k]);
  if (patch_win.edges.size() != 15)
    throw std::logic_error("dependency patch must span 15 edges");

  std::vector<uint8_t> st(patch_win.edges.size());
  uint64_t accepted = 0, hits = 0, proposals = 0;
  const uint64_t max_proposals = samples * 1000 + 1000;
  while (accepted < samples && proposals < max_proposals) {
    for (size_t i = 0; i < st.size(); ++i) {
      const double u =
          rng::unit(rng::prf(seed, proposals * 64 + i, rng::Stream::trial));
      st[i] = avail_from_uniform(u, p);
    }
    ++proposals;
    bool all_off = true;
    for (const auto& dref : deps)
      if (path_on(dref, st)) {
        all_off = false;
        break;
      }
    if (!all_off) continue;
    ++accepted;
    if (path_on(tgt, st)) ++hits;
  }
  if (accepted == 0) throw std::domain_error("conditioning event never sampled");
  out.mc = wilson_ci(hits, accepted, 0.95);
  out.proposals = proposals;
  return out;
}

bool positive_association_check(double p, double tol) {
  if (!(p >= 0.5 && p <= 1.0))
    throw std::invalid_argument("positive_association_check needs p in [1/2, 1]");
  Window w;
  std::array<PathRef, 4> paths{};
  const auto all = aux_paths({0, 0, 0});
  for (int k = 0; k < 4; ++k) paths[k] = add_path(w, all[k]);
  if (w.edges.size() != 9) throw std::logic_error("one-source window must span 9 edges");

  std::array<double, 16> joint{};  // P(all events in subset occur)
  enumerate_states(w, p, [&](const std::vector<uint8_t>& st, double weight) {
    unsigned on = 0;
    for (int k = 0; k < 4; ++k)
      if (path_on(paths[k], st)) on |= 1u << k;
    for (unsigned subset = 0; subset < 16; ++subset)
      if ((on & subset) == subset) joint[subset] += weight;
  });

  for (unsigned subset = 0; subset < 16; ++subset) {
    double product = 1.0;
    for (int k = 0; k < 4; ++k)
      if (subset >> k & 1) product *= joint[1u << k];
    if (joint[subset] < product - tol) return false;
  }
  return true;
}

std::optional<LiftedPath> lift_enriched_path(std::span<const Site> path2d, const Config& slab,
                                             const AvailabilityMap& avail) {
  if (path2d.empty()) return std::nullopt;
  const auto& geo = slab.geometry();
  LiftedPath out;
  out.sites.push_back({path2d[0].x, path2d[0].y, 0});
  for (size_t k = 1; k < path2d.size(); ++k) {
    const Site a{path2d[k - 1].x, path2d[k - 1].y, 0};
    const Site b{path2d[k].x, path2d[k].y, 0};
    const Arc mid = step_arc(a, b);
    const int mi = geo.edge_index(mid.edge);
    if (mi >= 0 && slab.forward(mi) == mid.forward) {
      out.sites.push_back(b);
      continue;
    }
    const AuxPath detour = aux_path(a, b.x - a.x, b.y - a.y);
    bool ok = true;
    for (const Arc& arc : detour.arcs) {
      const int ei = geo.edge_index(arc.edge);
      // availability must imply the true orientation on the coupled sample
      if (ei < 0 || !avail.available(ei, arc.forward) || slab.forward(ei) != arc.forward) {
        ok = false;
        break;
      }
    }
    if (!ok) return std::nullopt;
    Site cur = a;
    for (const Arc& arc : detour.arcs) {
      cur = arc.forward ? arc.edge.head() : arc.edge.tail;
      out.sites.push_back(cur);
    }
    ++out.aux_steps;
  }
  return out;
}

AuxPresence aux_presence_frequency(double p, int n, uint64_t min_candidates, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("aux_presence_frequency: n must be >= 2");
  auto geo = shared_geometry(Region::slab(n));
  CoupledSample cs = sample_coupled(p, geo, rng::derive(seed, 0, rng::Stream::sample));
  AuxPresence out;
  uint64_t sample_i = 0;
  // +x detours at distinct sources never share an edge (different planes for
  // the two colors, distinct verticals per site), so the indicators are
  // independent and the presence count is exactly binomial
  while (out.candidates < min_candidates) {
    resample_coupled(cs, rng::derive(seed, sample_i++, rng::Stream::sample));
    for (int x = -n; x < n && out.candidates < min_candidates; ++x) {
      for (int y = -n; y <= n && out.candidates < min_candidates; ++y) {
        ++out.candidates;
        if (aux_arc_available(cs.avail, {x, y, 0}, 1, 0)) ++out.present;
      }
    }
  }
  return out;
}

}  // namespace oriperc
