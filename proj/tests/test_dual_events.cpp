#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oriperc/dual_events.hpp"
#include "oriperc/exhaustive.hpp"

using namespace oriperc;

// Test-side re-derivation of the rotated dual, kept deliberately naive and
// structurally independent of the library's dual indexing: arcs are pairs of
// dual index points obtained by rotating each present primal arc -90 degrees
// around its crossing point.
namespace oracle {

struct P {
  int i, j;
  friend auto operator<=>(const P&, const P&) = default;
};

using Arcs = std::map<P, std::vector<P>>;

Arcs u_arcs(const Config& c) {
  Arcs adj;
  const auto& g = c.geometry();
  for (size_t k = 0; k < g.edges().size(); ++k) {
    const Edge& e = g.edges()[k];
    const bool fwd = c.forward(static_cast<int>(k));
    if (e.axis == Axis::X) {
      const P below{e.tail.x, e.tail.y - 1}, above{e.tail.x, e.tail.y};
      if (fwd)
        adj[above].push_back(below);  // east -> south
      else
        adj[below].push_back(above);  // west -> north
    } else {
      const P left{e.tail.x - 1, e.tail.y}, right{e.tail.x, e.tail.y};
      if (fwd)
        adj[left].push_back(right);  // north -> east
      else
        adj[right].push_back(left);  // south -> west
    }
  }
  return adj;
}

bool bplus(const Config& c, int a, int inner, int outer) {
  const Arcs adj = u_arcs(c);
  auto ok = [&](const P& s) {
    const int r = std::max(s.i, s.j);
    return s.i >= 0 && s.j >= 0 && r >= inner && (outer < 0 || r <= outer - 1);
  };
  const P src{a, 0};
  if (!ok(src)) return false;
  std::set<P> seen{src};
  std::vector<P> st{src};
  while (!st.empty()) {
    const P v = st.back();
    st.pop_back();
    if (v.i == 0) return true;
    auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (const P& w : it->second)
      if (ok(w) && seen.insert(w).second) st.push_back(w);
  }
  return false;
}

double turn(const std::vector<P>& cyc) {
  double tot = 0.0;
  for (size_t k = 0; k < cyc.size(); ++k) {
    const double ax = cyc[k].i + 0.5, ay = cyc[k].j + 0.5;
    const double bx = cyc[(k + 1) % cyc.size()].i + 0.5, by = cyc[(k + 1) % cyc.size()].j + 0.5;
    tot += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return tot / (2.0 * std::acos(-1.0));
}

// any simple directed cycle whose winding around the origin point rounds to
// the requested sign, by exhaustive DFS cycle enumeration
bool has_cycle(const Arcs& adj, int sign) {
  std::vector<P> path;
  std::set<P> on_path;
  bool found = false;
  auto dfs = [&](auto&& self, const P& start, const P& v) -> void {
    if (found) return;
    auto it = adj.find(v);
    if (it == adj.end()) return;
    for (const P& w : it->second) {
      if (found) return;
      if (w == start && path.size() >= 4) {
        const double t = turn(path);
        if (std::lround(t) == sign && std::fabs(t - std::lround(t)) < 1e-9) {
          found = true;
          return;
        }
      }
      if (w > start || w == start) continue;  // cycles rooted at their max node
      if (on_path.insert(w).second) {
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        on_path.erase(w);
      }
    }
  };
  for (const auto& [s, _] : adj) {
    path.assign(1, s);
    on_path = {s};
    dfs(dfs, s, s);
    if (found) return true;
  }
  return false;
}

bool has_cycle(const Config& c, int sign) { return has_cycle(u_arcs(c), sign); }

}  // namespace oracle

TEST_CASE("confined dual passage: exact probabilities on the small quadrant") {
  // frozen independent enumeration values at p = 1/2
  const Region quad2 = Region::quadrant(2);
  const EventProbability from_col1 =
      exhaustive_probability(ModelSpec::h(0.5), quad2, make_bplus_event(1, 0, 2));
  CHECK(from_col1.probability == doctest::Approx(0.625).epsilon(1e-12));
  const EventProbability from_col0 =
      exhaustive_probability(ModelSpec::h(0.5), quad2, make_bplus_event(0, 0, 2));
  CHECK(from_col0.probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("confined dual passage agrees with the naive oracle sample by sample") {
  auto geo = shared_geometry(Region::quadrant(4));
  Config c = Config::sample(ModelSpec::h(0.5), geo, 1);
  for (int rep = 0; rep < 300; ++rep) {
    c.resample(5000 + rep);
    const DualConfig d = DualConfig::dualize(c, DualVariant::U);
    for (int a : {0, 1, 2, 3}) {
      for (auto [inner, outer] : {std::pair{0, -1}, {0, 4}, {1, 4}, {2, 3}}) {
        const bool lib = detect_b_plus(d, a, inner, outer).has_value();
        CHECK(lib == oracle::bplus(c, a, inner, outer));
      }
    }
  }
}

TEST_CASE("confined dual passage returns a usable witness") {
  auto geo = shared_geometry(Region::quadrant(4));
  Config c = Config::sample(ModelSpec::h(0.35), geo, 2);
  int seen = 0;
  for (int rep = 0; rep < 200; ++rep) {
    c.resample(rep);
    const DualConfig d = DualConfig::dualize(c, DualVariant::U);
    const auto path = detect_b_plus(d, 2, 0, 5);
    if (!path) continue;
    ++seen;
    CHECK(path->front() == DualSite{2, 0});
    CHECK(path->back().i == 0);
    for (size_t k = 0; k + 1 < path->size(); ++k) {
      CHECK(d.arc_present((*path)[k], (*path)[k + 1]));
      CHECK((*path)[k].i >= 0);
      CHECK((*path)[k].j >= 0);
      CHECK(std::max((*path)[k].i, (*path)[k].j) <= 4);
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("confined dual passage validates its arguments") {
  auto geo = shared_geometry(Region::quadrant(2));
  const Config c = Config::sample(ModelSpec::h(0.5), geo, 3);
  const DualConfig d = DualConfig::dualize(c, DualVariant::U);
  CHECK_THROWS_AS(detect_b_plus(d, -1, 0, -1), std::invalid_argument);
  CHECK_THROWS_AS(detect_b_plus(d, 0, -2, -1), std::invalid_argument);
  CHECK_THROWS_AS(detect_b_plus(d, 50, 0, -1), std::invalid_argument);
  // start outside the confinement ring is a failed event, not an error
  CHECK(!detect_b_plus(d, 0, 2, -1).has_value());
}

TEST_CASE("fully inward and fully outward windows bracket the circuit event") {
  auto geo = shared_geometry(Region::annulus(1, 3));
  const Config inward = Config::sample(ModelSpec::h(0.0), geo, 0);
  const DualConfig di = DualConfig::dualize(inward, DualVariant::U);
  const auto w = detect_circuit(di, +1);
  REQUIRE(w.has_value());
  CHECK(w->winding == 1);
  CHECK(std::lround(winding_number(w->cycle)) == 1);
  CHECK(detect_circuit(di, -1) == std::nullopt);

  const Config outward = Config::sample(ModelSpec::h(1.0), geo, 0);
  const DualConfig d_out = DualConfig::dualize(outward, DualVariant::U);
  CHECK(detect_circuit(d_out, +1) == std::nullopt);
  const auto cw = detect_circuit(d_out, -1);
  REQUIRE(cw.has_value());
  CHECK(cw->winding == -1);
  CHECK(std::lround(winding_number(cw->cycle)) == -1);
  // either-orientation query returns one of the two
  CHECK(detect_circuit(d_out, 0).has_value());
}

TEST_CASE("circuit detection agrees with brute cycle enumeration") {
  auto geo = shared_geometry(Region::box(2));
  Config c = Config::sample(ModelSpec::h(0.5), geo, 4);
  int hits = 0;
  for (double p : {0.25, 0.5, 0.8}) {
    c = Config::sample(ModelSpec::h(p), geo, 4);
    for (int rep = 0; rep < 250; ++rep) {
      c.resample(9000 + rep);
      const DualConfig d = DualConfig::dualize(c, DualVariant::U);
      const bool lib_ccw = detect_circuit(d, +1).has_value();
      const bool lib_cw = detect_circuit(d, -1).has_value();
      CHECK(lib_ccw == oracle::has_cycle(c, +1));
      CHECK(lib_cw == oracle::has_cycle(c, -1));
      hits += lib_ccw;
    }
  }
  CHECK(hits > 0);  // the comparison exercised both outcomes
}

TEST_CASE("circuit witness is a present, closed, correctly wound cycle") {
  auto geo = shared_geometry(Region::annulus(1, 4));
  Config c = Config::sample(ModelSpec::h(0.3), geo, 5);
  int found = 0;
  for (int rep = 0; rep < 100; ++rep) {
    c.resample(rep * 17);
    const DualConfig d = DualConfig::dualize(c, DualVariant::U);
    const auto w = detect_circuit(d, +1);
    if (!w) continue;
    ++found;
    const auto& cyc = w->cycle;
    REQUIRE(cyc.size() >= 4);
    for (size_t k = 0; k < cyc.size(); ++k)
      CHECK(d.arc_present(cyc[k], cyc[(k + 1) % cyc.size()]));
    CHECK(std::lround(winding_number(cyc)) == 1);
    // anchor: least nonnegative column of the cycle on the row j = 0
    int least = INT_MAX;
    for (const DualSite& s : cyc)
      if (s.j == 0 && s.i >= 0) least = std::min(least, s.i);
    CHECK(w->anchor == least);
  }
  CHECK(found > 30);  // the cramped annulus still yields plenty of circuits
}

TEST_CASE("four-leg passages: landing sets are sorted and bounded by extremes") {
  auto geo = shared_geometry(Region::annulus(1, 4));
  Config c = Config::sample(ModelSpec::h(0.35), geo, 6);
  int nonempty = 0;
  for (int rep = 0; rep < 150; ++rep) {
    c.resample(rep);
    const DualConfig d = DualConfig::dualize(c, DualVariant::U);
    for (int a : {1, 2, 3}) {
      const auto lands = four_leg_landings(d, a);
      const ExtremalLegs ex = extremal_legs(d, a);
      CHECK(ex.found == !lands.empty());
      if (lands.empty()) continue;
      ++nonempty;
      CHECK(std::is_sorted(lands.begin(), lands.end()));
      CHECK(std::adjacent_find(lands.begin(), lands.end()) == lands.end());
      CHECK(ex.innermost == lands.front());
      CHECK(ex.outermost == lands.back());
      CHECK(ex.innermost <= ex.outermost);
      for (int col : lands) CHECK(col >= 0);
    }
  }
  CHECK(nonempty > 0);
}

TEST_CASE("the innermost witness is a genuine clockwise four-quadrant passage") {
  auto geo = shared_geometry(Region::annulus(1, 4));
  Config c = Config::sample(ModelSpec::h(0.3), geo, 7);
  int checked = 0;
  for (int rep = 0; rep < 120; ++rep) {
    c.resample(rep * 31 + 5);
    const DualConfig d = DualConfig::dualize(c, DualVariant::U);
    const ExtremalLegs ex = extremal_legs(d, 2);
    if (!ex.found) continue;
    ++checked;
    const auto& path = ex.inner_path;
    REQUIRE(path.size() >= 5);
    CHECK(path.front() == DualSite{2, 0});
    CHECK(path.back() == DualSite{ex.innermost, 0});
    int stage = 0;
    for (size_t k = 0; k + 1 < path.size(); ++k) {
      const DualSite& a = path[k];
      const DualSite& b = path[k + 1];
      CHECK(d.arc_present(a, b));
      if (stage == 0 && a.i == 0 && b.i == -1 && a.j >= 0)
        stage = 1;  // crossed into the NW quadrant
      else if (stage == 1 && a.j == 0 && b.j == -1 && a.i <= -1)
        stage = 2;  // crossed into the SW quadrant
      else if (stage == 2 && a.i == -1 && b.i == 0 && a.j <= -1)
        stage = 3;  // crossed into the SE quadrant
      else if (stage == 3 && a.j == -1 && b.j == 0 && a.i >= 0)
        stage = 4;  // landed back on the NE row
    }
    CHECK(stage == 4);
  }
  CHECK(checked > 30);
}

TEST_CASE("escape and blocking partition every quadrant configuration") {
  for (int n : {2, 3, 4}) {
    auto geo = shared_geometry(Region::quadrant(n));
    Config c = Config::sample(ModelSpec::ne(0.45), geo, n);
    for (int rep = 0; rep < 400; ++rep) {
      c.resample(rep);
      const Complementarity comp = complementarity_check(c);
      CHECK(comp.holds());
    }
  }
}

TEST_CASE("exhaustive complementarity scan covers every assignment") {
  uint64_t calls = 0, escapes = 0;
  std::set<uint64_t> coins;
  const DualCheckSummary s = run_dual_check(1, [&](const DualCheckRecord& rec) {
    ++calls;
    escapes += rec.primal_escape;
    coins.insert(rec.coins);
    CHECK(rec.primal_escape != rec.dual_blocking);
  });
  CHECK(s.configurations == 16);  // four edges on QuadrantBox(1)
  CHECK(s.violations == 0);
  CHECK(calls == 16);
  CHECK(coins.size() == 16);
  CHECK(s.primal_escapes == escapes);
  CHECK_THROWS_AS(run_dual_check(0), std::invalid_argument);
  CHECK_THROWS_AS(run_dual_check(3), std::invalid_argument);  // 24 edges, over the cap
}

TEST_CASE("dual outward frequency concentrates at one minus p") {
  const OutwardFrequency f = dual_outward_frequency(0.65, 64, 30000, 99);
  CHECK(f.arcs >= 30000);
  const double want = 0.35;
  const double sig = std::sqrt(want * (1 - want) / static_cast<double>(f.arcs));
  CHECK(std::fabs(f.frequency() - want) < 4 * sig);
}
