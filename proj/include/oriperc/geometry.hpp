#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace oriperc {

enum class Axis : uint8_t { X = 0, Y = 1, Z = 2 };

struct Site {
  int x = 0, y = 0, z = 0;
  friend constexpr auto operator<=>(const Site&, const Site&) = default;
};

constexpr Site offset(Site s, Axis a, int d) {
  switch (a) {
    case Axis::X: s.x += d; break;
    case Axis::Y: s.y += d; break;
    case Axis::Z: s.z += d; break;
  }
  return s;
}

constexpr int axis_coord(const Site& s, Axis a) {
  return a == Axis::X ? s.x : a == Axis::Y ? s.y : s.z;
}

constexpr long long norm2(const Site& s) {
  return 1ll * s.x * s.x + 1ll * s.y * s.y + 1ll * s.z * s.z;
}

// Canonical edge: head = tail + unit vector, so tail is the smaller endpoint.
struct Edge {
  Site tail;
  Axis axis = Axis::X;
  constexpr Site head() const { return offset(tail, axis, +1); }
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// forward = points from tail to head (increasing coordinate).
struct Arc {
  Edge edge;
  bool forward = true;
  constexpr Site from() const { return forward ? edge.tail : edge.head(); }
  constexpr Site to() const { return forward ? edge.head() : edge.tail; }
  friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

constexpr Arc reversed(Arc a) { return {a.edge, !a.forward}; }

class Region {
 public:
  enum class Kind { Box, QuadrantBox, Annulus, SlabBox };

  static Region box(int n);                     // [-n,n]^2
  static Region quadrant(int n);                // [0,n]^2
  static Region annulus(int inner, int outer);  // box(outer) minus interior of box(inner)
  static Region slab(int n);                    // [-n,n]^2 x {-1,0,1}

  Kind kind() const { return kind_; }
  int radius() const { return outer_; }  // chebyshev radius of the outermost shell
  int inner() const { return inner_; }   // annulus inner radius, 0 otherwise
  bool planar() const { return kind_ != Kind::SlabBox; }
  int dim() const { return planar() ? 2 : 3; }
  bool contains(const Site& s) const;
  bool contains(const Edge& e) const { return contains(e.tail) && contains(e.head()); }
  std::string to_string() const;
  static Region from_string(const std::string&);
  friend bool operator==(const Region&, const Region&) = default;

 private:
  Region(Kind k, int inner, int outer) : kind_(k), inner_(inner), outer_(outer) {}
  Kind kind_;
  int inner_;
  int outer_;
};

// All edges with both endpoints in the region, sorted by (tail, axis).
std::vector<Edge> enumerate_edges(const Region&);

// Sites of the region with at least one lattice neighbor outside it.
std::vector<Site> boundary(const Region&);

// Sites at chebyshev radius exactly radius() (lateral radius for slabs).
// This is the escape target used by reach estimators.
std::vector<Site> outer_shell(const Region&);

// Dense site/edge indexing plus adjacency, shared across samples.
class RegionGeometry {
 public:
  struct OutArc {
    int32_t edge;     // edge index
    int32_t to;       // destination site index
    uint8_t forward;  // orientation that traverses the edge in this direction
  };

  explicit RegionGeometry(const Region& r);

  const Region& region() const { return region_; }
  int site_count() const { return static_cast<int>(sites_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int i) const { return edges_[i]; }

  int site_index(const Site& s) const {
    int sl = slot(s);
    return sl < 0 ? -1 : slot_to_site_[sl];
  }
  int edge_index(const Edge& e) const {
    int sl = slot(e.tail);
    return sl < 0 ? -1 : edge_at_slot_[3 * sl + static_cast<int>(e.axis)];
  }

  std::span<const OutArc> out_arcs(int site_idx) const {
    return {out_entries_.data() + out_offsets_[site_idx],
            out_entries_.data() + out_offsets_[site_idx + 1]};
  }

  // site indices at chebyshev radius radius()
  const std::vector<int32_t>& shell() const { return shell_; }

 private:
  int slot(const Site& s) const {
    if (s.x < x0_ || s.x > x1_ || s.y < y0_ || s.y > y1_ || s.z < z0_ || s.z > z1_) return -1;
    return ((s.x - x0_) * ny_ + (s.y - y0_)) * nz_ + (s.z - z0_);
  }

  Region region_;
  int x0_, x1_, y0_, y1_, z0_, z1_, ny_, nz_;
  std::vector<int32_t> slot_to_site_;
  std::vector<int32_t> edge_at_slot_;
  std::vector<Site> sites_;
  std::vector<Edge> edges_;
  std::vector<RegionGeometry::OutArc> out_entries_;
  std::vector<int32_t> out_offsets_;
  std::vector<int32_t> shell_;
};

}  // namespace oriperc
