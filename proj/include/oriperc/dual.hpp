#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "oriperc/config.hpp"

namespace oriperc {

// Rotation convention for the dual orientation: an edge oriented in direction
// beta fails beta+pi; the U dual carries (beta+pi)+pi/2 = beta - pi/2, the D
// dual the reverse. Present-arc table for U: east->south, north->east,
// west->north, south->west.
enum class DualVariant : uint8_t { U, D };

// Index (i,j) stands for the dual lattice point (i + 1/2, j + 1/2).
struct DualSite {
  int i = 0, j = 0;
  friend constexpr auto operator<=>(const DualSite&, const DualSite&) = default;
};

constexpr std::pair<double, double> dual_point(const DualSite& s) {
  return {s.i + 0.5, s.j + 0.5};
}

// Canonical dual edge: head = tail + unit vector along axis (X or Y).
struct DualEdge {
  DualSite tail;
  Axis axis = Axis::X;
  constexpr DualSite head() const {
    return axis == Axis::X ? DualSite{tail.i + 1, tail.j} : DualSite{tail.i, tail.j + 1};
  }
  friend constexpr auto operator<=>(const DualEdge&, const DualEdge&) = default;
};

// The crossing bijection: primal X edge (x,y) <-> dual Y edge at (x, y-1),
// primal Y edge (x,y) <-> dual X edge at (x-1, y). Structure depends only on
// the primal region, so it is shared across samples.
class DualGeometry {
 public:
  struct OutArc {
    int32_t edge;
    int32_t to;
    uint8_t forward;
  };

  explicit DualGeometry(std::shared_ptr<const RegionGeometry> primal);

  const RegionGeometry& primal() const { return *primal_; }
  std::shared_ptr<const RegionGeometry> primal_ptr() const { return primal_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int site_count() const { return static_cast<int>(sites_.size()); }
  const std::vector<DualEdge>& edges() const { return edges_; }
  const std::vector<DualSite>& sites() const { return sites_; }

  int site_index(const DualSite& s) const {
    if (s.i < i0_ || s.i > i1_ || s.j < j0_ || s.j > j1_) return -1;
    return slot_to_site_[(s.i - i0_) * nj_ + (s.j - j0_)];
  }
  int edge_index(const DualEdge& e) const;

  int dual_of_primal(int primal_edge) const { return dual_of_primal_[primal_edge]; }
  int primal_of_dual(int dual_edge) const { return primal_of_dual_[dual_edge]; }
  // true when the U-dual arc direction equals the negated primal bit
  bool flips(int dual_edge) const { return flips_[dual_edge]; }

  std::span<const OutArc> out_arcs(int site_idx) const {
    return {out_entries_.data() + out_offsets_[site_idx],
            out_entries_.data() + out_offsets_[site_idx + 1]};
  }

 private:
  std::shared_ptr<const RegionGeometry> primal_;
  int i0_, i1_, j0_, j1_, nj_;
  std::vector<int32_t> slot_to_site_;
  std::vector<int32_t> edge_at_slot_;  // 2 per slot (X,Y)
  std::vector<DualSite> sites_;
  std::vector<DualEdge> edges_;
  std::vector<int32_t> dual_of_primal_, primal_of_dual_;
  std::vector<uint8_t> flips_;
  std::vector<OutArc> out_entries_;
  std::vector<int32_t> out_offsets_;
};

std::shared_ptr<const DualGeometry> shared_dual_geometry(
    std::shared_ptr<const RegionGeometry> primal);

// Orientations of all dual edges, bit true = forward (increasing index),
// stored in the dual geometry's own lexicographic edge order.
class DualConfig {
 public:
  DualConfig(std::shared_ptr<const DualGeometry> geo, DualVariant v, ModelSpec primal_model,
             BitVec bits);

  static DualConfig dualize(const Config& c, DualVariant v);
  static DualConfig dualize(const Config& c, DualVariant v,
                            std::shared_ptr<const DualGeometry> geo);
  // refill bits from a new primal sample without rebuilding structure
  void redualize(const Config& c);
  // inverse rotation; recovers the primal configuration bit for bit
  Config undualize() const;

  const DualGeometry& geometry() const { return *geo_; }
  std::shared_ptr<const DualGeometry> geometry_ptr() const { return geo_; }
  DualVariant variant() const { return variant_; }
  const ModelSpec& primal_model() const { return primal_model_; }
  int edge_count() const { return geo_->edge_count(); }
  bool forward(int dual_edge_idx) const { return bits_.get(dual_edge_idx); }
  const BitVec& bits() const { return bits_; }
  void set_forward(int dual_edge_idx, bool fwd) { bits_.set(dual_edge_idx, fwd); }

  // arc query by endpoints; false when the sites are not dual-adjacent
  bool arc_present(const DualSite& from, const DualSite& to) const;

 private:
  std::shared_ptr<const DualGeometry> geo_;
  DualVariant variant_;
  ModelSpec primal_model_;
  BitVec bits_;
};

}  // namespace oriperc
