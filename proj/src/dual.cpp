#include "oriperc/dual.hpp"

#include <algorithm>
#include <stdexcept>

namespace oriperc {

namespace {

DualEdge dual_of(const Edge& e) {
  if (e.axis == Axis::X) return {{e.tail.x, e.tail.y - 1}, Axis::Y};
  if (e.axis == Axis::Y) return {{e.tail.x - 1, e.tail.y}, Axis::X};
  throw std::invalid_argument("dual geometry is planar; Z edges have no dual");
}

}  // namespace

DualGeometry::DualGeometry(std::shared_ptr<const RegionGeometry> primal)
    : primal_(std::move(primal)) {
  if (primal_->region().dim() != 2)
    throw std::invalid_argument("dual geometry requires a planar region");

  const auto& pedges = primal_->edges();
  const int ne = static_cast<int>(pedges.size());

  struct Item {
    DualEdge e;
    int32_t primal;
  };
  std::vector<Item> items;
  items.reserve(ne);
  for (int i = 0; i < ne; ++i) items.push_back({dual_of(pedges[i]), i});
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.e < b.e; });

  edges_.reserve(ne);
  dual_of_primal_.assign(ne, -1);
  primal_of_dual_.reserve(ne);
  flips_.reserve(ne);
  for (int d = 0; d < ne; ++d) {
    edges_.push_back(items[d].e);
    primal_of_dual_.push_back(items[d].primal);
    dual_of_primal_[items[d].primal] = d;
    flips_.push_back(pedges[items[d].primal].axis == Axis::X ? 1 : 0);
  }

  i0_ = j0_ = INT32_MAX;
  i1_ = j1_ = INT32_MIN;
  for (const auto& e : edges_) {
    for (const DualSite s : {e.tail, e.head()}) {
      i0_ = std::min(i0_, s.i);
      i1_ = std::max(i1_, s.i);
      j0_ = std::min(j0_, s.j);
      j1_ = std::max(j1_, s.j);
    }
  }
  nj_ = j1_ - j0_ + 1;
  const int slots = (i1_ - i0_ + 1) * nj_;
  slot_to_site_.assign(slots, -1);
  edge_at_slot_.assign(2 * slots, -1);

  auto slot = [&](const DualSite& s) { return (s.i - i0_) * nj_ + (s.j - j0_); };
  for (int d = 0; d < ne; ++d)
    edge_at_slot_[2 * slot(edges_[d].tail) + static_cast<int>(edges_[d].axis)] = d;

  for (const auto& e : edges_) {
    for (const DualSite s : {e.tail, e.head()}) {
      if (slot_to_site_[slot(s)] < 0) {
        slot_to_site_[slot(s)] = 0;  // mark, number below in lexicographic order
        sites_.push_back(s);
      }
    }
  }
  std::sort(sites_.begin(), sites_.end());
  for (int si = 0; si < static_cast<int>(sites_.size()); ++si)
    slot_to_site_[slot(sites_[si])] = si;

  const int ns = static_cast<int>(sites_.size());
  std::vector<std::vector<OutArc>> adj(ns);
  for (int d = 0; d < ne; ++d) {
    const int t = slot_to_site_[slot(edges_[d].tail)];
    const int h = slot_to_site_[slot(edges_[d].head())];
    adj[t].push_back({d, h, 1});
    adj[h].push_back({d, t, 0});
  }
  out_offsets_.assign(ns + 1, 0);
  for (int s = 0; s < ns; ++s) out_offsets_[s + 1] = out_offsets_[s] + static_cast<int>(adj[s].size());
  out_entries_.reserve(out_offsets_[ns]);
  for (int s = 0; s < ns; ++s)
    out_entries_.insert(out_entries_.end(), adj[s].begin(), adj[s].end());
}

int DualGeometry::edge_index(const DualEdge& e) const {
  if (e.tail.i < i0_ || e.tail.i > i1_ || e.tail.j < j0_ || e.tail.j > j1_) return -1;
  if (e.axis != Axis::X && e.axis != Axis::Y) return -1;
  return edge_at_slot_[2 * ((e.tail.i - i0_) * nj_ + (e.tail.j - j0_)) +
                       static_cast<int>(e.axis)];
}

std::shared_ptr<const DualGeometry> shared_dual_geometry(
    std::shared_ptr<const RegionGeometry> primal) {
  return std::make_shared<const DualGeometry>(std::move(primal));
}

DualConfig::DualConfig(std::shared_ptr<const DualGeometry> geo, DualVariant v,
                       ModelSpec primal_model, BitVec bits)
    : geo_(std::move(geo)), variant_(v), primal_model_(primal_model), bits_(std::move(bits)) {
  if (bits_.size() != geo_->edge_count())
    throw std::invalid_argument("dual bit count does not match dual edge count");
}

DualConfig DualConfig::dualize(const Config& c, DualVariant v) {
  return dualize(c, v, shared_dual_geometry(c.geometry_ptr()));
}

DualConfig DualConfig::dualize(const Config& c, DualVariant v,
                               std::shared_ptr<const DualGeometry> geo) {
  DualConfig d(std::move(geo), v, c.model(), BitVec(c.edge_count()));
  d.redualize(c);
  return d;
}

void DualConfig::redualize(const Config& c) {
  if (&c.geometry() != &geo_->primal())
    throw std::invalid_argument("redualize requires the geometry the dual was built from");
  const bool flip_variant = variant_ == DualVariant::D;
  const int ne = geo_->edge_count();
  for (int d = 0; d < ne; ++d) {
    bool bit = c.forward(geo_->primal_of_dual(d));
    if (geo_->flips(d)) bit = !bit;
    if (flip_variant) bit = !bit;
    bits_.set(d, bit);
  }
  primal_model_ = c.model();
}

Config DualConfig::undualize() const {
  const bool flip_variant = variant_ == DualVariant::D;
  const int ne = geo_->edge_count();
  BitVec primal_bits(ne);
  for (int d = 0; d < ne; ++d) {
    bool bit = bits_.get(d);
    if (flip_variant) bit = !bit;
    if (geo_->flips(d)) bit = !bit;
    primal_bits.set(geo_->primal_of_dual(d), bit);
  }
  return Config(geo_->primal_ptr(), primal_model_, std::move(primal_bits));
}

bool DualConfig::arc_present(const DualSite& from, const DualSite& to) const {
  const int di = to.i - from.i, dj = to.j - from.j;
  if (di * di + dj * dj != 1) return false;
  const bool fwd = di > 0 || dj > 0;
  const DualEdge e{fwd ? from : to, di != 0 ? Axis::X : Axis::Y};
  const int idx = geo_->edge_index(e);
  return idx >= 0 && forward(idx) == fwd;
}

}  // namespace oriperc
