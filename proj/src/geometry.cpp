#include "oriperc/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace oriperc {

Region Region::box(int n) {
  if (n < 0) throw std::invalid_argument("box radius must be >= 0");
  return Region(Kind::Box, 0, n);
}

Region Region::quadrant(int n) {
  if (n < 0) throw std::invalid_argument("quadrant size must be >= 0");
  return Region(Kind::QuadrantBox, 0, n);
}

Region Region::annulus(int inner, int outer) {
  if (inner < 0 || outer <= inner) throw std::invalid_argument("annulus needs 0 <= inner < outer");
  return Region(Kind::Annulus, inner, outer);
}

Region Region::slab(int n) {
  if (n < 0) throw std::invalid_argument("slab radius must be >= 0");
  return Region(Kind::SlabBox, 0, n);
}

bool Region::contains(const Site& s) const {
  int cheb = std::max(std::abs(s.x), std::abs(s.y));
  switch (kind_) {
    case Kind::Box: return s.z == 0 && cheb <= outer_;
    case Kind::QuadrantBox:
      return s.z == 0 && s.x >= 0 && s.x <= outer_ && s.y >= 0 && s.y <= outer_;
    case Kind::Annulus: return s.z == 0 && cheb >= inner_ && cheb <= outer_;
    case Kind::SlabBox: return cheb <= outer_ && s.z >= -1 && s.z <= 1;
  }
  return false;
}

std::string Region::to_string() const {
  switch (kind_) {
    case Kind::Box: return "box:" + std::to_string(outer_);
    case Kind::QuadrantBox: return "quad:" + std::to_string(outer_);
    case Kind::Annulus:
      return "ann:" + std::to_string(inner_) + ":" + std::to_string(outer_);
    case Kind::SlabBox: return "slab:" + std::to_string(outer_);
  }
  return {};
}

Region Region::from_string(const std::string& s) {
  auto num = [&](size_t pos, size_t end) {
    return std::stoi(s.substr(pos, end == std::string::npos ? end : end - pos));
  };
  if (s.rfind("box:", 0) == 0) return box(num(4, std::string::npos));
  if (s.rfind("quad:", 0) == 0) return quadrant(num(5, std::string::npos));
  if (s.rfind("slab:", 0) == 0) return slab(num(5, std::string::npos));
  if (s.rfind("ann:", 0) == 0) {
    size_t c = s.find(':', 4);
    if (c != std::string::npos) return annulus(num(4, c), num(c + 1, std::string::npos));
  }
  throw std::invalid_argument("bad region descriptor: " + s);
}

namespace {

struct Bounds {
  int x0, x1, y0, y1, z0, z1;
};

Bounds bounds_of(const Region& r) {
  int n = r.radius();
  switch (r.kind()) {
    case Region::Kind::QuadrantBox: return {0, n, 0, n, 0, 0};
    case Region::Kind::SlabBox: return {-n, n, -n, n, -1, 1};
    default: return {-n, n, -n, n, 0, 0};
  }
}

template <class Fn>
void for_sites(const Region& r, Fn&& fn) {
  Bounds b = bounds_of(r);
  for (int x = b.x0; x <= b.x1; ++x)
    for (int y = b.y0; y <= b.y1; ++y)
      for (int z = b.z0; z <= b.z1; ++z) {
        Site s{x, y, z};
        if (r.contains(s)) fn(s);
      }
}

}  // namespace

std::vector<Edge> enumerate_edges(const Region& r) {
  std::vector<Edge> out;
  int na = r.dim() == 3 ? 3 : 2;
  for_sites(r, [&](const Site& s) {
    for (int a = 0; a < na; ++a) {
      Edge e{s, static_cast<Axis>(a)};
      if (r.contains(e.head())) out.push_back(e);
    }
  });
  return out;
}

std::vector<Site> boundary(const Region& r) {
  std::vector<Site> out;
  int na = r.dim() == 3 ? 3 : 2;
  for_sites(r, [&](const Site& s) {
    for (int a = 0; a < na; ++a)
      for (int d = -1; d <= 1; d += 2)
        if (!r.contains(offset(s, static_cast<Axis>(a), d))) {
          out.push_back(s);
          return;
        }
  });
  return out;
}

std::vector<Site> outer_shell(const Region& r) {
  std::vector<Site> out;
  int n = r.radius();
  for_sites(r, [&](const Site& s) {
    int cheb = r.kind() == Region::Kind::QuadrantBox ? std::max(s.x, s.y)
                                                     : std::max(std::abs(s.x), std::abs(s.y));
    if (cheb == n) out.push_back(s);
  });
  return out;
}

RegionGeometry::RegionGeometry(const Region& r) : region_(r) {
  Bounds b = bounds_of(r);
  x0_ = b.x0; x1_ = b.x1; y0_ = b.y0; y1_ = b.y1; z0_ = b.z0; z1_ = b.z1;
  ny_ = y1_ - y0_ + 1;
  nz_ = z1_ - z0_ + 1;
  int nslots = (x1_ - x0_ + 1) * ny_ * nz_;
  slot_to_site_.assign(nslots, -1);
  edge_at_slot_.assign(3 * nslots, -1);

  for_sites(r, [&](const Site& s) {
    slot_to_site_[slot(s)] = static_cast<int32_t>(sites_.size());
    sites_.push_back(s);
  });

  edges_ = enumerate_edges(r);
  for (size_t i = 0; i < edges_.size(); ++i)
    edge_at_slot_[3 * slot(edges_[i].tail) + static_cast<int>(edges_[i].axis)] =
        static_cast<int32_t>(i);

  // adjacency: both traversal directions of every incident edge
  int na = r.dim() == 3 ? 3 : 2;
  out_offsets_.assign(sites_.size() + 1, 0);
  std::vector<std::vector<OutArc>> per_site(sites_.size());
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    int ti = site_index(e.tail);
    int hi = site_index(e.head());
    per_site[ti].push_back({static_cast<int32_t>(i), hi, 1});
    per_site[hi].push_back({static_cast<int32_t>(i), ti, 0});
  }
  (void)na;
  for (size_t s = 0; s < sites_.size(); ++s) {
    out_offsets_[s + 1] = out_offsets_[s] + static_cast<int32_t>(per_site[s].size());
    out_entries_.insert(out_entries_.end(), per_site[s].begin(), per_site[s].end());
  }

  for (const Site& s : outer_shell(r)) shell_.push_back(site_index(s));
}

}  // namespace oriperc
