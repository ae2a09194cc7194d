#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "oriperc/geometry.hpp"
#include "oriperc/model.hpp"
#include "oriperc/rng.hpp"

namespace oriperc {

// Bit i belongs to edge i in enumerate_edges order. Byte k of the serialized
// form covers edges [8k, 8k+8), least significant bit first; hex is lowercase,
// two digits per byte. This layout is part of the serialization contract.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    uint64_t m = 1ull << (i & 63);
    if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
  }
  std::string to_hex() const;
  static BitVec from_hex(const std::string& hex, int n);
  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

std::shared_ptr<const RegionGeometry> shared_geometry(const Region& r);

// Canonical per-edge RNG key; every sampler that must agree with
// sample_config on shared uniforms derives them through this key.
inline uint64_t sampling_key(const Edge& e) {
  return rng::edge_key(e.tail.x, e.tail.y, e.tail.z, static_cast<unsigned>(e.axis));
}

// One orientation per edge; bit true = forward (increasing coordinate).
class Config {
 public:
  Config(std::shared_ptr<const RegionGeometry> geo, ModelSpec model, BitVec bits);
  static Config sample(const ModelSpec& model, const Region& region, uint64_t seed);
  static Config sample(const ModelSpec& model, std::shared_ptr<const RegionGeometry> geo,
                       uint64_t seed);

  // refill in place from a new seed; drawing order never matters
  void resample(uint64_t seed);

  const RegionGeometry& geometry() const { return *geo_; }
  std::shared_ptr<const RegionGeometry> geometry_ptr() const { return geo_; }
  const Region& region() const { return geo_->region(); }
  const ModelSpec& model() const { return model_; }
  int edge_count() const { return geo_->edge_count(); }
  bool forward(int edge_idx) const { return bits_.get(edge_idx); }
  Arc arc(int edge_idx) const { return {geo_->edge(edge_idx), forward(edge_idx)}; }
  const BitVec& bits() const { return bits_; }
  void set_forward(int edge_idx, bool fwd) { bits_.set(edge_idx, fwd); }

  std::string to_json() const;
  static Config from_json(const std::string& text);

 private:
  std::shared_ptr<const RegionGeometry> geo_;
  ModelSpec model_;
  BitVec bits_;
};

// Zero, one or two arcs per edge; forward and backward presence bits.
class ArcSet {
 public:
  ArcSet(std::shared_ptr<const RegionGeometry> geo, ModelSpec model, BitVec fwd, BitVec bwd);
  static ArcSet sample(double a, double b, const Region& region, uint64_t seed);
  static ArcSet sample(double a, double b, std::shared_ptr<const RegionGeometry> geo,
                       uint64_t seed);
  void resample(uint64_t seed);

  const RegionGeometry& geometry() const { return *geo_; }
  const Region& region() const { return geo_->region(); }
  const ModelSpec& model() const { return model_; }
  int edge_count() const { return geo_->edge_count(); }
  bool has(int edge_idx, bool forward) const {
    return forward ? fwd_.get(edge_idx) : bwd_.get(edge_idx);
  }
  void set(int edge_idx, bool forward, bool present) {
    (forward ? fwd_ : bwd_).set(edge_idx, present);
  }
  const BitVec& forward_bits() const { return fwd_; }
  const BitVec& backward_bits() const { return bwd_; }

  std::string to_json() const;
  static ArcSet from_json(const std::string& text);

 private:
  std::shared_ptr<const RegionGeometry> geo_;
  ModelSpec model_;
  BitVec fwd_, bwd_;
};

}  // namespace oriperc
