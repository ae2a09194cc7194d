#pragma once

#include <cstdint>

// Counter-based randomness: every variate is a pure function of
// (seed, key, stream), so results never depend on traversal order,
// thread count or scheduling.
namespace oriperc::rng {

// splitmix64 finalizer
constexpr uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Disjoint purposes draw from disjoint streams.
enum class Stream : uint64_t {
  orient = 1,        // per-edge orientation coin
  arc_forward = 2,   // independent-arc process, forward arc
  arc_backward = 3,  // independent-arc process, backward arc
  sample = 4,        // per-sample seed derivation
  cell = 5,          // per-sweep-cell seed derivation
  trial = 6,         // generic per-trial seeds (rejection sampling etc.)
};

constexpr uint64_t prf(uint64_t seed, uint64_t key, Stream stream) {
  return mix64(mix64(mix64(seed) ^ key) ^ static_cast<uint64_t>(stream));
}

// 53-bit mantissa uniform in [0,1); u < 1 holds exactly.
constexpr double unit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Edge identity packed into a counter key. Coordinates must fit in 16 bits;
// all supported regions are far smaller.
constexpr uint64_t edge_key(int x, int y, int z, unsigned axis) {
  return (static_cast<uint64_t>(static_cast<uint16_t>(x)) << 48) |
         (static_cast<uint64_t>(static_cast<uint16_t>(y)) << 32) |
         (static_cast<uint64_t>(static_cast<uint16_t>(z)) << 16) |
         static_cast<uint64_t>(axis & 0xff);
}

// The Bernoulli(p) coin for an edge: strict '<' makes p=0 and p=1 exact.
constexpr bool coin(uint64_t seed, uint64_t key, Stream stream, double p) {
  return unit(prf(seed, key, stream)) < p;
}

constexpr uint64_t derive(uint64_t seed, uint64_t index, Stream stream) {
  return prf(seed, index, stream);
}

}  // namespace oriperc::rng
