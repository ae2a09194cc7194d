#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oriperc/config.hpp"

namespace oriperc {

// Inverse standard normal CDF, bisection on erfc; q in (0,1).
double normal_quantile(double q);

struct Estimate {
  double p_hat = 0.0;
  uint64_t successes = 0;
  uint64_t samples = 0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  double level = 0.95;
};

// Wilson score interval; well behaved at 0 and samples successes.
Estimate wilson_ci(uint64_t successes, uint64_t samples, double level);

// What counts as a step when testing origin-to-shell reachability.
enum class Statistic : uint8_t {
  Reach,         // any present arc
  OutwardReach,  // outward arcs only; monotone in p under shared uniforms
};

// Escape frequency for the model's natural window at radius n: Box(n) for
// the whole-plane laws, QuadrantBox(n) for the quadrant law, SlabBox(n) for
// the slab law. Sample i draws its own seed from (seed, i), so the result is
// identical for every thread count.
Estimate reach_probability(const ModelSpec& model, int n, uint64_t samples, uint64_t seed,
                           double level = 0.95, int threads = 1,
                           Statistic stat = Statistic::Reach);

// Exact decimal, value = digits / 10^exponent; keeps sweep grids and CSV
// labels free of binary rounding.
struct Decimal {
  int64_t digits = 0;
  int exponent = 0;
  static Decimal parse(const std::string& text);
  std::string str() const;
  double value() const;
};

// "start:stop:step" -> start, start+step, ... while <= stop (exact decimal
// arithmetic; inclusive of both ends when the step lands on stop).
std::vector<Decimal> decimal_grid(const std::string& spec);

struct SweepCell {
  std::string model;
  Decimal p;               // for one-parameter laws
  bool has_ab = false;     // independent-arc law uses a,b instead of p
  Decimal a, b;
  int n = 0;
  std::string layer;       // slab comparisons: slab | plane | enriched
  uint64_t cell_seed = 0;
  Estimate est;
};

struct SweepTable {
  std::vector<SweepCell> rows;
  uint64_t seed = 0;
  uint64_t samples_per_cell = 0;
  double level = 0.95;
  // model,p,a,b,n,samples,successes,p_hat,ci_lo,ci_hi,seed[,layer_model]
  std::string to_csv() const;
  std::string to_jsonl() const;
};

SweepTable sweep(Law law, const std::vector<Decimal>& p_grid, const std::vector<int>& sizes,
                 uint64_t samples, uint64_t seed, double level = 0.95, int threads = 1,
                 Statistic stat = Statistic::Reach);

// Independent-arc process; grids zipped when equal length, else crossed.
SweepTable sweep_arcs(const std::vector<Decimal>& a_grid, const std::vector<Decimal>& b_grid,
                      const std::vector<int>& sizes, uint64_t samples, uint64_t seed,
                      double level = 0.95, int threads = 1);

// slab vs plane vs enriched rows for each (p, n) cell.
SweepTable slab_sweep(const std::vector<Decimal>& p_grid, const std::vector<int>& sizes,
                      uint64_t samples, uint64_t seed, double level = 0.95, int threads = 1);

// p where the linearly interpolated reach curves for sizes n1 and n2 cross;
// none without a sign change of their difference.
std::optional<double> crossing_point(const SweepTable& table, int n1, int n2);

// Frequency of an encircling counterclockwise U-dual circuit for the outward
// law on Annulus(inner, outer).
Estimate circuit_probability(double p, int inner, int outer, uint64_t samples, uint64_t seed,
                             double level = 0.95, int threads = 1);

struct SawCensus {
  std::vector<uint64_t> counts;  // counts[L-1] = directed self-avoiding paths of length L
  std::vector<double> mu_hat;    // counts[L-1]^(1/L)
};

// Exact census by depth-first enumeration with visited backtracking.
SawCensus saw_census(int max_len);

// Deterministic fan-out helper: splits [0, total) into per-thread contiguous
// chunks, sums the returned counts. chunk(begin, end) must derive all
// randomness from sample indices.
uint64_t parallel_count(uint64_t total, int threads,
                        const std::function<uint64_t(uint64_t, uint64_t)>& chunk);

}  // namespace oriperc
