#include "oriperc/estimators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "oriperc/dual_events.hpp"
#include "oriperc/model.hpp"
#include "oriperc/reach.hpp"
#include "oriperc/slab.hpp"

namespace oriperc {

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("normal_quantile: q outside (0,1)");
  auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  double lo = -40.0, hi = 40.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Estimate wilson_ci(uint64_t successes, uint64_t samples, double level) {
  if (samples == 0) throw std::invalid_argument("wilson_ci: no samples");
  if (successes > samples) throw std::invalid_argument("wilson_ci: successes > samples");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("wilson_ci: bad level");
  const double n = static_cast<double>(samples);
  const double ph = static_cast<double>(successes) / n;
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half = (z / denom) * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
  Estimate e;
  e.p_hat = ph;
  e.successes = successes;
  e.samples = samples;
  e.ci_lo = std::max(0.0, center - half);
  e.ci_hi = std::min(1.0, center + half);
  e.level = level;
  return e;
}

uint64_t parallel_count(uint64_t total, int threads,
                        const std::function<uint64_t(uint64_t, uint64_t)>& chunk) {
  int nw = threads;
  if (nw <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    nw = hw ? static_cast<int>(hw) : 1;
  }
  if (total == 0) return 0;
  nw = static_cast<int>(std::min<uint64_t>(nw, total));
  if (nw == 1) return chunk(0, total);
  std::vector<uint64_t> partial(nw, 0);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int t = 0; t < nw; ++t) {
    const uint64_t b = total * t / nw, e = total * (t + 1) / nw;
    pool.emplace_back([&, t, b, e] { partial[t] = chunk(b, e); });
  }
  for (auto& th : pool) th.join();
  uint64_t sum = 0;
  for (uint64_t v : partial) sum += v;
  return sum;
}

namespace {

Region natural_region(Law law, int n) {
  switch (law) {
    case Law::NEQuadrant: return Region::quadrant(n);
    case Law::Grimmett3DSlab: return Region::slab(n);
    default: return Region::box(n);
  }
}

}  // namespace

Estimate reach_probability(const ModelSpec& model, int n, uint64_t samples, uint64_t seed,
                           double level, int threads, Statistic stat) {
  if (n < 1) throw std::invalid_argument("reach_probability: n must be >= 1");
  if (samples == 0) throw std::invalid_argument("reach_probability: no samples");
  auto geo = shared_geometry(natural_region(model.law, n));

  uint64_t hits;
  if (model.law == Law::IndependentArcs) {
    if (stat == Statistic::OutwardReach)
      throw std::invalid_argument("outward statistic is orientation-law only");
    hits = parallel_count(samples, threads, [&](uint64_t b, uint64_t e) {
      ArcSet s = ArcSet::sample(model.a, model.b, geo, rng::derive(seed, b, rng::Stream::sample));
      ReachScratch sc;
      uint64_t c = 0;
      for (uint64_t i = b; i < e; ++i) {
        s.resample(rng::derive(seed, i, rng::Stream::sample));
        if (reaches_shell(s, sc)) ++c;
      }
      return c;
    });
  } else {
    const bool outward = stat == Statistic::OutwardReach;
    hits = parallel_count(samples, threads, [&](uint64_t b, uint64_t e) {
      Config c = Config::sample(model, geo, rng::derive(seed, b, rng::Stream::sample));
      ReachScratch sc;
      uint64_t cnt = 0;
      for (uint64_t i = b; i < e; ++i) {
        c.resample(rng::derive(seed, i, rng::Stream::sample));
        if (reaches_shell(c, sc, outward)) ++cnt;
      }
      return cnt;
    });
  }
  return wilson_ci(hits, samples, level);
}

Decimal Decimal::parse(const std::string& text) {
  if (text.empty() || text.size() > 18) throw std::invalid_argument("bad decimal: " + text);
  Decimal d;
  int64_t digits = 0;
  int exponent = 0;
  bool seen_dot = false, seen_digit = false;
  for (char ch : text) {
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + text);
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits = digits * 10 + (ch - '0');
      if (seen_dot) ++exponent;
      seen_digit = true;
    } else {
      throw std::invalid_argument("bad decimal: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal: " + text);
  d.digits = digits;
  d.exponent = exponent;
  return d;
}

std::string Decimal::str() const {
  int64_t scale = 1;
  for (int i = 0; i < exponent; ++i) scale *= 10;
  const int64_t ip = digits / scale;
  int64_t fp = digits % scale;
  std::string out = std::to_string(ip);
  if (fp == 0) return out;
  std::string frac(exponent, '0');
  for (int i = exponent - 1; i >= 0; --i) {
    frac[i] = static_cast<char>('0' + fp % 10);
    fp /= 10;
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  return out + "." + frac;
}

double Decimal::value() const {
  double scale = 1.0;
  for (int i = 0; i < exponent; ++i) scale *= 10.0;
  return static_cast<double>(digits) / scale;
}

std::vector<Decimal> decimal_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos)
    throw std::invalid_argument("grid must be start:stop:step");
  Decimal start = Decimal::parse(spec.substr(0, c1));
  Decimal stop = Decimal::parse(spec.substr(c1 + 1, c2 - c1 - 1));
  Decimal step = Decimal::parse(spec.substr(c2 + 1));
  const int e = std::max({start.exponent, stop.exponent, step.exponent});
  auto rescale = [&](Decimal& d) {
    for (int i = d.exponent; i < e; ++i) d.digits *= 10;
    d.exponent = e;
  };
  rescale(start);
  rescale(stop);
  rescale(step);
  if (step.digits <= 0) throw std::invalid_argument("grid step must be positive");
  std::vector<Decimal> out;
  for (int64_t v = start.digits; v <= stop.digits; v += step.digits) {
    out.push_back({v, e});
    if (out.size() > 100000) throw std::invalid_argument("grid too large");
  }
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

std::string SweepTable::to_csv() const {
  bool layered = false;
  for (const auto& r : rows)
    if (!r.layer.empty()) layered = true;
  std::string out = "model,p,a,b,n,samples,successes,p_hat,ci_lo,ci_hi,seed";
  if (layered) out += ",layer_model";
  out += "\n";
  for (const auto& r : rows) {
    out += r.model;
    out += ',';
    if (!r.has_ab) out += r.p.str();
    out += ',';
    if (r.has_ab) out += r.a.str();
    out += ',';
    if (r.has_ab) out += r.b.str();
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.est.samples);
    out += ',';
    out += std::to_string(r.est.successes);
    out += ',';
    out += fmt_double(r.est.p_hat);
    out += ',';
    out += fmt_double(r.est.ci_lo);
    out += ',';
    out += fmt_double(r.est.ci_hi);
    out += ',';
    out += std::to_string(r.cell_seed);
    if (layered) {
      out += ',';
      out += r.layer;
    }
    out += '\n';
  }
  return out;
}

std::string SweepTable::to_jsonl() const {
  std::string out;
  for (const auto& r : rows) {
    nlohmann::json j;
    j["model"] = r.model;
    if (r.has_ab) {
      j["a"] = r.a.value();
      j["b"] = r.b.value();
    } else {
      j["p"] = r.p.value();
    }
    j["n"] = r.n;
    j["samples"] = r.est.samples;
    j["successes"] = r.est.successes;
    j["p_hat"] = r.est.p_hat;
    j["ci_lo"] = r.est.ci_lo;
    j["ci_hi"] = r.est.ci_hi;
    j["seed"] = r.cell_seed;
    if (!r.layer.empty()) j["layer_model"] = r.layer;
    out += j.dump();
    out += '\n';
  }
  return out;
}

SweepTable sweep(Law law, const std::vector<Decimal>& p_grid, const std::vector<int>& sizes,
                 uint64_t samples, uint64_t seed, double level, int threads, Statistic stat) {
  if (law == Law::IndependentArcs)
    throw std::invalid_argument("sweep: independent arcs use sweep_arcs");
  SweepTable t;
  t.seed = seed;
  t.samples_per_cell = samples;
  t.level = level;
  for (size_t pi = 0; pi < p_grid.size(); ++pi) {
    ModelSpec model{law, p_grid[pi].value(), 0, 0};
    for (size_t ni = 0; ni < sizes.size(); ++ni) {
      SweepCell cell;
      cell.model = law_name(law);
      cell.p = p_grid[pi];
      cell.n = sizes[ni];
      cell.cell_seed = rng::prf(seed, (static_cast<uint64_t>(pi) << 32) | ni, rng::Stream::cell);
      cell.est = reach_probability(model, sizes[ni], samples, cell.cell_seed, level, threads, stat);
      t.rows.push_back(std::move(cell));
    }
  }
  return t;
}

SweepTable sweep_arcs(const std::vector<Decimal>& a_grid, const std::vector<Decimal>& b_grid,
                      const std::vector<int>& sizes, uint64_t samples, uint64_t seed,
                      double level, int threads) {
  SweepTable t;
  t.seed = seed;
  t.samples_per_cell = samples;
  t.level = level;
  std::vector<std::pair<Decimal, Decimal>> pairs;
  if (a_grid.size() == b_grid.size()) {
    for (size_t i = 0; i < a_grid.size(); ++i) pairs.emplace_back(a_grid[i], b_grid[i]);
  } else {
    for (const auto& a : a_grid)
      for (const auto& b : b_grid) pairs.emplace_back(a, b);
  }
  for (size_t pi = 0; pi < pairs.size(); ++pi) {
    ModelSpec model = ModelSpec::arcs(pairs[pi].first.value(), pairs[pi].second.value());
    for (size_t ni = 0; ni < sizes.size(); ++ni) {
      SweepCell cell;
      cell.model = law_name(Law::IndependentArcs);
      cell.has_ab = true;
      cell.a = pairs[pi].first;
      cell.b = pairs[pi].second;
      cell.n = sizes[ni];
      cell.cell_seed = rng::prf(seed, (static_cast<uint64_t>(pi) << 32) | ni, rng::Stream::cell);
      cell.est = reach_probability(model, sizes[ni], samples, cell.cell_seed, level, threads);
      t.rows.push_back(std::move(cell));
    }
  }
  return t;
}

namespace {

Estimate enriched_reach_probability(double p, int n, uint64_t samples, uint64_t seed,
                                    double level, int threads) {
  auto slab_geo = shared_geometry(Region::slab(n));
  const uint64_t hits = parallel_count(samples, threads, [&](uint64_t b, uint64_t e) {
    CoupledSample cs = sample_coupled(p, slab_geo, rng::derive(seed, b, rng::Stream::sample));
    ReachScratch sc;
    uint64_t c = 0;
    for (uint64_t i = b; i < e; ++i) {
      resample_coupled(cs, rng::derive(seed, i, rng::Stream::sample));
      ArcSet enriched = enrich(cs.avail, cs.config);
      if (reaches_shell(enriched, sc)) ++c;
    }
    return c;
  });
  return wilson_ci(hits, samples, level);
}

}  // namespace

SweepTable slab_sweep(const std::vector<Decimal>& p_grid, const std::vector<int>& sizes,
                      uint64_t samples, uint64_t seed, double level, int threads) {
  SweepTable t;
  t.seed = seed;
  t.samples_per_cell = samples;
  t.level = level;
  static const char* layers[3] = {"slab", "plane", "enriched"};
  for (size_t pi = 0; pi < p_grid.size(); ++pi) {
    const double p = p_grid[pi].value();
    for (size_t ni = 0; ni < sizes.size(); ++ni) {
      const int n = sizes[ni];
      for (int li = 0; li < 3; ++li) {
        SweepCell cell;
        cell.p = p_grid[pi];
        cell.n = n;
        cell.layer = layers[li];
        cell.cell_seed = rng::prf(
            seed, (static_cast<uint64_t>(pi) << 32) | (static_cast<uint64_t>(ni) << 2) | li,
            rng::Stream::cell);
        switch (li) {
          case 0:
            cell.model = law_name(Law::Grimmett3DSlab);
            cell.est = reach_probability(ModelSpec::slab(p), n, samples, cell.cell_seed, level,
                                         threads);
            break;
          case 1:
            cell.model = law_name(Law::Grimmett2D);
            cell.est = reach_probability(ModelSpec::grimmett(p), n, samples, cell.cell_seed,
                                         level, threads);
            break;
          case 2:
            cell.model = law_name(Law::Grimmett3DSlab);
            cell.est = enriched_reach_probability(p, n, samples, cell.cell_seed, level, threads);
            break;
        }
        t.rows.push_back(std::move(cell));
      }
    }
  }
  return t;
}

std::optional<double> crossing_point(const SweepTable& table, int n1, int n2) {
  struct Pt {
    double p;
    double v1 = -1.0, v2 = -1.0;
  };
  std::vector<Pt> pts;
  auto slot = [&](double p) -> Pt& {
    for (auto& q : pts)
      if (q.p == p) return q;
    pts.push_back({p});
    return pts.back();
  };
  for (const auto& r : table.rows) {
    if (r.has_ab || !r.layer.empty()) continue;
    if (r.n == n1) slot(r.p.value()).v1 = r.est.p_hat;
    if (r.n == n2) slot(r.p.value()).v2 = r.est.p_hat;
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.p < b.p; });
  for (const auto& q : pts)
    if (q.v1 < 0.0 || q.v2 < 0.0) throw std::invalid_argument("crossing_point: sizes missing");
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double d0 = pts[i].v1 - pts[i].v2;
    const double d1 = pts[i + 1].v1 - pts[i + 1].v2;
    if (d0 * d1 < 0.0)
      return pts[i].p + (pts[i + 1].p - pts[i].p) * d0 / (d0 - d1);
  }
  return std::nullopt;
}

Estimate circuit_probability(double p, int inner, int outer, uint64_t samples, uint64_t seed,
                             double level, int threads) {
  if (!(inner >= 1 && inner < outer))
    throw std::invalid_argument("circuit_probability: need 1 <= inner < outer");
  if (samples == 0) throw std::invalid_argument("circuit_probability: no samples");
  auto geo = shared_geometry(Region::annulus(inner, outer));
  auto dgeo = shared_dual_geometry(geo);
  const ModelSpec model = ModelSpec::h(p);
  const uint64_t hits = parallel_count(samples, threads, [&](uint64_t b, uint64_t e) {
    Config c = Config::sample(model, geo, rng::derive(seed, b, rng::Stream::sample));
    DualConfig d = DualConfig::dualize(c, DualVariant::U, dgeo);
    uint64_t cnt = 0;
    for (uint64_t i = b; i < e; ++i) {
      c.resample(rng::derive(seed, i, rng::Stream::sample));
      d.redualize(c);
      if (detect_circuit(d, +1)) ++cnt;
    }
    return cnt;
  });
  return wilson_ci(hits, samples, level);
}

SawCensus saw_census(int max_len) {
  if (max_len < 1 || max_len > 20)
    throw std::invalid_argument("saw_census: max_len must be in [1, 20]");
  SawCensus out;
  out.counts.assign(max_len, 0);
  const int r = max_len + 1;
  const int w = 2 * r + 1;
  std::vector<uint8_t> visited(static_cast<size_t>(w) * w, 0);
  auto at = [&](int x, int y) -> uint8_t& {
    return visited[static_cast<size_t>(x + r) * w + (y + r)];
  };
  constexpr int dx[4] = {1, -1, 0, 0};
  constexpr int dy[4] = {0, 0, 1, -1};
  // iterative DFS: each stack entry is (x, y, next direction to try)
  struct Frame {
    int x, y, dir;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0, 0});
  at(0, 0) = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.dir == 4 || static_cast<int>(stack.size()) > max_len) {
      at(f.x, f.y) = 0;
      stack.pop_back();
      continue;
    }
    const int nx = f.x + dx[f.dir], ny = f.y + dy[f.dir];
    ++f.dir;
    if (at(nx, ny)) continue;
    ++out.counts[stack.size() - 1];
    if (static_cast<int>(stack.size()) < max_len) {
      at(nx, ny) = 1;
      stack.push_back({nx, ny, 0});
    }
  }
  out.mu_hat.resize(max_len);
  for (int len = 1; len <= max_len; ++len)
    out.mu_hat[len - 1] = std::pow(static_cast<double>(out.counts[len - 1]), 1.0 / len);
  return out;
}

}  // namespace oriperc
