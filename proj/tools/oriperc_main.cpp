#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oriperc/dual.hpp"
#include "oriperc/dual_events.hpp"
#include "oriperc/estimators.hpp"
#include "oriperc/exhaustive.hpp"
#include "oriperc/reach.hpp"
#include "oriperc/slab.hpp"
#include "oriperc/svg.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace oriperc;

std::string iso_time(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Every file-producing run drops <out>.manifest.json next to the output so
// the exact invocation can be replayed.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();

  void write() const {
    if (outputs.empty()) return;
    nlohmann::json j;
    j["tool"] = "oriperc";
    j["version"] = kVersion;
    j["command"] = command;
    j["argv"] = argv;
    j["seed"] = seed;
    j["outputs"] = outputs;
    j["started"] = iso_time(started);
    j["finished"] = iso_time(std::chrono::system_clock::now());
    std::ofstream f(outputs.front() + ".manifest.json");
    f << j.dump(2) << "\n";
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("ORIPERC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

std::vector<Decimal> parse_grid_or_value(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    auto g = decimal_grid(text);
    if (g.empty()) throw std::invalid_argument("empty grid: " + text);
    return g;
  }
  return {Decimal::parse(text)};
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t c = text.find(',', pos);
    const std::string tok = text.substr(pos, c == std::string::npos ? c : c - pos);
    if (tok.empty()) throw std::invalid_argument("bad size list: " + text);
    size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 1) throw std::invalid_argument("bad size: " + tok);
    out.push_back(v);
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}

Law parse_law(const std::string& name) { return law_from_name(name); }

Region parse_oracle_region(const std::string& text) {
  const auto c = text.find(':');
  if (c == std::string::npos) throw std::invalid_argument("region must be box:N or quad:N");
  const std::string kind = text.substr(0, c);
  const int n = std::stoi(text.substr(c + 1));
  if (n < 0) throw std::invalid_argument("negative region radius");
  if (kind == "box") return Region::box(n);
  if (kind == "quad") return Region::quadrant(n);
  throw std::invalid_argument("region must be box:N or quad:N");
}

// ---- subcommand bodies -------------------------------------------------

struct SweepFlags {
  std::string model = "h";
  std::string p, a, b;
  std::string sizes = "8";
  uint64_t samples = 1000;
  uint64_t seed = 0;
  int threads = 0;
  std::string statistic = "reach";
  std::string format = "csv";
  std::string out;
};

int run_sweep(const SweepFlags& f, Manifest& man) {
  const Law law = parse_law(f.model);
  const auto sizes = parse_sizes(f.sizes);
  const int threads = resolve_threads(f.threads);
  Statistic stat = Statistic::Reach;
  if (f.statistic == "outward")
    stat = Statistic::OutwardReach;
  else if (f.statistic != "reach")
    throw std::invalid_argument("statistic must be reach or outward");

  SweepTable table;
  if (law == Law::IndependentArcs) {
    if (f.a.empty() || f.b.empty()) throw std::invalid_argument("arcs sweep needs --a and --b");
    table = sweep_arcs(parse_grid_or_value(f.a), parse_grid_or_value(f.b), sizes, f.samples,
                       f.seed, 0.95, threads);
  } else {
    if (f.p.empty()) throw std::invalid_argument("sweep needs --p");
    table = sweep(law, parse_grid_or_value(f.p), sizes, f.samples, f.seed, 0.95, threads, stat);
  }
  const std::string text = f.format == "jsonl" ? table.to_jsonl() : table.to_csv();
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_file(f.out, text);
    man.outputs.push_back(f.out);
  }
  man.seed = f.seed;
  return 0;
}

struct OracleFlags {
  std::string model = "h";
  std::string region = "quad:2";
  std::string event = "reach";
  double p = 0.5;
  int start_col = 1;
  int inner = 0;
  int outer = -1;
  std::string out;
};

int run_oracle(const OracleFlags& f, Manifest& man) {
  const Law law = parse_law(f.model);
  if (law == Law::IndependentArcs || law == Law::Grimmett3DSlab)
    throw std::invalid_argument("oracle supports the planar orientation laws");
  const Region region = parse_oracle_region(f.region);
  const ModelSpec model{law, f.p, 0, 0};

  EventFactory factory;
  if (f.event == "reach")
    factory = make_shell_reach_event();
  else if (f.event == "bplus")
    factory = make_bplus_event(f.start_col, f.inner, f.outer);
  else if (f.event == "circuit")
    factory = make_circuit_event(+1);
  else
    throw std::invalid_argument("event must be reach, bplus, or circuit");

  const EventProbability r = exhaustive_probability(model, region, factory, 1);
  nlohmann::json j;
  j["model"] = law_name(law);
  j["region"] = region.to_string();
  j["event"] = f.event;
  j["p"] = f.p;
  j["probability"] = r.probability;
  j["configurations"] = r.configurations;
  j["edges"] = r.edges;
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!f.out.empty()) {
    write_file(f.out, text);
    man.outputs.push_back(f.out);
  }
  return 0;
}

int run_dual_check(int size, const std::string& out, Manifest& man) {
  std::ofstream sink_file;
  std::function<void(const DualCheckRecord&)> sink;
  if (!out.empty()) {
    sink_file.open(out, std::ios::binary);
    if (!sink_file) throw std::runtime_error("cannot write " + out);
    sink = [&](const DualCheckRecord& rec) {
      nlohmann::json j;
      j["coins"] = rec.coins;
      j["primal_escape"] = rec.primal_escape;
      j["dual_blocking"] = rec.dual_blocking;
      sink_file << j.dump() << "\n";
    };
    man.outputs.push_back(out);
  }
  const DualCheckSummary s = oriperc::run_dual_check(size, sink);
  std::cout << "configurations: " << s.configurations << "\n";
  std::cout << "primal escapes: " << s.primal_escapes << "\n";
  std::cout << "violations: " << s.violations << "\n";
  return s.violations == 0 ? 0 : 1;
}

struct CircuitFlags {
  double p = 0.3;
  int inner = 4;
  int outer = 32;
  uint64_t samples = 10000;
  uint64_t seed = 0;
  int threads = 0;
  std::string out;
};

int run_circuit(const CircuitFlags& f, Manifest& man) {
  const Estimate e =
      circuit_probability(f.p, f.inner, f.outer, f.samples, f.seed, 0.99, resolve_threads(f.threads));
  nlohmann::json j;
  j["p"] = f.p;
  j["inner"] = f.inner;
  j["outer"] = f.outer;
  j["samples"] = e.samples;
  j["successes"] = e.successes;
  j["p_hat"] = e.p_hat;
  j["ci_lo"] = e.ci_lo;
  j["ci_hi"] = e.ci_hi;
  j["level"] = e.level;
  j["seed"] = f.seed;
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!f.out.empty()) {
    write_file(f.out, text);
    man.outputs.push_back(f.out);
  }
  man.seed = f.seed;
  return 0;
}

struct SlabFlags {
  std::string p = "0.5";
  std::string sizes = "16,32";
  uint64_t samples = 2000;
  uint64_t seed = 0;
  int threads = 0;
  std::string format = "csv";
  std::string out;
};

int run_slab(const SlabFlags& f, Manifest& man) {
  const SweepTable table = slab_sweep(parse_grid_or_value(f.p), parse_sizes(f.sizes), f.samples,
                                      f.seed, 0.95, resolve_threads(f.threads));
  const std::string text = f.format == "jsonl" ? table.to_jsonl() : table.to_csv();
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_file(f.out, text);
    man.outputs.push_back(f.out);
  }
  man.seed = f.seed;
  return 0;
}

int run_saw(int max_len, const std::string& out, Manifest& man) {
  const SawCensus c = saw_census(max_len);
  for (size_t i = 0; i < c.counts.size(); ++i) {
    char line[96];
    std::snprintf(line, sizeof(line), "len %2zu: %llu (growth %.6f)\n", i + 1,
                  static_cast<unsigned long long>(c.counts[i]), c.mu_hat[i]);
    std::cout << line;
  }
  if (!out.empty()) {
    nlohmann::json j;
    j["max_len"] = max_len;
    j["counts"] = c.counts;
    j["mu_hat"] = c.mu_hat;
    write_file(out, j.dump(2) + "\n");
    man.outputs.push_back(out);
  }
  return 0;
}

struct RenderFlags {
  std::string model = "h";
  double p = 0.5;
  double a = 0.5, b = 0.5;
  int size = 6;
  uint64_t seed = 0;
  std::string highlight;
  std::string out;
};

int run_render(const RenderFlags& f, Manifest& man) {
  const Law law = parse_law(f.model);
  RenderOptions opt;
  std::string svg;

  if (law == Law::IndependentArcs) {
    if (!f.highlight.empty()) throw std::invalid_argument("highlight needs an orientation law");
    auto geo = shared_geometry(Region::box(f.size));
    ArcSet s = ArcSet::sample(f.a, f.b, geo, f.seed);
    svg = render_svg(s, opt);
  } else {
    Region region = Region::box(f.size);
    if (law == Law::NEQuadrant) region = Region::quadrant(f.size);
    if (law == Law::Grimmett3DSlab) region = Region::slab(f.size);
    auto geo = shared_geometry(region);
    Config c = Config::sample(ModelSpec{law, f.p, 0, 0}, geo, f.seed);

    if (f.highlight == "path") {
      std::vector<Site> targets;
      for (int32_t idx : geo->shell()) targets.push_back(geo->sites()[idx]);
      if (auto path = reach(c, Site{0, 0, 0}, targets))
        for (const Site& s : *path) opt.highlight.emplace_back(s.x, s.y);
    } else if (f.highlight == "circuit") {
      DualConfig d = DualConfig::dualize(c, DualVariant::U);
      if (auto w = detect_circuit(d, 0)) {
        for (const DualSite& s : w->cycle) {
          const auto [px, py] = dual_point(s);
          opt.highlight.emplace_back(px, py);
        }
        if (!w->cycle.empty()) {
          const auto [px, py] = dual_point(w->cycle.front());
          opt.highlight.emplace_back(px, py);  // close the loop
        }
      }
    } else if (!f.highlight.empty()) {
      throw std::invalid_argument("highlight must be path or circuit");
    }
    svg = render_svg(c, opt);
  }

  if (f.out.empty()) {
    std::cout << svg;
  } else {
    write_file(f.out, svg);
    man.outputs.push_back(f.out);
  }
  man.seed = f.seed;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oriperc: random-orientation percolation sampling and exact analysis"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SweepFlags sw;
  auto* cmd_sweep = app.add_subcommand("sweep", "escape-probability table over a parameter grid");
  cmd_sweep->add_option("--model", sw.model, "grimmett|h|ne|slab|arcs");
  cmd_sweep->add_option("--p", sw.p, "grid start:stop:step, or one value");
  cmd_sweep->add_option("--a", sw.a, "forward-arc grid (arcs model)");
  cmd_sweep->add_option("--b", sw.b, "backward-arc grid (arcs model)");
  cmd_sweep->add_option("--sizes", sw.sizes, "comma list of window radii");
  cmd_sweep->add_option("--samples", sw.samples, "samples per cell");
  cmd_sweep->add_option("--seed", sw.seed, "master seed");
  cmd_sweep->add_option("--threads", sw.threads, "worker threads (0 = env/1)");
  cmd_sweep->add_option("--statistic", sw.statistic, "reach|outward");
  cmd_sweep->add_option("--format", sw.format, "csv|jsonl");
  cmd_sweep->add_option("--out", sw.out, "output path (stdout when omitted)");

  OracleFlags orf;
  auto* cmd_oracle = app.add_subcommand("oracle", "exact event probability by full enumeration");
  cmd_oracle->add_option("--model", orf.model, "grimmett|h|ne");
  cmd_oracle->add_option("--region", orf.region, "box:N or quad:N (at most 24 edges)");
  cmd_oracle->add_option("--event", orf.event, "reach|bplus|circuit");
  cmd_oracle->add_option("--p", orf.p, "edge parameter");
  cmd_oracle->add_option("--start-col", orf.start_col, "bplus start column");
  cmd_oracle->add_option("--inner", orf.inner, "bplus confinement, inner radius");
  cmd_oracle->add_option("--outer", orf.outer, "bplus confinement, outer bound (-1 = none)");
  cmd_oracle->add_option("--out", orf.out, "also write the JSON here");

  int dc_size = 2;
  std::string dc_out;
  auto* cmd_dc = app.add_subcommand("dual-check", "exhaustive escape-vs-blocking complementarity");
  cmd_dc->add_option("--size", dc_size, "quadrant radius (edge count capped at 20)");
  cmd_dc->add_option("--out", dc_out, "JSONL per-configuration records");

  CircuitFlags cf;
  auto* cmd_circ = app.add_subcommand("circuit", "encircling dual circuit frequency in an annulus");
  cmd_circ->add_option("--p", cf.p, "outward-law parameter");
  cmd_circ->add_option("--inner", cf.inner, "annulus inner radius");
  cmd_circ->add_option("--outer", cf.outer, "annulus outer radius");
  cmd_circ->add_option("--samples", cf.samples, "sample count");
  cmd_circ->add_option("--seed", cf.seed, "master seed");
  cmd_circ->add_option("--threads", cf.threads, "worker threads (0 = env/1)");
  cmd_circ->add_option("--out", cf.out, "JSON result path");

  SlabFlags sf;
  auto* cmd_slab = app.add_subcommand("slab", "slab vs plane vs enriched escape comparison");
  cmd_slab->add_option("--p", sf.p, "grid start:stop:step, or one value");
  cmd_slab->add_option("--sizes", sf.sizes, "comma list of window radii");
  cmd_slab->add_option("--samples", sf.samples, "samples per cell");
  cmd_slab->add_option("--seed", sf.seed, "master seed");
  cmd_slab->add_option("--threads", sf.threads, "worker threads (0 = env/1)");
  cmd_slab->add_option("--format", sf.format, "csv|jsonl");
  cmd_slab->add_option("--out", sf.out, "output path (stdout when omitted)");

  int saw_len = 10;
  std::string saw_out;
  auto* cmd_saw = app.add_subcommand("saw", "exact self-avoiding path census");
  cmd_saw->add_option("--max-len", saw_len, "longest path length (<= 20)");
  cmd_saw->add_option("--out", saw_out, "JSON census path");

  RenderFlags rf;
  auto* cmd_render = app.add_subcommand("render", "SVG snapshot of one sampled configuration");
  cmd_render->add_option("--model", rf.model, "grimmett|h|ne|slab|arcs");
  cmd_render->add_option("--p", rf.p, "edge parameter");
  cmd_render->add_option("--a", rf.a, "forward-arc probability (arcs model)");
  cmd_render->add_option("--b", rf.b, "backward-arc probability (arcs model)");
  cmd_render->add_option("--size", rf.size, "window radius");
  cmd_render->add_option("--seed", rf.seed, "sample seed");
  cmd_render->add_option("--highlight", rf.highlight, "path|circuit witness overlay");
  cmd_render->add_option("--out", rf.out, "SVG path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Manifest man;
  man.command = app.get_subcommands().front()->get_name();
  for (int i = 1; i < argc; ++i) man.argv.emplace_back(argv[i]);

  int rc = 2;
  try {
    if (cmd_sweep->parsed()) rc = run_sweep(sw, man);
    if (cmd_oracle->parsed()) rc = run_oracle(orf, man);
    if (cmd_dc->parsed()) rc = run_dual_check(dc_size, dc_out, man);
    if (cmd_circ->parsed()) rc = run_circuit(cf, man);
    if (cmd_slab->parsed()) rc = run_slab(sf, man);
    if (cmd_saw->parsed()) rc = run_saw(saw_len, saw_out, man);
    if (cmd_render->parsed()) rc = run_render(rf, man);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  man.write();
  return rc;
}
