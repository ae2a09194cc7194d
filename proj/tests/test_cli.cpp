#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(ORIPERC_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sweep writes a reproducible csv with a manifest") {
  const RunResult r1 = run(
      "sweep --model h --p 0.4:0.5:0.1 --sizes 2,3 --samples 200 --seed 5 --out cli_sweep_a.csv");
  CHECK(r1.code == 0);
  const std::string a = slurp("cli_sweep_a.csv");
  CHECK(a.rfind("model,p,a,b,n,samples,successes,p_hat,ci_lo,ci_hi,seed\n", 0) == 0);
  // header + 2 p values x 2 sizes
  CHECK(std::count(a.begin(), a.end(), '\n') == 5);

  const RunResult r2 = run(
      "sweep --model h --p 0.4:0.5:0.1 --sizes 2,3 --samples 200 --seed 5 --out cli_sweep_b.csv");
  CHECK(r2.code == 0);
  CHECK(slurp("cli_sweep_b.csv") == a);

  const RunResult r3 = run(
      "sweep --model h --p 0.4:0.5:0.1 --sizes 2,3 --samples 200 --seed 5 --threads 8 "
      "--out cli_sweep_c.csv");
  CHECK(r3.code == 0);
  CHECK(slurp("cli_sweep_c.csv") == a);

  const nlohmann::json man = nlohmann::json::parse(slurp("cli_sweep_a.csv.manifest.json"));
  CHECK(man.at("command") == "sweep");
  CHECK(man.at("seed") == 5);
  CHECK(man.at("outputs").at(0) == "cli_sweep_a.csv");
  CHECK(man.at("argv").is_array());
  bool saw_model = false;
  for (const auto& v : man.at("argv")) saw_model |= v == "--model";
  CHECK(saw_model);
  CHECK(man.contains("started"));
  CHECK(man.contains("finished"));
  CHECK(man.contains("version"));
}

TEST_CASE("bad invocations exit with status 2") {
  CHECK(run("sweep --model h --p 0.5:0.4:0.1 --sizes 2 --samples 10 --seed 1").code == 2);
  CHECK(run("sweep --model pyramid --p 0.5 --sizes 2 --samples 10 --seed 1").code == 2);
  CHECK(run("sweep --model h --p 0.5 --sizes 2 --samples 10 --seed 1 --no-such-flag").code == 2);
  CHECK(run("oracle --model h --region box:3 --event reach --p 0.5").code == 2);
  CHECK(run("oracle --model arcs --region box:1 --event reach --p 0.5").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("sweep --help").code == 0);
}

TEST_CASE("oracle reports exact probabilities as json") {
  const RunResult full = run("oracle --model h --region quad:1 --event reach --p 1.0");
  CHECK(full.code == 0);
  const nlohmann::json j = nlohmann::json::parse(full.out);
  CHECK(j.at("probability").get<double>() == 1.0);
  CHECK(j.at("edges").get<int>() == 4);

  // a zero-radius window puts the origin on its own shell
  const RunResult tiny = run("oracle --model h --region box:0 --event reach --p 0.3");
  CHECK(tiny.code == 0);
  CHECK(nlohmann::json::parse(tiny.out).at("probability").get<double>() == 1.0);

  const RunResult frozen = run("oracle --model ne --region quad:2 --event reach --p 0.5");
  CHECK(frozen.code == 0);
  CHECK(nlohmann::json::parse(frozen.out).at("probability").get<double>() ==
        doctest::Approx(0.57421875).epsilon(1e-12));
}

TEST_CASE("dual-check passes on the exhaustive window") {
  const RunResult r = run("dual-check --size 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("violations: 0") != std::string::npos);
  CHECK(r.out.find("configurations: 4096") != std::string::npos);
}

TEST_CASE("saw prints the census with growth estimates") {
  const RunResult r = run("saw --max-len 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("len  1: 4 ") != std::string::npos);
  CHECK(r.out.find("len  2: 12 ") != std::string::npos);
  CHECK(r.out.find("len  3: 36 ") != std::string::npos);
  CHECK(r.out.find("len  4: 100 ") != std::string::npos);
}

TEST_CASE("render emits an svg with arrowheads and a highlighted walk") {
  const RunResult r = run(
      "render --model h --p 1.0 --size 3 --seed 2 --highlight path --out cli_render.svg");
  CHECK(r.code == 0);
  const std::string svg = slurp("cli_render.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("marker") != std::string::npos);
  // p = 1 pushes every arc outward, so the escape walk must be drawn
  CHECK(svg.find("polyline") != std::string::npos);

  const RunResult plain = run(
      "render --model arcs --a 0.6 --b 0.2 --size 3 --seed 2 --out cli_render_arcs.svg");
  CHECK(plain.code == 0);
  CHECK(slurp("cli_render_arcs.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("a run can be reproduced from its manifest argv") {
  REQUIRE(run("sweep --model ne --p 0.45 --sizes 3 --samples 150 --seed 8 --out cli_repro_a.csv")
              .code == 0);
  const nlohmann::json man = nlohmann::json::parse(slurp("cli_repro_a.csv.manifest.json"));
  CHECK(man.at("command") == "sweep");
  CHECK(man.at("argv").at(0) == "sweep");  // argv includes the subcommand, so replay it verbatim
  std::string args;
  for (const auto& v : man.at("argv")) {
    std::string s = v.get<std::string>();
    if (s == "cli_repro_a.csv") s = "cli_repro_b.csv";
    if (!args.empty()) args += " ";
    args += s;
  }
  REQUIRE(run(args).code == 0);
  CHECK(slurp("cli_repro_b.csv") == slurp("cli_repro_a.csv"));
}
