#include "doctest.h"
#include "shotnoise/grid.hpp"
#include "shotnoise/saddle.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace shotnoise;

namespace {

DensityGrid sample_grid() {
  DensityGrid g;
  g.x = {-1.0, 0.0, 1.5};
  g.f = {0.25, 2.0, 0.125};
  g.method = "fourier-split";
  g.x1 = 10.0;
  g.x2 = 200.0;
  g.step = 0.01;
  g.err_estimate = 1.3e-4;
  g.extra.push_back({"stderr", {0.01, 0.02, 0.03}});
  return g;
}

int run_cli(const std::string& args) {
  int rc = std::system(("./shotnoise " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

bool have_cli() {
  std::ifstream f("./shotnoise");
  return f.good();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("grid spec parsing") {
  auto g = parse_grid_spec("0:6:301");
  CHECK(g.size() == 301);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 6.0);
  CHECK(g[1] == doctest::Approx(0.02).epsilon(1e-15));

  auto one = parse_grid_spec("2.5:9:1");
  CHECK(one.size() == 1);
  CHECK(one[0] == 2.5);

  auto neg = parse_grid_spec("-3:3:7");
  CHECK(neg[3] == 0.0);

  CHECK_THROWS_AS(parse_grid_spec("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("1:2:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("a:b:c"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("1:2:3:4"), std::invalid_argument);
}

TEST_CASE("csv round-trip preserves every field bit-exactly") {
  auto g = sample_grid();
  std::string csv = to_csv(g);
  CHECK(csv.substr(0, csv.find('\n')) == "x,f,method,err,stderr");
  auto back = from_csv(csv);
  CHECK(back.x == g.x);
  CHECK(back.f == g.f);
  CHECK(back.method == g.method);
  CHECK(back.err_estimate == g.err_estimate);
  REQUIRE(back.extra.size() == 1);
  CHECK(back.extra[0].name == "stderr");
  CHECK(back.extra[0].values == g.extra[0].values);
  // serialization is deterministic
  CHECK(to_csv(back) == csv);

  CHECK_THROWS_AS(from_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(from_csv("a,b\n1,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_csv("x,f,method,err\n1,2,m\n"), std::invalid_argument);
}

TEST_CASE("json round-trip preserves fields and config echo") {
  auto g = sample_grid();
  auto back = from_json(to_json(g));
  CHECK(back.x == g.x);
  CHECK(back.f == g.f);
  CHECK(back.method == g.method);
  CHECK(back.x1 == g.x1);
  CHECK(back.x2 == g.x2);
  CHECK(back.step == g.step);
  CHECK(back.err_estimate == g.err_estimate);
  REQUIRE(back.extra.size() == 1);
  CHECK(back.extra[0].values == g.extra[0].values);
  CHECK(to_json(back) == to_json(g));
}

TEST_CASE("grid validation") {
  auto g = sample_grid();
  g.validate();
  g.f.pop_back();
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = sample_grid();
  g.f[1] = -0.5;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("saddle csv shape") {
  std::vector<SaddleResult> rows = {{5.0, 2.2, -7.6, 7.0, 7.2e-5}};
  std::string csv = saddle_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) == "x,s0,phi,phi2,f");
  CHECK(csv.find("\n5,") != std::string::npos);
}

TEST_CASE("cli binary: exit codes, determinism, manifest linkage") {
  if (!have_cli()) return;  // binary not built in this configuration

  CHECK(run_cli("") == 1);
  CHECK(run_cli("bogus-subcommand") == 1);
  CHECK(run_cli("density") == 1);  // missing required --grid
  CHECK(run_cli("density --grid 1:2:0") == 2);
  CHECK(run_cli("specfun-table --fn nope --grid 0:1:5") == 2);
  CHECK(run_cli("mc --samples 50000") == 1);  // --seed is mandatory

  CHECK(run_cli("specfun-table --fn cji --order 2 --grid 0.5:20:40 "
                "--out fmt_a.csv --manifest fmt_a.json") == 0);
  CHECK(run_cli("specfun-table --fn cji --order 2 --grid 0.5:20:40 "
                "--out fmt_b.csv --manifest fmt_b.json") == 0);
  std::string a = slurp("fmt_a.csv");
  CHECK(a == slurp("fmt_b.csv"));
  auto g = from_csv(a);
  CHECK(g.x.size() == 40);
  for (size_t i = 1; i < g.x.size(); ++i) CHECK(g.x[i] > g.x[i - 1]);
  std::string man = slurp("fmt_a.json");
  CHECK(man.find("fmt_a.csv") != std::string::npos);
  CHECK(man.find("specfun-table") != std::string::npos);
  for (const char* p : {"fmt_a.csv", "fmt_b.csv", "fmt_a.json", "fmt_b.json"})
    std::remove(p);
}
