#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sabine/cli.hpp"
#include "sabine/report.hpp"

using namespace sabine;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("sabine_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_quiet(const RunConfig& c, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream log, e;
  const int code = run(c, log, e);
  if (out) *out = log.str();
  if (err) *err = e.str();
  return code;
}

int shell(const std::string& args) {
  const char* exe = std::getenv("SABINE_LAB");
  REQUIRE(exe != nullptr);
  const int status = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("disk oracle example") {
  const auto dir = scratch("oracle");
  RunConfig c;
  c.command = "disk-oracle";
  c.h = 0.05;
  c.n_max = 0;
  c.window = {0.9, 1.1};
  c.svg = true;
  c.out = (dir / "a").string();
  REQUIRE(run_quiet(c) == kExitOk);
  const std::string csv = slurp(dir / "a.csv");
  CHECK(csv.rfind("model,n,k,h,alpha,V0,re_z,im_z,residual\n", 0) == 0);
  CHECK(csv.find("delta,0,6,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(fs::exists(dir / "a.manifest.json"));
  const std::string svg = slurp(dir / "a.svg");
  CHECK(svg.find("<polyline") != std::string::npos);

  c.out = (dir / "b").string();
  REQUIRE(run_quiet(c) == kExitOk);
  CHECK(slurp(dir / "b.csv") == csv);
  CHECK(slurp(dir / "b.svg") == svg);
}

TEST_CASE("manifest round trip") {
  const auto dir = scratch("manifest");
  RunConfig c;
  c.command = "billiards";
  c.curve = "ellipse:a=2,b=1";
  c.xi = 0.25;
  c.steps = 7;
  c.out = (dir / "orb").string();
  REQUIRE(run_quiet(c) == kExitOk);
  const std::string first = slurp(dir / "orb.csv");
  const RunConfig back = config_from_manifest(slurp(dir / "orb.manifest.json"));
  CHECK(back.curve == c.curve);
  CHECK(back.xi == c.xi);
  CHECK(back.steps == 7);
  fs::remove(dir / "orb.csv");
  REQUIRE(run_quiet(back) == kExitOk);
  CHECK(slurp(dir / "orb.csv") == first);
}

TEST_CASE("sabine bound example") {
  const auto dir = scratch("bound");
  RunConfig c;
  c.command = "sabine-bound";
  c.h = 0.01;
  c.out = (dir / "s").string();
  std::string log;
  REQUIRE(run_quiet(c, &log) == kExitOk);
  const auto pos = log.find("sabine bound ");
  REQUIRE(pos != std::string::npos);
  const double v = std::stod(log.substr(pos + 13));
  CHECK(v == doctest::Approx(2.649).epsilon(0.005));
}

TEST_CASE("validation and exit codes") {
  const auto dir = scratch("errors");
  RunConfig c;
  c.command = "sabine-bound";
  c.curve = "hexagon:r=1";
  c.out = (dir / "x").string();
  std::string err;
  CHECK(run_quiet(c, nullptr, &err) == kExitValidation);
  CHECK(err.find("--curve") != std::string::npos);

  c = {};
  c.command = "resonances";
  c.curve = "ellipse:a=2,b=1";
  c.model = Model::delta_prime;
  c.alpha = 0.9;
  c.out = (dir / "x").string();
  CHECK(run_quiet(c, nullptr, &err) == kExitValidation);
  CHECK(err.find("--model") != std::string::npos);

  c = {};
  c.command = "billiards";
  c.xi = 1.0;
  c.out = (dir / "x").string();
  CHECK(run_quiet(c) == kExitValidation);

  c = {};
  c.command = "disk-oracle";
  c.alpha = 1.5;
  c.window = {0.9, 1.1};
  c.out = (dir / "x").string();
  CHECK(run_quiet(c) == kExitValidation);

  c = {};
  c.command = "billiards";
  c.curve = "stadium:l=1,r=1";
  c.s = 1.0;
  c.xi = 0.0;
  c.steps = 3;
  c.out = (dir / "missing" / "x").string();
  CHECK(run_quiet(c) == kExitNumerical);

  CHECK(shell("sabine-bound --curve hexagon:r=1 --out " + (dir / "y").string()) == 2);
  CHECK(shell("disk-oracle --window 0.9 --out " + (dir / "y").string()) == 2);
  CHECK(shell("billiards --steps 3 --out " + (dir / "z").string()) == 0);
  CHECK(fs::exists(dir / "z.csv"));
}

TEST_CASE("plot rendering") {
  ResonanceCandidate a;
  a.z = {1.0, -0.1};
  a.h = 0.1;
  const std::string one = render_plot({a}, {{9.0, -1.5}, {11.0, -1.5}}, "t");
  CHECK(one == render_plot({a}, {{9.0, -1.5}, {11.0, -1.5}}, "t"));
  CHECK(one.find("Re lambda") != std::string::npos);
  CHECK(one.find("Im lambda") != std::string::npos);
  const std::string line_only = render_plot({}, {{9.0, -1.5}, {11.0, -1.5}}, "t");
  CHECK(line_only.find("<polyline") != std::string::npos);
  CHECK(line_only.find("<circle") == std::string::npos);
  CHECK_THROWS_AS(render_plot({}, {}, "t"), std::invalid_argument);
}
