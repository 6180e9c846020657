#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sabine/cli.hpp"

namespace {

struct Flags {
  std::string window, im;
  std::string model = "delta";
  CLI::Option* quad_N = nullptr;
};

void add_common(CLI::App* sub, sabine::RunConfig& c, Flags& f) {
  sub->add_option("--curve", c.curve, "boundary, e.g. circle:r=1, ellipse:a=2,b=1, stadium:l=1,r=1");
  sub->add_option("--h", c.h, "semiclassical parameter");
  sub->add_option("--V0", c.V0, "potential amplitude");
  sub->add_option("--alpha", c.alpha, "potential scaling exponent");
  sub->add_option("--model", f.model, "delta or delta_prime");
  sub->add_option("--out", c.out, "output prefix (default: command name)");
  sub->add_flag("--svg", c.svg, "also write an SVG plot");
}

void add_window(CLI::App* sub, sabine::RunConfig& c, Flags& f) {
  sub->add_option("--window", f.window, "Re z range lo:hi");
  sub->add_option("--window-c", c.window_c, "default window is 1 +- c h^(3/4)");
  sub->add_option("--im", f.im, "Im z range lo:hi");
  sub->add_option("--strip", c.strip_M, "strip depth in units of h log(1/h)");
  sub->add_option("--n-max", c.n_max, "largest angular mode");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-barrier resonances and Sabine bounds"};
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", std::string(sabine::kToolVersion));
  app.require_subcommand(0, 1);
  std::string manifest;
  app.add_option("--manifest", manifest, "re-run the configuration stored in a manifest");

  sabine::RunConfig c;
  Flags f;

  auto* oracle = app.add_subcommand("disk-oracle", "exact resonances of the unit disk");
  add_common(oracle, c, f);
  add_window(oracle, c, f);
  oracle->add_flag("--box", c.box, "find every zero in the box instead of sweeping lattice anchors");

  auto* res = app.add_subcommand("resonances", "boundary-integral resonance search");
  add_common(res, c, f);
  add_window(res, c, f);
  res->add_option("--nx", c.nx, "scan nodes along Re z");
  res->add_option("--ny", c.ny, "scan nodes along Im z");
  res->add_option("--quad-N", c.quad_N, "boundary nodes");

  auto* bound = app.add_subcommand("sabine-bound", "Sabine depth bound from billiard averages");
  add_common(bound, c, f);
  bound->add_option("--delta1", c.delta1, "glancing cutoff");
  bound->add_option("--N1", c.N1, "largest orbit length");
  bound->add_option("--grid", c.grid, "phase-space grid per axis");

  auto* opnorm = app.add_subcommand("opnorm-scaling", "single-layer operator norm against lambda");
  add_common(opnorm, c, f);
  opnorm->add_option("--lambdas", c.lambdas, "frequencies")->delimiter(',');
  f.quad_N = opnorm->add_option("--quad-N", c.quad_N, "boundary nodes (default 1024)");

  auto* bill = app.add_subcommand("billiards", "billiard orbit");
  add_common(bill, c, f);
  bill->add_option("--s", c.s, "starting arclength");
  bill->add_option("--xi", c.xi, "starting tangential momentum");
  bill->add_option("--steps", c.steps, "number of reflections");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sabine::kExitValidation;
  }

  try {
    if (!manifest.empty()) {
      std::ifstream in(manifest);
      if (!in) throw std::invalid_argument("--manifest: cannot read " + manifest);
      std::stringstream ss;
      ss << in.rdbuf();
      c = sabine::config_from_manifest(ss.str());
    } else {
      if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return sabine::kExitValidation;
      }
      c.command = app.get_subcommands().front()->get_name();
      try {
        c.model = sabine::parse_model(f.model.c_str());
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("--model: ") + e.what());
      }
      if (!f.window.empty()) c.window = sabine::parse_range(f.window, "--window");
      if (!f.im.empty()) c.im_range = sabine::parse_range(f.im, "--im");
      if (c.command == "opnorm-scaling" && f.quad_N->count() == 0) c.quad_N = 1024;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sabine::kExitValidation;
  }
  return sabine::run(c, std::cout, std::cerr);
}
