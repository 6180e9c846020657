#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sabine/potential.hpp"

namespace sabine {

inline constexpr const char* kToolVersion = "0.3.0";

/// Fully resolved configuration of one run. Runs are deterministic in it.
struct RunConfig {
  std::string command;
  std::string curve = "circle:r=1";
  double h = 0.1;
  double V0 = 1.0;
  double alpha = 0.0;
  Model model = Model::delta;

  // disk-oracle and resonances
  std::optional<std::pair<double, double>> window;
  double window_c = 1.0;
  std::optional<std::pair<double, double>> im_range;
  double strip_M = 1.0;
  int n_max = 0;
  bool box = false;
  int nx = 41;
  int ny = 25;
  int quad_N = 256;

  // sabine-bound
  double delta1 = 0.05;
  int N1 = 10;
  int grid = 64;

  // opnorm-scaling
  std::vector<double> lambdas = {50, 100, 200, 400, 800};

  // billiards
  double s = 0.0;
  double xi = 0.0;
  int steps = 10;

  /// Output prefix; files are <out>.csv, <out>.manifest.json, <out>.svg.
  std::string out;
  bool svg = false;
};

enum ExitCode { kExitOk = 0, kExitValidation = 2, kExitNumerical = 3 };

/// Executes the command, writing artifacts next to `config.out` and a short
/// summary to `log`. Errors are reported on `err`.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

std::string manifest_json(const RunConfig& config, double wall_seconds, const std::vector<std::string>& files);
RunConfig config_from_manifest(const std::string& text);

/// Parses "lo:hi".
std::pair<double, double> parse_range(const std::string& text, const std::string& flag);

}  // namespace sabine
