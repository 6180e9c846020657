#include "sabine/cli.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "sabine/bie.hpp"
#include "sabine/billiards.hpp"
#include "sabine/disk_oracle.hpp"
#include "sabine/error.hpp"
#include "sabine/format.hpp"
#include "sabine/report.hpp"
#include "sabine/search.hpp"

namespace sabine {
namespace {

using nlohmann::ordered_json;

struct Artifacts {
  std::string csv;
  std::string svg;
  std::vector<std::string> files;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

PotentialSpec potential_of(const RunConfig& c) {
  PotentialSpec p;
  p.V0 = c.V0;
  p.alpha = c.alpha;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(c.V0 > 0.0 ? "--alpha: " : "--V0: ") + e.what());
  }
  return p;
}

BoundaryCurve curve_of(const RunConfig& c) {
  try {
    return BoundaryCurve::parse(c.curve);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--curve: ") + e.what());
  }
}

void validate_common(const RunConfig& c) {
  require(c.h > 0.0 && c.h < 1.0, "--h: must lie in (0, 1)");
}

std::pair<double, double> im_range_of(const RunConfig& c) {
  if (c.im_range) return *c.im_range;
  return {-c.strip_M * c.h * std::log(1.0 / c.h), 0.0};
}

ReWindow window_of(const RunConfig& c) {
  if (c.window) {
    require(c.window->first <= c.window->second, "--window: lower end exceeds upper end");
    return {c.window->first, c.window->second};
  }
  return default_window(c.h, c.window_c);
}

std::vector<std::pair<double, double>> bound_line(double bound, double re_lo, double re_hi, double h) {
  if (!std::isfinite(bound)) return {};
  return {{re_lo / h, -bound}, {re_hi / h, -bound}};
}

double circle_bound(const RunConfig& c, const PotentialSpec& pot) {
  const auto circle = BoundaryCurve::circle(1.0);
  if (c.model == Model::delta && c.alpha < 1.0) return sabine_diameter_bound(circle, c.h, pot);
  SabineOptions o;
  o.check_refinement = false;
  return sabine_gap(circle, c.h, pot, c.model, o).bound;
}

SweepResult box_oracle(const RunConfig& c, const PotentialSpec& pot, ReWindow w) {
  const auto [im_lo, im_hi] = im_range_of(c);
  require(im_lo < im_hi, "--im: empty range");
  return disk_resonances_in_box(c.h, pot, c.model, c.n_max, {w.lo, w.hi, im_lo, im_hi});
}

void report_failures(const SweepResult& r, std::ostream& err) {
  for (const auto& f : r.failures) {
    err << "warning: mode n=" << f.n;
    if (f.k >= 0) err << " k=" << f.k;
    err << ": " << f.message << '\n';
  }
}

Artifacts run_disk_oracle(const RunConfig& c, std::ostream& log, std::ostream& err) {
  validate_common(c);
  require(c.n_max >= 0, "--n-max: must be nonnegative");
  const PotentialSpec pot = potential_of(c);
  require(c.model != Model::delta || c.alpha < 1.0, "--alpha: the delta model requires alpha < 1");
  require(c.model != Model::delta_prime || c.alpha > 0.5, "--alpha: the delta_prime model requires alpha > 1/2");
  const ReWindow w = window_of(c);
  const SweepResult r = c.box ? box_oracle(c, pot, w) : mode_sweep(c.h, pot, c.model, c.n_max, w);
  report_failures(r, err);
  log << r.candidates.size() << " oracle resonances";
  if (!r.failures.empty()) log << ", " << r.failures.size() << " mode failures";
  log << '\n';
  for (const auto& cand : r.candidates) {
    log << "  n=" << cand.n << " k=" << cand.k << " z=" << format_real(cand.z.real()) << " "
        << format_real(cand.z.imag()) << "i\n";
  }
  Artifacts a;
  a.csv = oracle_csv(r.candidates, c.alpha, c.V0);
  if (c.svg) {
    a.svg = render_plot(r.candidates, bound_line(circle_bound(c, pot), w.lo, w.hi, c.h), "disk oracle");
  }
  return a;
}

Artifacts run_resonances(const RunConfig& c, std::ostream& log, std::ostream& err) {
  validate_common(c);
  const PotentialSpec pot = potential_of(c);
  const BoundaryCurve curve = curve_of(c);
  const ReWindow w = window_of(c);
  if (c.model == Model::delta_prime) {
    require(curve.kind() == CurveKind::circle && curve.parameters()[0] == 1.0,
            "--model: delta_prime resonances are only available on the unit circle");
    RunConfig boxed = c;
    boxed.box = true;
    if (boxed.n_max == 0) boxed.n_max = static_cast<int>(std::ceil(2.0 / c.h));
    return run_disk_oracle(boxed, log, err);
  }
  const auto [im_lo, im_hi] = im_range_of(c);
  SearchWindow sw;
  sw.re_lo = w.lo;
  sw.re_hi = w.hi;
  sw.im_lo = im_lo;
  sw.im_hi = im_hi;
  sw.nx = c.nx;
  sw.ny = c.ny;
  sw.h = c.h;
  sw.quad_N = c.quad_N;
  sw.strip_M = c.strip_M;
  try {
    sw.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--window/--im/--grid: ") + e.what());
  }
  const SearchResult r = find_resonances(sw, curve, pot);
  for (const auto& wmsg : r.warnings) err << "warning: " << wmsg << '\n';
  for (const auto& f : r.failures) {
    err << "warning: seed " << format_real(f.start.real()) << " " << format_real(f.start.imag()) << "i: " << f.message
        << '\n';
  }
  log << r.candidates.size() << " resonances, sabine bound " << format_real(r.sabine_bound) << '\n';
  for (const auto& cand : r.candidates) {
    log << "  z=" << format_real(cand.z.real()) << " " << format_real(cand.z.imag())
        << "i margin=" << format_real(cand.sabine_margin) << '\n';
  }
  Artifacts a;
  a.csv = search_csv(r.candidates);
  if (c.svg) a.svg = render_plot(r.candidates, bound_line(r.sabine_bound, w.lo, w.hi, c.h), c.curve);
  return a;
}

Artifacts run_sabine_bound(const RunConfig& c, std::ostream& log, std::ostream& err) {
  validate_common(c);
  const PotentialSpec pot = potential_of(c);
  const BoundaryCurve curve = curve_of(c);
  SabineOptions o;
  o.delta1 = c.delta1;
  o.N1 = c.N1;
  o.grid = c.grid;
  o.cap_M = 10.0;
  const SabineReport rep = sabine_gap(curve, c.h, pot, c.model, o);
  for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
  log << "sabine bound " << format_real(rep.bound) << " (-Im z/h) at N=" << rep.depth << ", minimizer s="
      << format_real(rep.minimizer.s) << " xi=" << format_real(rep.minimizer.xi)
      << (rep.converged ? ", stable under grid doubling" : ", NOT stable under grid doubling") << '\n';
  if (std::isfinite(rep.diameter_bound)) log << "diameter bound " << format_real(rep.diameter_bound) << '\n';
  Artifacts a;
  a.csv = sabine_csv({rep});
  return a;
}

Artifacts run_opnorm(const RunConfig& c, std::ostream& log, std::ostream&) {
  const BoundaryCurve curve = curve_of(c);
  require(c.lambdas.size() >= 2, "--lambdas: need at least two values");
  const NystromGrid grid = make_grid(curve, c.quad_N);
  std::vector<double> norms;
  std::string csv = "lambda,quad_N,norm\n";
  for (double lam : c.lambdas) {
    require(lam > 0.0, "--lambdas: values must be positive");
    const double n = operator_norm(assemble_single_layer(grid, cplx(lam, 0.0)));
    norms.push_back(n);
    csv += format_sig17(lam) + "," + std::to_string(c.quad_N) + "," + format_sig17(n) + "\n";
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const double x = std::log(c.lambdas[i]), y = std::log(norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  log << "log-log slope " << format_real(slope) << '\n';
  Artifacts a;
  a.csv = csv;
  return a;
}

Artifacts run_billiards(const RunConfig& c, std::ostream& log, std::ostream&) {
  const BoundaryCurve curve = curve_of(c);
  require(c.steps >= 1, "--steps: must be positive");
  require(std::abs(c.xi) < 1.0, "--xi: must satisfy |xi| < 1");
  const auto orbit = iterate(curve, {curve.wrap(c.s), c.xi}, c.steps);
  double total = 0.0;
  for (const auto& seg : orbit) total += seg.chord_length;
  log << "mean chord " << format_real(total / c.steps) << " over " << c.steps << " steps\n";
  Artifacts a;
  a.csv = orbit_csv(orbit);
  return a;
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["curve"] = c.curve;
  j["h"] = c.h;
  j["V0"] = c.V0;
  j["alpha"] = c.alpha;
  j["model"] = to_string(c.model);
  j["window"] = c.window ? ordered_json::array({c.window->first, c.window->second}) : ordered_json();
  j["window_c"] = c.window_c;
  j["im_range"] = c.im_range ? ordered_json::array({c.im_range->first, c.im_range->second}) : ordered_json();
  j["strip_M"] = c.strip_M;
  j["n_max"] = c.n_max;
  j["box"] = c.box;
  j["nx"] = c.nx;
  j["ny"] = c.ny;
  j["quad_N"] = c.quad_N;
  j["delta1"] = c.delta1;
  j["N1"] = c.N1;
  j["grid"] = c.grid;
  j["lambdas"] = c.lambdas;
  j["s"] = c.s;
  j["xi"] = c.xi;
  j["steps"] = c.steps;
  j["out"] = c.out;
  j["svg"] = c.svg;
  return j;
}

}  // namespace

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument(flag + ": expected lo:hi, got '" + text + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const double lo = std::stod(a, &p1), hi = std::stod(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument("trailing characters");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument(flag + ": expected lo:hi, got '" + text + "'");
  }
}

std::string manifest_json(const RunConfig& config, double wall_seconds, const std::vector<std::string>& files) {
  ordered_json j;
  j["tool"] = "sabine_lab";
  j["version"] = kToolVersion;
  j["config"] = config_json(config);
  j["wall_time_s"] = wall_seconds;
  j["outputs"] = files;
  return j.dump(2) + "\n";
}

RunConfig config_from_manifest(const std::string& text) {
  const auto root = nlohmann::json::parse(text);
  const auto& j = root.contains("config") ? root.at("config") : root;
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.curve = j.value("curve", c.curve);
  c.h = j.value("h", c.h);
  c.V0 = j.value("V0", c.V0);
  c.alpha = j.value("alpha", c.alpha);
  c.model = parse_model(j.value("model", std::string("delta")).c_str());
  if (j.contains("window") && !j["window"].is_null()) c.window = {j["window"][0].get<double>(), j["window"][1].get<double>()};
  c.window_c = j.value("window_c", c.window_c);
  if (j.contains("im_range") && !j["im_range"].is_null()) {
    c.im_range = {j["im_range"][0].get<double>(), j["im_range"][1].get<double>()};
  }
  c.strip_M = j.value("strip_M", c.strip_M);
  c.n_max = j.value("n_max", c.n_max);
  c.box = j.value("box", c.box);
  c.nx = j.value("nx", c.nx);
  c.ny = j.value("ny", c.ny);
  c.quad_N = j.value("quad_N", c.quad_N);
  c.delta1 = j.value("delta1", c.delta1);
  c.N1 = j.value("N1", c.N1);
  c.grid = j.value("grid", c.grid);
  if (j.contains("lambdas")) c.lambdas = j["lambdas"].get<std::vector<double>>();
  c.s = j.value("s", c.s);
  c.xi = j.value("xi", c.xi);
  c.steps = j.value("steps", c.steps);
  c.out = j.value("out", c.out);
  c.svg = j.value("svg", c.svg);
  return c;
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Artifacts a;
    if (config.command == "disk-oracle") {
      a = run_disk_oracle(config, log, err);
    } else if (config.command == "resonances") {
      a = run_resonances(config, log, err);
    } else if (config.command == "sabine-bound") {
      a = run_sabine_bound(config, log, err);
    } else if (config.command == "opnorm-scaling") {
      a = run_opnorm(config, log, err);
    } else if (config.command == "billiards") {
      a = run_billiards(config, log, err);
    } else {
      throw std::invalid_argument("unknown command '" + config.command + "'");
    }
    const std::string prefix = config.out.empty() ? config.command : config.out;
    write_text_file(prefix + ".csv", a.csv);
    a.files.push_back(prefix + ".csv");
    if (!a.svg.empty()) {
      write_text_file(prefix + ".svg", a.svg);
      a.files.push_back(prefix + ".svg");
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_text_file(prefix + ".manifest.json", manifest_json(config, wall, a.files));
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace sabine
