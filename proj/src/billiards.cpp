#include "sabine/billiards.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sabine/config.hpp"
#include "sabine/error.hpp"
#include "sabine/parallel.hpp"

namespace sabine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_momentum(double xi) { return std::sqrt((1.0 - xi) * (1.0 + xi)); }

struct GridResult {
  double bound = -kInf;
  PhasePoint minimizer;
  int depth = 0;
  int skipped = 0;
  bool any_finite = false;
};

GridResult evaluate_grid(const BoundaryCurve& curve, double h, const PotentialSpec& pot, Model model,
                         const SabineOptions& opt, int grid) {
  const int N1 = opt.N1;
  const double L = curve.total_length();
  const double xi_max = 1.0 - opt.delta1;
  const std::size_t cells = static_cast<std::size_t>(grid) * grid;
  // ratio[c * N1 + (N-1)] = -r_N / l_N for cell c; NaN marks a skipped cell.
  std::vector<double> ratio(cells * N1, std::numeric_limits<double>::quiet_NaN());
  std::vector<PhasePoint> starts(cells);

  parallel_for(cells, [&](std::size_t c) {
    const int i = static_cast<int>(c) / grid, j = static_cast<int>(c) % grid;
    const double xi = grid == 1 ? 0.0 : -xi_max + 2.0 * xi_max * j / (grid - 1);
    const PhasePoint q{curve.wrap(opt.s_offset + L * i / grid), xi};
    starts[c] = q;
    std::vector<OrbitSegment> orbit;
    try {
      orbit = iterate(curve, q, N1);
    } catch (const NumericalError&) {
      return;
    }
    double chord_sum = 0.0, log_sum = 0.0;
    for (int n = 0; n < N1; ++n) {
      chord_sum += orbit[n].chord_length;
      const double r2 = std::norm(reflect(orbit[n].to, h, pot, model));
      log_sum += r2 > 0.0 ? std::log(r2) : -kInf;
      const double rN = log_sum / (2.0 * (n + 1));
      const double lN = chord_sum / (n + 1);
      ratio[c * N1 + n] = std::isfinite(rN) ? -rN / lN : kInf;
    }
  });

  GridResult out;
  for (std::size_t c = 0; c < cells; ++c) {
    if (std::isnan(ratio[c * N1])) ++out.skipped;
  }
  for (int n = 0; n < N1; ++n) {
    double inf_value = kInf;
    std::size_t arg = cells;
    for (std::size_t c = 0; c < cells; ++c) {
      const double v = ratio[c * N1 + n];
      if (std::isnan(v)) continue;
      if (std::isfinite(v)) out.any_finite = true;
      if (arg == cells || v < inf_value) {
        inf_value = v;
        arg = c;
      }
    }
    if (arg == cells) continue;
    if (inf_value > out.bound) {
      out.bound = inf_value;
      out.minimizer = starts[arg];
      out.depth = n + 1;
    }
  }
  if (out.depth == 0) {
    throw NumericalError(Errc::no_convergence, "every grid orbit failed to iterate");
  }
  return out;
}

}  // namespace

OrbitSegment billiard_step(const BoundaryCurve& curve, PhasePoint q) {
  if (!(std::abs(q.xi) < 1.0 - kTolerances.glancing)) {
    throw NumericalError(Errc::glancing_input, "|xi'| = " + std::to_string(std::abs(q.xi)) + " is glancing");
  }
  const SurfacePoint p = curve.point_at(q.s);
  const Vec2 d = q.xi * p.tangent - normal_momentum(q.xi) * p.normal;
  const RayHit hit = curve.ray_exit(p.position, d);
  if (hit.travel < kTolerances.min_chord) {
    throw NumericalError(Errc::degenerate_chord, "chord length " + std::to_string(hit.travel) + " below tolerance");
  }
  OrbitSegment seg;
  seg.from = {p.s, q.xi};
  seg.to = {hit.point.s, std::clamp(dot(d, hit.point.tangent), -1.0, 1.0)};
  seg.chord_length = distance(p.position, hit.point.position);
  seg.from_position = p.position;
  seg.to_position = hit.point.position;
  seg.direction = d;
  return seg;
}

std::vector<OrbitSegment> iterate(const BoundaryCurve& curve, PhasePoint q, int N) {
  if (N < 1) throw std::invalid_argument("orbit length N must be positive");
  std::vector<OrbitSegment> out;
  out.reserve(N);
  for (int k = 0; k < N; ++k) {
    try {
      out.push_back(billiard_step(curve, q));
    } catch (const NumericalError& e) {
      throw NumericalError(e.code(), "step " + std::to_string(k) + ": " + e.what());
    }
    q = out.back().to;
  }
  return out;
}

double mean_chord_length(const BoundaryCurve& curve, PhasePoint q, int N) {
  double sum = 0.0;
  for (const auto& seg : iterate(curve, q, N)) sum += seg.chord_length;
  return sum / N;
}

std::complex<double> reflect_delta(PhasePoint q, double h, const PotentialSpec& pot) {
  const double hv = h * pot.symbol(q.s, h, Model::delta);
  return hv / std::complex<double>(-hv, 2.0 * normal_momentum(q.xi));
}

std::complex<double> reflect_delta_prime(PhasePoint q, double h, const PotentialSpec& pot) {
  const double v = pot.symbol(q.s, h, Model::delta_prime);
  const std::complex<double> num(0.0, v * normal_momentum(q.xi));
  return num / (num - 2.0 * h);
}

std::complex<double> reflect(PhasePoint q, double h, const PotentialSpec& pot, Model model) {
  return model == Model::delta ? reflect_delta(q, h, pot) : reflect_delta_prime(q, h, pot);
}

double mean_log_reflectivity(const BoundaryCurve& curve, PhasePoint q, int N, double h, const PotentialSpec& pot,
                             Model model) {
  double sum = 0.0;
  for (const auto& seg : iterate(curve, q, N)) {
    const double r2 = std::norm(reflect(seg.to, h, pot, model));
    if (!(r2 > 0.0)) return -kInf;
    sum += std::log(r2);
  }
  return sum / (2.0 * N);
}

SabineReport sabine_gap(const BoundaryCurve& curve, double h, const PotentialSpec& pot, Model model,
                        const SabineOptions& options) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("h must lie in (0, 1)");
  if (!(options.delta1 > 0.0 && options.delta1 < 1.0)) throw std::invalid_argument("delta1 must lie in (0, 1)");
  if (options.grid < 16) throw std::invalid_argument("grid must be at least 16");
  if (options.N1 < 1) throw std::invalid_argument("N1 must be positive");
  pot.validate();

  SabineReport rep;
  rep.h = h;
  rep.model = model;
  rep.grid = options.grid;
  rep.delta1 = options.delta1;
  rep.N1 = options.N1;
  rep.outside_theorem = !curve.strictly_convex();
  if (rep.outside_theorem) rep.warnings.push_back("curve is not strictly convex; the bound is outside the theorem");
  if (model == Model::delta && pot.alpha >= 2.0 / 3.0) {
    rep.warnings.push_back("alpha >= 2/3: the potential may exceed the small-norm hypothesis");
  }

  const GridResult base = evaluate_grid(curve, h, pot, model, options, options.grid);
  rep.skipped_cells = base.skipped;
  rep.minimizer = base.minimizer;
  rep.depth = base.depth;
  rep.all_orbits_escape = !base.any_finite;
  rep.bound = rep.all_orbits_escape ? kInf : base.bound;
  if (rep.all_orbits_escape) rep.warnings.push_back("every grid orbit leaves the support of the profile");
  if (base.skipped > 0) {
    rep.warnings.push_back(std::to_string(base.skipped) + " grid orbits failed and were skipped");
  }
  const double cap = options.cap_M * std::log(1.0 / h);
  rep.capped_bound = std::min(rep.bound, cap);

  if (options.check_refinement) {
    const GridResult fine = evaluate_grid(curve, h, pot, model, options, 2 * options.grid);
    rep.refined_bound = fine.any_finite ? fine.bound : kInf;
    if (std::isfinite(rep.bound) && std::isfinite(rep.refined_bound)) {
      rep.converged = std::abs(rep.refined_bound - rep.bound) <= 0.01 * std::abs(rep.refined_bound);
    } else {
      rep.converged = rep.bound == rep.refined_bound;
    }
  } else {
    rep.refined_bound = std::numeric_limits<double>::quiet_NaN();
  }

  rep.diameter_bound = std::numeric_limits<double>::quiet_NaN();
  if (model == Model::delta && pot.alpha < 1.0) {
    try {
      rep.diameter_bound = sabine_diameter_bound(curve, h, pot);
    } catch (const NumericalError& e) {
      rep.warnings.push_back(e.what());
    }
  }
  return rep;
}

double sabine_diameter_bound(const BoundaryCurve& curve, double h, const PotentialSpec& pot) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("h must lie in (0, 1)");
  if (!(pot.alpha < 1.0)) throw std::invalid_argument("the diameter bound requires alpha < 1");
  pot.validate();
  const Diameter d = curve.diameter();
  double best = -kInf;
  for (const auto& [a, b] : d.pairs) {
    const double prod = pot.symbol(a.s, h, Model::delta) * pot.symbol(b.s, h, Model::delta);
    if (prod > 0.0) best = std::max(best, std::log(prod / 4.0));
  }
  if (!std::isfinite(best)) {
    throw NumericalError(Errc::no_valid_diameter_pair, "the profile vanishes on every diameter pair");
  }
  return (std::log(1.0 / h) - 0.5 * best) / d.length;
}

}  // namespace sabine
