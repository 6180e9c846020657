#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sabine/geometry.hpp"
#include "sabine/potential.hpp"

namespace sabine {

/// Point of the open unit coball bundle over the boundary.
struct PhasePoint {
  double s = 0.0;
  double xi = 0.0;
};

struct OrbitSegment {
  PhasePoint from;
  PhasePoint to;
  double chord_length = 0.0;
  Vec2 from_position;
  Vec2 to_position;
  Vec2 direction;
};

/// One application of the billiard ball map.
OrbitSegment billiard_step(const BoundaryCurve& curve, PhasePoint q);

/// N consecutive steps starting at q.
std::vector<OrbitSegment> iterate(const BoundaryCurve& curve, PhasePoint q, int N);

/// Mean chord length over the first N segments.
double mean_chord_length(const BoundaryCurve& curve, PhasePoint q, int N);

std::complex<double> reflect_delta(PhasePoint q, double h, const PotentialSpec& pot);
std::complex<double> reflect_delta_prime(PhasePoint q, double h, const PotentialSpec& pot);
std::complex<double> reflect(PhasePoint q, double h, const PotentialSpec& pot, Model model);

/// (1/2N) sum_{n=1..N} log|R(beta^n q)|^2. Returns -infinity when the orbit
/// meets a point where the reflectivity vanishes.
double mean_log_reflectivity(const BoundaryCurve& curve, PhasePoint q, int N, double h, const PotentialSpec& pot,
                             Model model);

struct SabineOptions {
  double delta1 = 0.05;
  int N1 = 10;
  int grid = 64;
  /// Arclength offset of the s-axis of the grid.
  double s_offset = 0.0;
  /// Reported bounds are capped at cap_M * log(1/h).
  double cap_M = 10.0;
  /// Recompute at doubled resolution to set `converged`.
  bool check_refinement = true;
};

struct SabineReport {
  double h = 0.0;
  Model model = Model::delta;
  /// sup over N <= N1 of inf over the grid of -r_N / l_N, in -Im z / h units.
  /// +infinity when every grid orbit leaves the support of the profile.
  double bound = 0.0;
  double capped_bound = 0.0;
  PhasePoint minimizer;
  int depth = 0;
  int grid = 0;
  double delta1 = 0.0;
  int N1 = 0;
  bool converged = false;
  double refined_bound = 0.0;
  /// Diameter formula; NaN when it does not apply (delta-prime, alpha >= 1).
  double diameter_bound = 0.0;
  bool outside_theorem = false;
  bool all_orbits_escape = false;
  int skipped_cells = 0;
  std::vector<std::string> warnings;
};

SabineReport sabine_gap(const BoundaryCurve& curve, double h, const PotentialSpec& pot, Model model,
                        const SabineOptions& options = {});

/// (1/d)[log(1/h) - (1/2) sup log(sigma(a) sigma(b) / 4)] over diameter pairs,
/// delta model only.
double sabine_diameter_bound(const BoundaryCurve& curve, double h, const PotentialSpec& pot);

}  // namespace sabine
