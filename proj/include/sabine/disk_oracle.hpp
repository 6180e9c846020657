#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sabine/potential.hpp"
#include "sabine/resonance.hpp"
#include "sabine/specfun.hpp"

namespace sabine {

struct NewtonResult {
  cplx root;
  /// d * eps / b, the Lipschitz constant of the chord map on the disk.
  double contraction = 0.0;
  int iterations = 0;
};

/// Chord iteration z <- z - f(z) / f'(z0) on |z - z0| <= eps, certified by
/// a + d eps^2 < eps b and d eps / b < 0.9.
NewtonResult newton_contract(const std::function<cplx(cplx)>& f, cplx df_z0, cplx z0, double eps, double a,
                             double b, double d);

struct ReWindow {
  double lo = 0.5;
  double hi = 1.5;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// [1 - c h^{3/4}, 1 + c h^{3/4}].
ReWindow default_window(double h, double c = 1.0);

/// Transcendental function of mode n and its z-derivative.
struct ModeFunction {
  int n = 0;
  double h = 0.0;
  PotentialSpec pot;
  Model model = Model::delta;

  cplx value(cplx z) const;
  cplx derivative(cplx z) const;
  void evaluate(cplx z, cplx& f, cplx& df) const;
};

/// Lattice anchor (pi h / 4)(4k + 2n + 1).
double lattice_anchor(int n, int k, double h);

/// Asymptotic starting point: anchor plus the leading-order correction.
cplx initial_guess(int n, int k, double h, const PotentialSpec& pot, Model model);

struct SolveOptions {
  double eps_factor = 0.25;  // initial eps = eps_factor * h
  int max_halvings = 6;
};

ResonanceCandidate delta_resonance(int n, int k, double h, const PotentialSpec& pot, ReWindow window = {0.5, 1.5},
                                   const SolveOptions& options = {});
ResonanceCandidate delta_prime_resonance(int n, int k, double h, const PotentialSpec& pot,
                                         ReWindow window = {0.5, 1.5}, const SolveOptions& options = {});

struct ModeFailure {
  int n = 0;
  int k = 0;
  std::string message;
};

struct SweepResult {
  std::vector<ResonanceCandidate> candidates;
  std::vector<ModeFailure> failures;
};

/// All lattice anchors of modes 0..n_max inside the window, solved,
/// deduplicated and sorted by Re z.
SweepResult mode_sweep(double h, const PotentialSpec& pot, Model model, int n_max, ReWindow window);

struct Box {
  double re_lo, re_hi, im_lo, im_hi;
  bool contains(cplx z) const {
    return z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo && z.imag() <= im_hi;
  }
};

/// Number of zeros of the mode function inside the box, by the argument
/// principle along its boundary.
int count_mode_zeros(const ModeFunction& f, const Box& box);

/// Every zero of modes 0..n_max inside the box, found by recursive
/// subdivision with argument-principle counts. Candidates carry k = -1.
SweepResult disk_resonances_in_box(double h, const PotentialSpec& pot, Model model, int n_max, const Box& box);

}  // namespace sabine
