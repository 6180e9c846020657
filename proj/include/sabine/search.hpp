#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sabine/bie.hpp"
#include "sabine/geometry.hpp"
#include "sabine/potential.hpp"
#include "sabine/resonance.hpp"

namespace sabine {

struct SearchWindow {
  double re_lo = 0.9, re_hi = 1.1;
  double im_lo = -0.2, im_hi = 0.0;
  int nx = 41, ny = 25;
  double h = 0.1;
  int quad_N = 256;
  /// im_lo must not go below -strip_M * h * log(1/h).
  double strip_M = 1.0;

  /// Throws std::invalid_argument on inconsistent fields.
  void validate() const;
  double re_at(int ix) const;
  double im_at(int iy) const;
  double cell_re() const;
  double cell_im() const;
};

struct ScanSample {
  cplx z;
  double sigma_min = 0.0;
  double cond = 0.0;
};

struct ScanField {
  int nx = 0, ny = 0;
  /// Row-major in (iy, ix).
  std::vector<ScanSample> samples;
  const ScanSample& at(int ix, int iy) const { return samples[static_cast<std::size_t>(iy) * nx + ix]; }
};

ScanField scan(const SearchWindow& window, const BoundaryCurve& curve, const PotentialSpec& pot);

/// Grid indices of cells whose sigma_min is below all of their neighbours.
std::vector<std::pair<int, int>> local_minima(const ScanField& field);

struct RefineOptions {
  /// Defaults to 1e-3 * 256 / quad_N.
  std::optional<double> accept_tol;
  double diameter = 1e-8;
  int max_evaluations = 400;
  /// Region the refined point must stay in; unchecked when empty.
  std::optional<SearchWindow> window;
};

double default_accept_tol(int quad_N);

ResonanceCandidate refine(cplx start, const BoundaryCurve& curve, const PotentialSpec& pot, double h, int quad_N,
                          const RefineOptions& options = {});

struct SearchFailure {
  cplx start;
  std::string message;
};

struct SearchOptions {
  RefineOptions refine;
  /// Bound used for the margin annotation; computed with sabine_gap when empty.
  std::optional<double> sabine_bound;
  double dedupe = 1e-6;
};

struct SearchResult {
  std::vector<ResonanceCandidate> candidates;
  std::vector<SearchFailure> failures;
  ScanField field;
  double sabine_bound = 0.0;
  std::vector<std::string> warnings;
};

SearchResult find_resonances(const SearchWindow& window, const BoundaryCurve& curve, const PotentialSpec& pot,
                             const SearchOptions& options = {});

}  // namespace sabine
