#pragma once

#include <complex>
#include <limits>

#include "sabine/potential.hpp"

namespace sabine {

enum class Provenance { oracle, bie };

/// Rescaled resonance z (lambda = z / h) with its origin.
struct ResonanceCandidate {
  std::complex<double> z;
  double h = 0.0;
  /// |F(z)| for the disk oracle, the final sigma_min for the search.
  double residual = 0.0;
  Provenance provenance = Provenance::oracle;

  // Oracle provenance.
  int n = -1;
  int k = -1;
  Model model = Model::delta;
  double contraction = 0.0;

  // Search provenance.
  int quad_N = 0;
  double cond = 0.0;
  double sabine_margin = std::numeric_limits<double>::quiet_NaN();

  double depth() const { return -z.imag() / h; }
};

}  // namespace sabine
