#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sabine/geometry.hpp"
#include "sabine/potential.hpp"
#include "sabine/specfun.hpp"

namespace sabine {

/// Equispaced nodes in arclength; t_j = 2 pi j / N with constant speed L / 2 pi.
struct NystromGrid {
  BoundaryCurve curve;
  int N = 0;
  std::vector<SurfacePoint> nodes;
  std::vector<double> weights;
  double speed = 0.0;
  /// Warnings about the quadrature, e.g. a non-smooth boundary.
  std::vector<std::string> warnings;
};

NystromGrid make_grid(const BoundaryCurve& curve, int N);

/// Single layer operator with the outgoing kernel (i/4) H_0^{(1)}(lambda |x - y|).
struct LayerMatrix {
  cplx lambda;
  Eigen::MatrixXcd entries;
  NystromGrid grid;
};

LayerMatrix assemble_single_layer(const NystromGrid& grid, cplx lambda);

/// Largest singular value of the weight-symmetrized matrix.
double operator_norm(const LayerMatrix& matrix);
double operator_norm(const Eigen::MatrixXcd& entries, const std::vector<double>& weights);

struct SigmaResult {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond = 0.0;
};

/// Extreme singular values of I + G(z/h) diag(sigma V) on the grid.
SigmaResult sigma_min_boundary_operator(const NystromGrid& grid, cplx z, double h, const PotentialSpec& pot);

/// Writes "SLAB", N (uint32), lambda (two float32), then N*N row-major
/// complex entries as little-endian float64 pairs.
void dump_matrix(const LayerMatrix& matrix, const std::string& path);

}  // namespace sabine
