#include "sabine/bie.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "sabine/error.hpp"
#include "sabine/format.hpp"
#include "sabine/parallel.hpp"

namespace sabine {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = 0.57721566490153286061;
const cplx kI(0.0, 1.0);

// Spectral weights for the logarithmic part, indexed by |i - j| mod N.
std::vector<double> log_weights(int N) {
  std::vector<double> R(N);
  const int half = N / 2;
  for (int m = 0; m < N; ++m) {
    double sum = 0.0;
    for (int p = 1; p < half; ++p) sum += std::cos(2.0 * kPi * p * m / N) / p;
    R[m] = -(4.0 * kPi / N) * sum - (4.0 * kPi / (static_cast<double>(N) * N)) * (m % 2 == 0 ? 1.0 : -1.0);
  }
  return R;
}

void check_lambda(const NystromGrid& grid, cplx lambda) {
  const double d = grid.curve.diameter().length;
  if (!(lambda.real() > 0.0) || lambda.real() * d > 2000.0 || std::abs(lambda.imag()) * d > 50.0) {
    throw NumericalError(Errc::region_exceeded, "lambda = (" + format_real(lambda.real()) + ", " +
                                                    format_real(lambda.imag()) +
                                                    ") times the diameter leaves the Bessel region");
  }
}

void put_le64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

void put_le32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

template <class F, class U>
U bits(F v) {
  U u;
  std::memcpy(&u, &v, sizeof u);
  return u;
}

}  // namespace

NystromGrid make_grid(const BoundaryCurve& curve, int N) {
  if (N < 16 || N % 2 != 0) throw std::invalid_argument("node count must be even and at least 16");
  NystromGrid g{curve, N, {}, {}, curve.total_length() / (2.0 * kPi), {}};
  const double L = curve.total_length();
  g.nodes.reserve(N);
  for (int j = 0; j < N; ++j) g.nodes.push_back(curve.point_at(L * j / N));
  g.weights.assign(N, L / N);
  if (!curve.strictly_convex()) {
    g.warnings.push_back("boundary is only C^{1,1}; expect algebraic rather than spectral convergence");
  }
  return g;
}

LayerMatrix assemble_single_layer(const NystromGrid& grid, cplx lambda) {
  check_lambda(grid, lambda);
  const int N = grid.N;
  const double c = grid.speed;
  const std::vector<double> R = log_weights(N);
  std::vector<double> log_sin(N);
  for (int m = 1; m < N; ++m) {
    const double s = std::sin(kPi * m / N);
    log_sin[m] = std::log(4.0 * s * s);
  }
  const cplx diag_smooth = c * (kI / 4.0 - (kEuler + std::log(lambda * c / 2.0)) / (2.0 * kPi));
  const double h_trap = 2.0 * kPi / N;

  LayerMatrix out{lambda, Eigen::MatrixXcd(N, N), grid};
  auto& A = out.entries;
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    A(i, i) = R[0] * (-c / (4.0 * kPi)) + h_trap * diag_smooth;
    for (int j = i + 1; j < N; ++j) {
      const double r = distance(grid.nodes[i].position, grid.nodes[j].position);
      const auto [j0, h0] = bessel_j0_hankel0(lambda * r);
      const cplx k_full = (kI / 4.0) * h0 * c;
      const cplx k_log = (-c / (4.0 * kPi)) * j0;
      const int m = j - i;
      const cplx k_smooth = k_full - k_log * log_sin[m];
      A(i, j) = R[m] * k_log + h_trap * k_smooth;
    }
  });
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) A(j, i) = A(i, j);
  }
  return out;
}

double operator_norm(const Eigen::MatrixXcd& entries, const std::vector<double>& weights) {
  if (entries.size() == 0) return 0.0;
  Eigen::VectorXd sq(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) sq[i] = std::sqrt(weights[i]);
  const Eigen::MatrixXcd S = sq.asDiagonal() * entries * sq.cwiseInverse().asDiagonal();
  if (S.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(S);
  return svd.singularValues()(0);
}

double operator_norm(const LayerMatrix& matrix) { return operator_norm(matrix.entries, matrix.grid.weights); }

SigmaResult sigma_min_boundary_operator(const NystromGrid& grid, cplx z, double h, const PotentialSpec& pot) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  pot.validate();
  const int N = grid.N;
  Eigen::VectorXd v(N);
  for (int j = 0; j < N; ++j) v[j] = pot.symbol(grid.nodes[j].s, h, Model::delta);
  if (v.cwiseAbs().maxCoeff() == 0.0) return {1.0, 1.0, 1.0};
  const LayerMatrix G = assemble_single_layer(grid, z / h);
  Eigen::MatrixXcd B = G.entries * v.asDiagonal();
  B.diagonal().array() += 1.0;
  // Equal weights make the weight symmetrization the identity map.
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(B);
  const auto& s = svd.singularValues();
  SigmaResult r;
  r.sigma_max = s(0);
  r.sigma_min = s(N - 1);
  r.cond = r.sigma_min > 0.0 ? r.sigma_max / r.sigma_min : std::numeric_limits<double>::infinity();
  return r;
}

void dump_matrix(const LayerMatrix& matrix, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.write("SLAB", 4);
  const int N = static_cast<int>(matrix.entries.rows());
  put_le32(os, static_cast<std::uint32_t>(N));
  put_le32(os, bits<float, std::uint32_t>(static_cast<float>(matrix.lambda.real())));
  put_le32(os, bits<float, std::uint32_t>(static_cast<float>(matrix.lambda.imag())));
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      put_le64(os, bits<double, std::uint64_t>(matrix.entries(i, j).real()));
      put_le64(os, bits<double, std::uint64_t>(matrix.entries(i, j).imag()));
    }
  }
  if (!os) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace sabine
