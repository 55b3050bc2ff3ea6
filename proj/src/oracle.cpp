#include "slitsim/oracle.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace slitsim::oracle {

DenseHamiltonian dense_hamiltonian(const GridSpec& grid, const PotentialField& V) {
  if (!(V.grid == grid)) {
    throw StructureError("dense_hamiltonian: potential grid mismatch");
  }
  if (grid.nodes() > 4096) {
    throw ConfigError("dense_hamiltonian: grid exceeds the 4096-node cap");
  }
  DenseHamiltonian H;
  H.dim = static_cast<int>(grid.nodes());
  H.grid = grid;
  H.matrix.assign(static_cast<std::size_t>(H.dim) * H.dim, {});

  const double off = -0.5 / (grid.delta * grid.delta);
  const double diag_kin = 2.0 / (grid.delta * grid.delta);
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) {
      const int r = static_cast<int>(grid.index(i, j));
      const std::size_t idx = grid.index(i, j);
      H.at(r, r) = std::complex<double>(diag_kin + V.barrier[idx], -V.absorber[idx]);
      if (V.absorber[idx] != 0.0) H.hermitian = false;
      if (i > 0) H.at(r, static_cast<int>(grid.index(i - 1, j))) = off;
      if (i < grid.ny) H.at(r, static_cast<int>(grid.index(i + 1, j))) = off;
      if (j > 0) H.at(r, static_cast<int>(grid.index(i, j - 1))) = off;
      if (j < grid.nx) H.at(r, static_cast<int>(grid.index(i, j + 1))) = off;
    }
  }
  return H;
}

ComplexField expm_propagate(const ComplexField& psi, const DenseHamiltonian& M,
                            double t) {
  if (!(psi.grid() == M.grid)) {
    throw StructureError("expm_propagate: field grid mismatch");
  }
  const int n = M.dim;
  // The stencil matrix is symmetric (real symmetric couplings, the absorber
  // only adds to the diagonal), so the column-major view of the row-major
  // storage is the matrix itself.
  Eigen::Map<const Eigen::MatrixXcd> H(M.matrix.data(), n, n);
  Eigen::Map<const Eigen::VectorXcd> v(psi.data(), n);
  Eigen::VectorXcd out(n);
  const std::complex<double> mit(0.0, -t);
  if (M.hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * v;
    Eigen::VectorXcd phased(n);
    for (int k = 0; k < n; ++k) {
      phased(k) = std::exp(mit * es.eigenvalues()(k)) * coeffs(k);
    }
    out = es.eigenvectors() * phased;
  } else {
    const Eigen::MatrixXcd A = (mit * H).eval();
    out = A.exp() * v;
  }
  ComplexField result(M.grid);
  for (int k = 0; k < n; ++k) result.data()[k] = out(k);
  return result;
}

ComplexField free_gaussian_analytic(const PacketSpec& spec, const GridSpec& grid,
                                    double t) {
  if (!(spec.sigma > 0.0)) throw ConfigError("packet sigma must be positive");
  const double s2 = spec.sigma * spec.sigma;
  const std::complex<double> w(1.0, t / (2.0 * s2));
  const double amp_1d = std::pow(2.0 * std::numbers::pi * s2, -0.25);
  const std::complex<double> prefactor = amp_1d * amp_1d / w;  // product of the two 1/sqrt(w)

  const auto axis_envelope = [&](double coord, double center, double k) {
    const double d = coord - center - k * t;
    return std::exp(-(d * d) / (4.0 * s2 * w));
  };

  ComplexField psi(grid);
  for (int i = 0; i < grid.rows(); ++i) {
    const double y = grid.y(i);
    const std::complex<double> fy = axis_envelope(y, spec.y0, spec.ky);
    const double phase_y = spec.ky * y;
    for (int j = 0; j < grid.cols(); ++j) {
      const double x = grid.x(j);
      const std::complex<double> fx = axis_envelope(x, spec.x0, spec.kx);
      const double phase =
          spec.kx * x + phase_y - 0.5 * (spec.kx * spec.kx + spec.ky * spec.ky) * t;
      psi(i, j) = prefactor * std::polar(1.0, phase) * fx * fy;
    }
  }
  const double n2 = norm_squared(psi);
  if (!(n2 > 0.0)) throw ConfigError("analytic packet has zero norm on this grid");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& v : psi.values()) v *= scale;
  return psi;
}

}  // namespace slitsim::oracle
