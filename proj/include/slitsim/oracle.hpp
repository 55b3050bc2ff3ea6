#pragma once

#include <complex>
#include <vector>

#include "slitsim/geometry.hpp"
#include "slitsim/grid.hpp"
#include "slitsim/packet.hpp"

namespace slitsim::oracle {

// Dense matrix form of H on a small grid, assembled directly from the
// five-point stencil definition (independent of the production sweep code).
// Used only by tests; capped at 4096 nodes.
struct DenseHamiltonian {
  int dim = 0;
  GridSpec grid{};
  bool hermitian = true;  // V_A == 0 everywhere
  std::vector<std::complex<double>> matrix;  // row-major dim x dim

  std::complex<double>& at(int r, int c) { return matrix[static_cast<std::size_t>(r) * dim + c]; }
  const std::complex<double>& at(int r, int c) const {
    return matrix[static_cast<std::size_t>(r) * dim + c];
  }
};

DenseHamiltonian dense_hamiltonian(const GridSpec& grid, const PotentialField& V);

// psi' = exp(-i M t) psi, via eigendecomposition in the Hermitian case and a
// scaling-and-squaring matrix exponential in the absorbing case.
ComplexField expm_propagate(const ComplexField& psi, const DenseHamiltonian& M,
                            double t);

// Closed-form free evolution of the Gaussian packet: center drifts at k,
// per-axis width sigma(t) = sigma sqrt(1 + (t / (2 sigma^2))^2). Sampled on
// the grid and renormalized exactly like gaussian_packet.
ComplexField free_gaussian_analytic(const PacketSpec& spec, const GridSpec& grid,
                                    double t);

}  // namespace slitsim::oracle
