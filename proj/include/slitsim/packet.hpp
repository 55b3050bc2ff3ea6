#pragma once

#include "slitsim/geometry.hpp"
#include "slitsim/grid.hpp"

namespace slitsim {

// Gaussian packet parameters: psi0 = (2 pi sigma^2)^{-1/2}
// exp[i(kx x + ky y)] exp[-((x-x0)^2 + (y-y0)^2) / (4 sigma^2)].
// sigma is the rms width of |psi0|^2 per axis.
struct PacketSpec {
  double x0 = 0.0;
  double y0 = -0.25;
  double kx = 0.0;
  double ky = 180.0;
  double sigma = 0.09;
};

// Samples the packet on the grid, then renormalizes so the discrete norm is
// exactly 1. The raw discrete norm of the stock packet is 1 within 1e-6.
ComplexField gaussian_packet(const PacketSpec& spec, const GridSpec& grid);

// ||psi - mirror_x(psi)|| / ||psi||; zero iff x0 = 0 and kx = 0 (up to
// roundoff, and exactly zero for the sampled field in that case).
double packet_symmetry_defect(const ComplexField& psi);

// Per-axis rms width in momentum space, 1/(2 sigma), and its ratio to |k|.
double spectral_width(const PacketSpec& spec);
double spectral_ratio(const PacketSpec& spec);

// Largest |psi| on a barrier node, for run-log overlap warnings.
double barrier_overlap(const ComplexField& psi, const PotentialField& field);

}  // namespace slitsim
