#include "slitsim/packet.hpp"

#include <cmath>
#include <numbers>

namespace slitsim {

ComplexField gaussian_packet(const PacketSpec& spec, const GridSpec& grid) {
  if (!(spec.sigma > 0.0)) throw ConfigError("packet sigma must be positive");
  ComplexField psi(grid);
  const double amp = 1.0 / std::sqrt(2.0 * std::numbers::pi * spec.sigma * spec.sigma);
  const double inv4s2 = 1.0 / (4.0 * spec.sigma * spec.sigma);
  for (int i = 0; i < grid.rows(); ++i) {
    const double y = grid.y(i);
    const double dy = y - spec.y0;
    for (int j = 0; j < grid.cols(); ++j) {
      const double x = grid.x(j);
      const double dx = x - spec.x0;
      const double envelope = amp * std::exp(-(dx * dx + dy * dy) * inv4s2);
      psi(i, j) = std::polar(envelope, spec.kx * x + spec.ky * y);
    }
  }
  const double n2 = norm_squared(psi);
  if (!(n2 > 0.0)) throw ConfigError("packet has zero discrete norm on this grid");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& v : psi.values()) v *= scale;
  return psi;
}

double packet_symmetry_defect(const ComplexField& psi) { return mirror_asymmetry(psi); }

double spectral_width(const PacketSpec& spec) { return 1.0 / (2.0 * spec.sigma); }

double spectral_ratio(const PacketSpec& spec) {
  const double k = std::hypot(spec.kx, spec.ky);
  if (k <= 0.0) throw ConfigError("spectral_ratio: |k| must be positive");
  return spectral_width(spec) / k;
}

double barrier_overlap(const ComplexField& psi, const PotentialField& field) {
  if (!(psi.grid() == field.grid)) {
    throw StructureError("barrier_overlap: field and potential on different grids");
  }
  double peak = 0.0;
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    if (field.barrier[idx] > 0.0) peak = std::max(peak, std::abs(psi.data()[idx]));
  }
  return peak;
}

}  // namespace slitsim
