#include <doctest.h>

#include <cmath>
#include <complex>

#include "slitsim/packet.hpp"

using namespace slitsim;

namespace {

GridSpec stock_grid() { return make_grid(1.6, 1.2, 0.002); }

// Closed-form norm of the difference of two packets equal up to the k phase:
// ||psi_k - psi_k~||^2 = 2 (1 - exp(-|dk|^2 sigma^2 / 2)) for x0 = x0~.
double analytic_k_difference(double dkx, double dky, double sigma) {
  const double d2 = dkx * dkx + dky * dky;
  return std::sqrt(2.0 * (1.0 - std::exp(-0.5 * d2 * sigma * sigma)));
}

}  // namespace

TEST_CASE("gaussian packet: raw discrete norm is 1 within 1e-6, exact after scaling") {
  const GridSpec g = stock_grid();
  PacketSpec spec;  // stock values
  // reproduce the raw (pre-normalization) norm
  ComplexField raw(g);
  const double amp = 1.0 / std::sqrt(2.0 * M_PI * spec.sigma * spec.sigma);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      const double dx = g.x(j) - spec.x0;
      const double dy = g.y(i) - spec.y0;
      raw(i, j) = amp * std::exp(-(dx * dx + dy * dy) / (4 * spec.sigma * spec.sigma));
    }
  }
  CHECK(norm_squared(raw) == doctest::Approx(1.0).epsilon(1e-6));

  const ComplexField psi = gaussian_packet(spec, g);
  CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-12));

  // |psi| maximal at the packet center
  double peak = 0.0;
  int pi = 0, pj = 0;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      if (std::abs(psi(i, j)) > peak) {
        peak = std::abs(psi(i, j));
        pi = i;
        pj = j;
      }
    }
  }
  CHECK(g.x(pj) == 0.0);
  CHECK(g.y(pi) == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("renormalization is idempotent") {
  const GridSpec g = make_grid(0.8, 0.6, 0.004);
  PacketSpec spec;
  spec.sigma = 0.05;
  spec.y0 = -0.3;
  const ComplexField psi = gaussian_packet(spec, g);
  CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("modulus is independent of k (phase-only factor)") {
  const GridSpec g = make_grid(0.8, 0.6, 0.004);
  PacketSpec axial;
  axial.ky = 180.0;
  PacketSpec tilted;
  tilted.kx = -113.0;
  tilted.ky = 140.0;
  const ComplexField a = gaussian_packet(axial, g);
  const ComplexField b = gaussian_packet(tilted, g);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a.data()[i]) == doctest::Approx(std::abs(b.data()[i])).epsilon(1e-12));
  }
}

TEST_CASE("spectral width: sigma_k / |k| = 3.1e-2 for the stock packet") {
  PacketSpec spec;
  CHECK(spectral_width(spec) == doctest::Approx(1.0 / 0.18).epsilon(1e-12));
  CHECK(spectral_ratio(spec) == doctest::Approx(0.030864).epsilon(1e-3));
}

TEST_CASE("packet symmetry defect: exactly zero iff x0 = 0 and kx = 0") {
  const GridSpec g = make_grid(0.8, 0.6, 0.004);
  PacketSpec sym;
  sym.y0 = -0.3;
  CHECK(packet_symmetry_defect(gaussian_packet(sym, g)) == 0.0);

  PacketSpec shifted = sym;
  shifted.x0 = 0.02;
  CHECK(packet_symmetry_defect(gaussian_packet(shifted, g)) > 1e-6);

  PacketSpec tilted = sym;
  tilted.kx = 1.0;
  CHECK(packet_symmetry_defect(gaussian_packet(tilted, g)) > 1e-6);
}

TEST_CASE("symmetry defect of a tilted packet matches the closed form") {
  const GridSpec g = stock_grid();
  PacketSpec strong;  // the strongly tilted case
  strong.kx = -113.0;
  strong.ky = 140.0;
  // mirror flips kx -> +113: |dk| = 226, overlap vanishes, defect -> sqrt(2)
  const double d_strong = packet_symmetry_defect(gaussian_packet(strong, g));
  CHECK(d_strong == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

  PacketSpec weak;  // the barely tilted case
  weak.kx = -2.0;
  weak.ky = 179.99;
  const double d_weak = packet_symmetry_defect(gaussian_packet(weak, g));
  const double expected = analytic_k_difference(4.0, 0.0, weak.sigma);
  CHECK(d_weak == doctest::Approx(expected).epsilon(1e-4));
  // linearized estimate |dkx| sqrt(A) with A = sigma^2 + x0^2
  CHECK(d_weak == doctest::Approx(4.0 * weak.sigma).epsilon(5e-3));
}

TEST_CASE("barrier overlap reports the packet amplitude on barrier nodes") {
  const GridSpec g = stock_grid();
  const PotentialField V = build_billiard(BilliardShape::square(), 1e6, 0.008, g);
  PacketSpec spec;  // stock packet: tail reaches the walls
  const ComplexField psi = gaussian_packet(spec, g);
  const double overlap = barrier_overlap(psi, V);
  CHECK(overlap > 1e-8);   // the stock packet is wide enough to warn
  CHECK(overlap < 1.0);

  PacketSpec narrow;
  narrow.sigma = 0.04;
  narrow.y0 = -0.5;
  CHECK(barrier_overlap(gaussian_packet(narrow, g), V) < 1e-8);
}

TEST_CASE("invalid sigma is rejected") {
  PacketSpec bad;
  bad.sigma = 0.0;
  CHECK_THROWS_AS(gaussian_packet(bad, stock_grid()), ConfigError);
}
