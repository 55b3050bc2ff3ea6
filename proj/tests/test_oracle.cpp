#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "slitsim/oracle.hpp"
#include "slitsim/propagator.hpp"

using namespace slitsim;

namespace {

GridSpec small_grid(int cells, double delta) {
  GridSpec g;
  g.nx = cells;
  g.ny = cells;
  g.delta = delta;
  g.origin_col = cells / 2;
  g.origin_row = cells / 2;
  return g;
}

ComplexField random_field(const GridSpec& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexField f(g);
  for (auto& v : f.values()) v = {u(rng), u(rng)};
  return f;
}

PotentialField random_symmetric_barrier(const GridSpec& g, double vmax,
                                        unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, vmax);
  PotentialField V(g);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j <= g.nx / 2; ++j) {
      const double v = u(rng);
      V.barrier[g.index(i, j)] = v;
      V.barrier[g.index(i, g.mirror_col(j))] = v;
    }
  }
  return V;
}

}  // namespace

TEST_CASE("dense matrix carries the five-point stencil entries") {
  const GridSpec g = small_grid(2, 0.125);  // 3x3 nodes, exact binary spacing
  PotentialField V(g);
  V.barrier[g.index(1, 1)] = 42.0;
  const auto H = oracle::dense_hamiltonian(g, V);
  CHECK(H.dim == 9);
  const int center = static_cast<int>(g.index(1, 1));
  CHECK(H.at(center, center) == std::complex<double>(128.0 + 42.0, 0.0));  // 2/delta^2 + V
  const int corner = static_cast<int>(g.index(0, 0));
  CHECK(H.at(corner, corner) == std::complex<double>(128.0, 0.0));
  CHECK(H.at(center, static_cast<int>(g.index(0, 1))) == std::complex<double>(-32.0, 0.0));
  CHECK(H.at(center, static_cast<int>(g.index(1, 0))) == std::complex<double>(-32.0, 0.0));
  CHECK(H.at(center, corner) == std::complex<double>(0.0, 0.0));  // no diagonal coupling
  CHECK(H.hermitian);
}

TEST_CASE("dense matrix is exactly Hermitian without an absorber") {
  const GridSpec g = small_grid(6, 0.05);
  const PotentialField V = random_symmetric_barrier(g, 100.0, 3);
  const auto H = oracle::dense_hamiltonian(g, V);
  for (int r = 0; r < H.dim; ++r) {
    for (int c = 0; c < H.dim; ++c) {
      CHECK(H.at(r, c) == std::conj(H.at(c, r)));
    }
  }
}

TEST_CASE("dense matrix rejects oversized grids") {
  const GridSpec g = small_grid(80, 0.01);  // 81*81 > 4096
  CHECK_THROWS_AS(oracle::dense_hamiltonian(g, PotentialField(g)), ConfigError);
}

TEST_CASE("dense matvec agrees with the stencil sweep to roundoff") {
  GridSpec g;
  g.nx = 6;
  g.ny = 4;
  g.delta = 0.03;
  g.origin_col = 3;
  g.origin_row = 2;
  PotentialField V(g);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1e3);
  for (auto& v : V.barrier) v = u(rng);
  for (auto& v : V.absorber) v = 0.25 * u(rng);
  const auto H = oracle::dense_hamiltonian(g, V);

  const ComplexField psi = random_field(g, 5);
  const ComplexField swept = apply_hamiltonian(psi, V);
  for (int r = 0; r < H.dim; ++r) {
    std::complex<double> acc{};
    for (int c = 0; c < H.dim; ++c) acc += H.at(r, c) * psi.data()[c];
    CHECK(std::abs(acc - swept.data()[r]) <= 1e-12 * (1.0 + std::abs(acc)));
  }
}

TEST_CASE("expm_propagate: identity at t = 0 and unitary for Hermitian H") {
  const GridSpec g = small_grid(8, 0.05);
  const PotentialField V = random_symmetric_barrier(g, 500.0, 11);
  const auto H = oracle::dense_hamiltonian(g, V);
  const ComplexField psi = random_field(g, 23);

  const ComplexField same = oracle::expm_propagate(psi, H, 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    CHECK(std::abs(same.data()[i] - psi.data()[i]) < 1e-12);
  }

  const ComplexField later = oracle::expm_propagate(psi, H, 3e-4);
  CHECK(field_norm(later) == doctest::Approx(field_norm(psi)).epsilon(1e-12));
}

TEST_CASE("expm_propagate: absorber damps the norm") {
  const GridSpec g = small_grid(8, 0.05);
  PotentialField V(g);
  for (auto& v : V.absorber) v = 2e3;
  const auto H = oracle::dense_hamiltonian(g, V);
  CHECK(!H.hermitian);
  const ComplexField psi = random_field(g, 29);
  const double t = 2e-4;
  const ComplexField later = oracle::expm_propagate(psi, H, t);
  // uniform V_A: |psi(t)| = e^{-V_A t} |psi(0)| exactly
  CHECK(field_norm(later) ==
        doctest::Approx(std::exp(-2e3 * t) * field_norm(psi)).epsilon(1e-10));
}

TEST_CASE("truncated-series stepper tracks the exact propagator") {
  const GridSpec g = small_grid(12, 0.02);
  const PotentialField V = random_symmetric_barrier(g, 5e3, 41);
  const auto H = oracle::dense_hamiltonian(g, V);

  StepperConfig cfg;
  cfg.tau = 1e-6;
  Propagator prop(g, cfg);
  EvolutionState st = make_state(random_field(g, 43));
  const ComplexField psi0 = st.psi;
  const int steps = 20;
  for (int s = 0; s < steps; ++s) prop.step(st, V);
  const ComplexField exact = oracle::expm_propagate(psi0, H, steps * cfg.tau);

  double err2 = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    err2 += std::norm(st.psi.data()[i] - exact.data()[i]);
  }
  const double err = std::sqrt(err2) * g.delta / field_norm(psi0);
  CHECK(err < 1e-9);
}

TEST_CASE("analytic free Gaussian: matches the sampled packet at t = 0") {
  const GridSpec g = make_grid(0.4, 0.4, 0.004);
  PacketSpec spec;
  spec.sigma = 0.04;
  spec.x0 = 0.02;
  spec.y0 = -0.05;
  spec.kx = 30.0;
  spec.ky = 40.0;
  const ComplexField a = gaussian_packet(spec, g);
  const ComplexField b = oracle::free_gaussian_analytic(spec, g, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a.data()[i] - b.data()[i]) < 1e-12);
  }
}

TEST_CASE("analytic free Gaussian: center drifts at k and the width follows sigma(t)") {
  const GridSpec g = make_grid(0.6, 0.6, 0.004, 0.3);
  PacketSpec spec;
  spec.sigma = 0.04;
  spec.kx = 50.0;
  spec.ky = -30.0;
  spec.x0 = -0.05;
  spec.y0 = 0.02;
  const double t = 1e-3;
  const ComplexField psi = oracle::free_gaussian_analytic(spec, g, t);
  double mx = 0.0, my = 0.0, mass = 0.0;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      const double p = std::norm(psi(i, j));
      mx += p * g.x(j);
      my += p * g.y(i);
      mass += p;
    }
  }
  CHECK(std::abs(mx / mass - (spec.x0 + spec.kx * t)) < 1e-5);
  CHECK(std::abs(my / mass - (spec.y0 + spec.ky * t)) < 1e-5);

  double w2 = 0.0;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      const double dx = g.x(j) - mx / mass;
      w2 += std::norm(psi(i, j)) * dx * dx;
    }
  }
  const double ratio = t / (2.0 * spec.sigma * spec.sigma);
  CHECK(std::sqrt(w2 / mass) ==
        doctest::Approx(spec.sigma * std::sqrt(1.0 + ratio * ratio)).epsilon(1e-6));
}

TEST_CASE("simulated free packet matches the analytic evolution") {
  const GridSpec g = make_grid(0.4, 0.4, 0.002, 0.2);
  PacketSpec spec;
  spec.sigma = 0.03;
  spec.kx = 30.0;
  spec.ky = 40.0;
  spec.x0 = 0.0;
  spec.y0 = -0.05;
  EvolutionState st = make_state(gaussian_packet(spec, g));
  StepperConfig cfg;
  cfg.tau = 1e-6;
  Propagator prop(g, cfg);
  const int steps = 400;
  for (int s = 0; s < steps; ++s) prop.step(st, PotentialField(g));
  const ComplexField exact = oracle::free_gaussian_analytic(spec, g, steps * cfg.tau);
  double err2 = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    err2 += std::norm(st.psi.data()[i] - exact.data()[i]);
  }
  CHECK(std::sqrt(err2) * g.delta < 1e-3);
}
