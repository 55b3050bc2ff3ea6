#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "slitsim/grid.hpp"

using namespace slitsim;

namespace {

ComplexField random_field(const GridSpec& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexField f(g);
  for (auto& v : f.values()) v = {u(rng), u(rng)};
  return f;
}

}  // namespace

TEST_CASE("make_grid: stock region gives 800x600 cells with a mirror column") {
  const GridSpec g = make_grid(1.6, 1.2, 0.002);
  CHECK(g.ny == 800);
  CHECK(g.nx == 600);
  CHECK(g.rows() == 801);
  CHECK(g.cols() == 601);
  CHECK(g.has_mirror_column());
  CHECK(g.x(g.origin_col) == 0.0);
  CHECK(g.y(g.origin_row) == 0.0);
  // default origin placement: 0.5 above the slit side, 1.1 below
  CHECK(g.y_max() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.y_min() == doctest::Approx(-1.1).epsilon(1e-12));
}

TEST_CASE("make_grid: tiny exact case 4x4 cells") {
  const GridSpec g = make_grid(1.0, 1.0, 0.25);
  CHECK(g.nx == 4);
  CHECK(g.ny == 4);
  CHECK(g.has_mirror_column());
  CHECK(g.x(2) == 0.0);
}

TEST_CASE("make_grid: non-integral ratio rejected, naming the dimension") {
  CHECK_THROWS_WITH_AS(make_grid(1.6, 1.2, 0.0021),
                       doctest::Contains("height"), ConfigError);
  CHECK_THROWS_AS(make_grid(1.6, 1.2001, 0.002), ConfigError);
  CHECK_THROWS_AS(make_grid(0.0, 1.2, 0.002), ConfigError);
  // odd cell count along x has no node at x = 0
  CHECK_THROWS_AS(make_grid(1.0, 0.75, 0.25), ConfigError);
}

TEST_CASE("node coordinates mirror bit-exactly") {
  const GridSpec g = make_grid(1.6, 1.2, 0.002);
  for (int j = 0; j <= g.nx; ++j) {
    CHECK(g.x(g.mirror_col(j)) == -g.x(j));
  }
}

TEST_CASE("norm_squared: zero field, uniform field") {
  GridSpec tiny;  // 2x2 nodes (1x1 cells), delta = 0.5
  tiny.nx = 1;
  tiny.ny = 1;
  tiny.delta = 0.5;
  ComplexField f(tiny);
  CHECK(norm_squared(f) == 0.0);
  for (auto& v : f.values()) v = 1.0;
  CHECK(norm_squared(f) == doctest::Approx(1.0).epsilon(1e-15));  // 4 * 0.25 * 1
}

TEST_CASE("norm_squared is |c|^2-homogeneous") {
  const GridSpec g = make_grid(0.5, 0.5, 0.05);
  const ComplexField f = random_field(g, 7);
  const double base = norm_squared(f);
  const std::complex<double> c{0.3, -1.7};
  ComplexField scaled = f;
  for (auto& v : scaled.values()) v *= c;
  CHECK(norm_squared(scaled) == doctest::Approx(std::norm(c) * base).epsilon(1e-12));
}

TEST_CASE("mirror_x is an exact involution and preserves the norm") {
  const GridSpec g = make_grid(0.4, 0.6, 0.02);
  const ComplexField f = random_field(g, 21);
  const ComplexField once = mirror_x(f);
  const ComplexField twice = mirror_x(once);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(twice.data()[i] == f.data()[i]);
  }
  CHECK(norm_squared(once) == norm_squared(f));
}

TEST_CASE("mirror_x moves an off-axis column to its mirror image") {
  const GridSpec g = make_grid(0.4, 0.4, 0.05);
  ComplexField f(g);
  const int left = g.origin_col - 2;
  for (int i = 0; i < g.rows(); ++i) f(i, left) = {1.0, -2.0};
  const ComplexField m = mirror_x(f);
  const int right = g.origin_col + 2;
  for (int i = 0; i < g.rows(); ++i) {
    CHECK(m(i, right) == std::complex<double>{1.0, -2.0});
    CHECK(m(i, left) == std::complex<double>{});
  }
}

TEST_CASE("mirror_x: symmetric field unchanged") {
  const GridSpec g = make_grid(0.4, 0.4, 0.05);
  ComplexField f(g);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j <= g.nx; ++j) {
      const double x = g.x(j);
      f(i, j) = std::complex<double>(x * x, g.y(i));
    }
  }
  const ComplexField m = mirror_x(f);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(m.data()[i] == f.data()[i]);
  CHECK(mirror_asymmetry(f) == 0.0);
}

TEST_CASE("mirror_x requires a mirror column") {
  GridSpec g;
  g.nx = 3;  // no node at x = 0 for odd cell counts with a centered origin
  g.ny = 3;
  g.delta = 0.1;
  g.origin_col = 1;
  ComplexField f(g);
  CHECK_THROWS_AS(mirror_x(f), StructureError);
}

TEST_CASE("all_finite flags NaN and infinity") {
  const GridSpec g = make_grid(0.2, 0.2, 0.05);
  ComplexField f(g);
  CHECK(all_finite(f));
  f(1, 1) = {std::nan(""), 0.0};
  CHECK(!all_finite(f));
}
