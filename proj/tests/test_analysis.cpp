#include <doctest.h>

#include <cmath>
#include <vector>

#include "slitsim/analysis.hpp"

using namespace slitsim;

namespace {

IntensityProfile synthetic(const std::vector<double>& xs,
                           double (*f)(double)) {
  IntensityProfile p;
  p.x = xs;
  p.intensity.reserve(xs.size());
  for (double x : xs) p.intensity.push_back(f(x));
  return p;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs.push_back(lo + (hi - lo) * i / (n - 1));
  }
  return xs;
}

double fringes(double x) {
  return (1.0 + std::cos(2.0 * M_PI * x / 0.1)) * std::exp(-x * x / 0.08);
}

double two_bumps(double x) {
  const double s = 0.08;
  return std::exp(-(x - 0.1) * (x - 0.1) / (2 * s * s)) +
         std::exp(-(x + 0.1) * (x + 0.1) / (2 * s * s));
}

double parabola(double x) { return x * x; }

double flat(double) { return 1.0; }

}  // namespace

TEST_CASE("fringe visibility: clean fringes near 1, incoherent bumps low") {
  const auto xs = linspace(-0.3, 0.3, 301);
  CHECK(fringe_visibility(synthetic(xs, fringes)) > 0.98);
  CHECK(fringe_visibility(synthetic(xs, two_bumps)) < 0.3);
}

TEST_CASE("fringe visibility: constant profile has no extrema") {
  const auto xs = linspace(-0.3, 0.3, 301);
  CHECK_THROWS_AS(fringe_visibility(synthetic(xs, flat)), ConfigError);
}

TEST_CASE("visibility stays in [0, 1] across assorted profiles") {
  const auto xs = linspace(-0.3, 0.3, 301);
  for (auto f : {fringes, two_bumps}) {
    const double v = fringe_visibility(synthetic(xs, f));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("pattern symmetry: even profiles score zero, the center may be a minimum") {
  const auto xs = linspace(-0.3, 0.3, 301);
  const PatternSymmetry para = pattern_symmetry(synthetic(xs, parabola));
  CHECK(para.defect == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(!para.central_maximum);

  const PatternSymmetry fr = pattern_symmetry(synthetic(xs, fringes));
  CHECK(fr.defect == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fr.central_maximum);

  IntensityProfile skew = synthetic(xs, two_bumps);
  for (std::size_t i = 0; i < skew.x.size(); ++i) {
    if (skew.x[i] > 0) skew.intensity[i] *= 2.0;
  }
  CHECK(pattern_symmetry(skew).defect > 0.2);
}

TEST_CASE("incoherent_sum_compare: identity, symmetry, exact-sum zero") {
  const auto xs = linspace(-0.3, 0.3, 301);
  IntensityProfile a = synthetic(xs, two_bumps);
  IntensityProfile b = a;
  for (auto& v : b.intensity) v *= 0.5;
  IntensityProfile sum;
  sum.x = xs;
  sum.intensity.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sum.intensity[i] = a.intensity[i] * 0.5 + b.intensity[i];
  }
  // I_two == Ia + Ib exactly with Ia = 0.5 a, Ib = b - wait: use direct halves
  IntensityProfile half = b;
  CHECK(incoherent_sum_compare(sum, half, half) ==
        doctest::Approx(0.0).epsilon(1e-12));

  IntensityProfile fr = synthetic(xs, fringes);
  const double d1 = incoherent_sum_compare(fr, half, half);
  CHECK(d1 > 0.0);
  // symmetry of the two-slit operand vs the summed operand
  IntensityProfile other = sum;
  for (auto& v : other.intensity) v *= 1.3;
  IntensityProfile oa = half, ob = half;
  const double fwd = incoherent_sum_compare(other, oa, ob);
  // compare(other, a+b) must equal compare with the roles of the distance
  // arguments swapped: rebuild "a+b" as a profile and swap
  IntensityProfile ab;
  ab.x = xs;
  ab.intensity.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ab.intensity[i] = oa.intensity[i] + ob.intensity[i];
  }
  IntensityProfile zero;
  zero.x = xs;
  zero.intensity.assign(xs.size(), 0.0);
  const double rev = incoherent_sum_compare(ab, other, zero);
  CHECK(fwd == doctest::Approx(rev).epsilon(1e-12));

  IntensityProfile mismatched = sum;
  mismatched.x.pop_back();
  mismatched.intensity.pop_back();
  CHECK_THROWS_AS(incoherent_sum_compare(mismatched, half, half), StructureError);
}

TEST_CASE("k perturbation: zero for identical packets, bound dominates the exact norm") {
  const GridSpec g = make_grid(1.6, 1.2, 0.002);
  PacketSpec base;  // stock
  CHECK(k_perturbation_bound(base, base, g).exact_norm == 0.0);
  CHECK(k_perturbation_bound(base, base, g).worst_case_bound == 0.0);

  PacketSpec tilted = base;
  tilted.kx = -2.0;
  tilted.ky = 179.99;
  const KPerturbation r = k_perturbation_bound(base, tilted, g);
  // closed form: ||psi - psi~||^2 = 2 (1 - exp(-|dk|^2 sigma^2 / 2))
  const double dk2 = 4.0 + 0.01 * 0.01;
  const double analytic = std::sqrt(2.0 * (1.0 - std::exp(-0.5 * dk2 * base.sigma * base.sigma)));
  CHECK(r.exact_norm == doctest::Approx(analytic).epsilon(1e-4));
  CHECK(r.worst_case_bound >= r.exact_norm);
  CHECK(r.worst_case_bound == doctest::Approx(std::sqrt(1.0 + 1e-4 + 0.02)).epsilon(1e-9));

  // the exact branch agrees with a direct field computation
  const ComplexField pa = gaussian_packet(base, g);
  const ComplexField pb = gaussian_packet(tilted, g);
  double diff2 = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) diff2 += std::norm(pa.data()[i] - pb.data()[i]);
  CHECK(r.exact_norm == doctest::Approx(std::sqrt(diff2) * g.delta).epsilon(1e-12));

  PacketSpec moved = base;
  moved.y0 = -0.3;
  CHECK_THROWS_AS(k_perturbation_bound(base, moved, g), ConfigError);
}

TEST_CASE("duhamel check: identical potentials give zero on both sides") {
  const GridSpec g = make_grid(0.4, 0.4, 0.01);
  const PotentialField V(g);
  PacketSpec spec;
  spec.sigma = 0.04;
  spec.ky = 60.0;
  spec.y0 = 0.0;
  StepperConfig cfg;
  cfg.tau = 2e-6;
  const DuhamelReport r =
      duhamel_firstorder_check(gaussian_packet(spec, g), V, V, 100, cfg);
  CHECK(r.lhs_norm == 0.0);
  CHECK(r.rhs_norm == 0.0);
}

TEST_CASE("duhamel check: weak smooth perturbation sits in the first-order regime") {
  const GridSpec g = make_grid(0.48, 0.48, 0.008, 0.24);
  PotentialField V(g);
  PotentialField Vt(g);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      const double x = g.x(j), y = g.y(i);
      Vt.barrier[g.index(i, j)] = 600.0 * std::exp(-(x * x + y * y) / 0.01);
    }
  }
  PacketSpec spec;
  spec.sigma = 0.04;
  spec.x0 = 0.0;
  spec.y0 = -0.1;
  spec.ky = 60.0;
  StepperConfig cfg;
  cfg.tau = 2e-6;
  const DuhamelReport r =
      duhamel_firstorder_check(gaussian_packet(spec, g), V, Vt, 150, cfg);
  CHECK(r.lhs_norm > 0.0);
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(0.2));
  CHECK(r.mismatch < 0.2);
}

TEST_CASE("duhamel check: a tiny ring displacement is not a small perturbation") {
  const GridSpec g = make_grid(1.0, 1.0, 0.01, 0.1);
  const double height = 2e5;
  const PotentialField V = build_billiard(
      BilliardShape::sinai_ring(0.0, -0.48, 0.16, 0.8), height, 0.02, g);
  const PotentialField Vt = build_billiard(
      BilliardShape::sinai_ring(0.01, -0.48, 0.16, 0.8), height, 0.02, g);
  PacketSpec spec;
  spec.sigma = 0.06;
  spec.y0 = -0.2;
  spec.ky = 150.0;
  StepperConfig cfg;
  cfg.tau = 2e-6;
  const DuhamelReport r =
      duhamel_firstorder_check(gaussian_packet(spec, g), V, Vt, 2500, cfg, 5);
  MESSAGE("ring-shift lhs norm: ", r.lhs_norm);
  // the geometric shift is one grid cell yet the evolved difference is large
  CHECK(r.lhs_norm > 0.05);
}
