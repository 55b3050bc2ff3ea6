#include "slitsim/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slitsim {

std::vector<double> current_y(const ComplexField& psi, int row) {
  const GridSpec& g = psi.grid();
  if (row < 1 || row > g.ny - 1) {
    throw StructureError("current_y: row must be interior (the central difference "
                         "needs both neighbors)");
  }
  const int ncols = g.cols();
  std::vector<double> j(static_cast<std::size_t>(ncols), 0.0);
  const double inv2d = 1.0 / (2.0 * g.delta);
  const std::complex<double>* c = psi.data() + g.index(row, 0);
  const std::complex<double>* up = psi.data() + g.index(row + 1, 0);
  const std::complex<double>* dn = psi.data() + g.index(row - 1, 0);
  for (int k = 0; k < ncols; ++k) {
    const double wr = (up[k].real() - dn[k].real()) * inv2d;
    const double wi = (up[k].imag() - dn[k].imag()) * inv2d;
    j[static_cast<std::size_t>(k)] = c[k].real() * wi - c[k].imag() * wr;
  }
  return j;
}

ScreenRecord::ScreenRecord(const GridSpec& grid, double screen_distance,
                           std::int64_t stride)
    : grid_(grid), stride_(stride) {
  if (!(screen_distance > 0.0)) {
    throw ConfigError("screen distance must be positive");
  }
  const double ratio = screen_distance / grid.delta;
  const long cells = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(cells)) > 1e-6 * std::max(1.0, ratio)) {
    throw ConfigError("screen distance must be an integral multiple of the spacing");
  }
  row_ = grid.origin_row + static_cast<int>(cells);
  if (row_ < 1 || row_ > grid.ny - 1) {
    throw ConfigError("screen row falls outside the interior of the region");
  }
  if (stride_ < 1) throw ConfigError("screen stride must be >= 1");
  intensity_.assign(static_cast<std::size_t>(grid.cols()), 0.0);
}

void ScreenRecord::accumulate(const EvolutionState& state, double tau) {
  if (window_steps > 0 && state.step > window_steps) return;
  const std::vector<double> j = current_y(state.psi, row_);
  const double weight = tau * static_cast<double>(stride_);
  for (std::size_t k = 0; k < intensity_.size(); ++k) intensity_[k] += j[k] * weight;
  samples_ += 1;
}

std::vector<double> ScreenRecord::screen_x() const {
  std::vector<double> x(static_cast<std::size_t>(grid_.cols()));
  for (int k = 0; k < grid_.cols(); ++k) x[static_cast<std::size_t>(k)] = grid_.x(k);
  return x;
}

double ScreenRecord::integrated() const {
  double s = 0.0;
  for (double v : intensity_) s += v;
  return s * grid_.delta;
}

namespace {

std::complex<double> slit_amplitude(const ComplexField& psi,
                                    const std::vector<int>& columns, int row) {
  std::complex<double> acc{};
  for (int j : columns) acc += psi(row, j);
  return acc / static_cast<double>(columns.size());
}

}  // namespace

SlitPhaseSample slit_phase(const ComplexField& psi, const SlitSpec& slits,
                           double amplitude_floor, SlitPhaseMode mode) {
  const GridSpec& g = psi.grid();
  if (!g.has_mirror_column()) {
    throw StructureError("slit_phase: grid has no mirror column");
  }
  std::complex<double> a, b;
  if (mode == SlitPhaseMode::NodeSample) {
    const int offset = static_cast<int>(std::lround(0.5 * slits.distance / g.delta));
    if (offset < 1 || g.origin_col - offset < 0 || g.origin_col + offset > g.nx) {
      throw ConfigError("slit centers do not fall on distinct grid columns");
    }
    a = psi(g.origin_row, g.origin_col - offset);
    b = psi(g.origin_row, g.origin_col + offset);
  } else {
    const SlitColumns cols = slit_columns(slits, g);
    if (cols.a.empty()) throw ConfigError("slits cover no grid columns");
    a = slit_amplitude(psi, cols.a, g.origin_row);
    b = slit_amplitude(psi, cols.b, g.origin_row);
  }
  SlitPhaseSample s;
  s.amp_a = std::abs(a);
  s.amp_b = std::abs(b);
  s.valid = s.amp_a >= amplitude_floor && s.amp_b >= amplitude_floor;
  if (s.valid) {
    const double num = a.real() * b.real() + a.imag() * b.imag();  // Re(a conj b)
    const double den = std::sqrt(std::norm(a) * std::norm(b));
    s.cos_dphi = std::clamp(num / den, -1.0, 1.0);
  }
  return s;
}

SlitPhaseRecorder::SlitPhaseRecorder(const GridSpec& grid, const SlitSpec& slits,
                                     double tau, double amplitude_floor,
                                     SlitPhaseMode mode, std::int64_t stride)
    : slits_(slits), tau_(tau), floor_(amplitude_floor), mode_(mode),
      stride_(stride) {
  if (stride_ < 1) throw ConfigError("phase stride must be >= 1");
  // Fail early on bad slit/grid combinations.
  (void)slit_phase(ComplexField(grid), slits_, floor_, mode_);
}

void SlitPhaseRecorder::sample(const EvolutionState& state) {
  SlitPhaseSample s = slit_phase(state.psi, slits_, floor_, mode_);
  s.step = state.step;
  s.t = static_cast<double>(state.step) * tau_;
  series_.push_back(s);
}

std::optional<double> SlitPhaseRecorder::cos_dphi_stddev() const {
  double sum = 0.0, sum2 = 0.0;
  std::int64_t n = 0;
  for (const auto& s : series_) {
    if (!s.valid) continue;
    sum += s.cos_dphi;
    sum2 += s.cos_dphi * s.cos_dphi;
    n += 1;
  }
  if (n < 2) return std::nullopt;
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sum2 / static_cast<double>(n) - mean * mean);
  return std::sqrt(var);
}

double predicted_screen_phase(double x, double screen_distance, double phi_a,
                              double phi_b, double lambda,
                              const SlitSpec& slits) {
  if (!(lambda > 0.0)) throw ConfigError("predicted_screen_phase: lambda must be positive");
  if (!(screen_distance > 0.0)) {
    throw ConfigError("predicted_screen_phase: screen distance must be positive");
  }
  const double half = 0.5 * slits.distance;
  const double r_a = std::hypot(x + half, screen_distance);
  const double r_b = std::hypot(x - half, screen_distance);
  return phi_a - phi_b + 2.0 * std::numbers::pi * (r_a - r_b) / lambda;
}

std::vector<double> predicted_fringe_maxima(double lambda, const SlitSpec& slits,
                                            double screen_distance, double x_lo,
                                            double x_hi) {
  if (!(lambda > 0.0) || !(screen_distance > 0.0) || !(x_hi > x_lo)) {
    throw ConfigError("predicted_fringe_maxima: bad window or parameters");
  }
  const double half = 0.5 * slits.distance;
  const auto path = [&](double x) {
    return std::hypot(x + half, screen_distance) - std::hypot(x - half, screen_distance);
  };
  // path(x) is strictly increasing, so each order m has at most one root.
  const double p_lo = path(x_lo);
  const double p_hi = path(x_hi);
  std::vector<double> maxima;
  const long m_lo = static_cast<long>(std::ceil(p_lo / lambda - 1e-12));
  const long m_hi = static_cast<long>(std::floor(p_hi / lambda + 1e-12));
  for (long m = m_lo; m <= m_hi; ++m) {
    const double target = static_cast<double>(m) * lambda;
    double lo = x_lo, hi = x_hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (path(mid) < target ? lo : hi) = mid;
    }
    maxima.push_back(0.5 * (lo + hi));
  }
  return maxima;
}

double leaked_probability(const ComplexField& psi,
                          const std::vector<std::uint8_t>& mask) {
  if (mask.size() != psi.size()) {
    throw StructureError("leaked_probability: mask size does not match the field");
  }
  const std::complex<double>* p = psi.data();
  double inside = 0.0;
  for (std::size_t idx = 0; idx < mask.size(); ++idx) {
    if (mask[idx]) inside += p[idx].real() * p[idx].real() + p[idx].imag() * p[idx].imag();
  }
  const double d = psi.grid().delta;
  return 1.0 - d * d * inside;
}

}  // namespace slitsim
