#include "slitsim/grid.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace slitsim {

int GridSpec::col_near(double xv) const {
  return origin_col + static_cast<int>(std::lround(xv / delta));
}

int GridSpec::row_near(double yv) const {
  return origin_row + static_cast<int>(std::lround(yv / delta));
}

namespace {

int cells_for(double extent, double delta, const char* name) {
  const double ratio = extent / delta;
  const long n = std::lround(ratio);
  if (n < 2 || std::abs(ratio - static_cast<double>(n)) > 1e-6 * ratio) {
    throw ConfigError(std::string("make_grid: ") + name +
                      " is not an integral multiple of the spacing (" +
                      std::to_string(extent) + " / " + std::to_string(delta) + ")");
  }
  return static_cast<int>(n);
}

}  // namespace

GridSpec make_grid(double height, double length, double delta,
                   double span_above_slits) {
  if (!(height > 0.0) || !(length > 0.0) || !(delta > 0.0)) {
    throw ConfigError("make_grid: height, length and spacing must be positive");
  }
  const int ny = cells_for(height, delta, "height");
  const int nx = cells_for(length, delta, "length");
  if (nx % 2 != 0) {
    throw ConfigError(
        "make_grid: length/spacing must be even so that x = 0 lies on a node "
        "column (mirror column)");
  }
  const bool defaulted = span_above_slits < 0.0;
  if (defaulted) span_above_slits = 0.3125 * height;  // stock layout ratio
  const double ratio = span_above_slits / delta;
  const long span_cells = std::lround(ratio);
  if (span_cells < 0 || span_cells > ny ||
      (!defaulted &&
       std::abs(ratio - static_cast<double>(span_cells)) > 1e-6 * std::max(1.0, ratio))) {
    throw ConfigError(
        "make_grid: span_above_slits must be an integral multiple of the "
        "spacing inside the region");
  }
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.delta = delta;
  g.origin_col = nx / 2;
  g.origin_row = ny - static_cast<int>(span_cells);
  return g;
}

double norm_squared(const ComplexField& psi) {
  const int nrows = psi.rows();
  const int ncols = psi.cols();
  std::vector<double> row_sum(static_cast<std::size_t>(nrows), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nrows; ++i) {
    const std::complex<double>* p = psi.data() + static_cast<std::size_t>(i) * ncols;
    double s = 0.0;
    for (int j = 0; j < ncols; ++j) {
      s += p[j].real() * p[j].real() + p[j].imag() * p[j].imag();
    }
    row_sum[static_cast<std::size_t>(i)] = s;
  }
  double total = 0.0;
  for (double s : row_sum) total += s;  // fixed order regardless of thread count
  return psi.grid().delta * psi.grid().delta * total;
}

double field_norm(const ComplexField& psi) { return std::sqrt(norm_squared(psi)); }

bool all_finite(const ComplexField& psi) {
  for (const auto& v : psi.values()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

ComplexField mirror_x(const ComplexField& psi) {
  const GridSpec& g = psi.grid();
  if (!g.has_mirror_column()) {
    throw StructureError("mirror_x: grid has no exact mirror column at x = 0");
  }
  ComplexField out(g);
  const int nrows = g.rows();
  const int ncols = g.cols();
  for (int i = 0; i < nrows; ++i) {
    const std::complex<double>* src = psi.data() + static_cast<std::size_t>(i) * ncols;
    std::complex<double>* dst = out.data() + static_cast<std::size_t>(i) * ncols;
    for (int j = 0; j < ncols; ++j) dst[j] = src[g.mirror_col(j)];
  }
  return out;
}

double mirror_asymmetry(const ComplexField& psi) {
  const GridSpec& g = psi.grid();
  if (!g.has_mirror_column()) {
    throw StructureError("mirror_asymmetry: grid has no exact mirror column");
  }
  const int nrows = g.rows();
  const int ncols = g.cols();
  double diff2 = 0.0;
  double ref2 = 0.0;
  for (int i = 0; i < nrows; ++i) {
    const std::complex<double>* p = psi.data() + static_cast<std::size_t>(i) * ncols;
    for (int j = 0; j < ncols; ++j) {
      const std::complex<double> d = p[j] - p[g.mirror_col(j)];
      diff2 += d.real() * d.real() + d.imag() * d.imag();
      ref2 += p[j].real() * p[j].real() + p[j].imag() * p[j].imag();
    }
  }
  if (ref2 <= 0.0) return 0.0;
  return std::sqrt(diff2 / ref2);
}

}  // namespace slitsim
