#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "slitsim/errors.hpp"

namespace slitsim {

// Uniform discretization of the rectangular integration region.
//
// Axis convention, used by every module: the origin node sits at the midpoint
// of the billiard's slit side, the billiard interior fills y < 0, and the
// emission region (screen, then absorbing layer) fills y > 0. +y is the
// propagation direction of the stock packet (k_y > 0); +x points toward slit b.
//
// nx and ny count grid *cells*; the node lattice is (ny+1) x (nx+1) and
// nx*delta spans the full width. Node coordinates are integer offsets from the
// origin node times delta, so x(mirror_col(j)) == -x(j) holds bit-exactly and
// the mirror reflection x -> -x is an exact index permutation.
struct GridSpec {
  int nx = 0;          // cells along x (width)
  int ny = 0;          // cells along y (height)
  double delta = 0.0;  // node spacing
  int origin_col = 0;  // node column of x = 0
  int origin_row = 0;  // node row of y = 0 (the slit side)

  int cols() const { return nx + 1; }
  int rows() const { return ny + 1; }
  std::int64_t nodes() const { return static_cast<std::int64_t>(rows()) * cols(); }

  double width() const { return nx * delta; }
  double height() const { return ny * delta; }

  double x(int j) const { return (j - origin_col) * delta; }
  double y(int i) const { return (i - origin_row) * delta; }
  double x_min() const { return x(0); }
  double x_max() const { return x(nx); }
  double y_min() const { return y(0); }
  double y_max() const { return y(ny); }

  // Nearest node indices (no range clamping).
  int col_near(double xv) const;
  int row_near(double yv) const;

  bool has_mirror_column() const { return nx > 0 && 2 * origin_col == nx; }
  int mirror_col(int j) const { return nx - j; }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * cols() + j;
  }

  bool operator==(const GridSpec&) const = default;
};

// Builds a grid of round(height/delta) x round(length/delta) cells. Both
// ratios must be integral within one part in 1e6 and the cell count along x
// must be even so that x = 0 falls on a node column. span_above_slits places
// y = 0: it is the distance from the slit side to the +y border of the region
// (default 5/16 of the height, which reproduces the stock layout for the
// 1.6 x 1.2 region).
GridSpec make_grid(double height, double length, double delta,
                   double span_above_slits = -1.0);

// Complex amplitude sampled on the node lattice, row-major.
class ComplexField {
 public:
  using value_type = std::complex<double>;

  ComplexField() = default;
  explicit ComplexField(const GridSpec& grid)
      : grid_(grid), values_(static_cast<std::size_t>(grid.nodes())) {}

  const GridSpec& grid() const { return grid_; }
  int rows() const { return grid_.rows(); }
  int cols() const { return grid_.cols(); }

  value_type& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  const value_type& operator()(int i, int j) const { return values_[grid_.index(i, j)]; }

  value_type* data() { return values_.data(); }
  const value_type* data() const { return values_.data(); }
  std::span<value_type> values() { return values_; }
  std::span<const value_type> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  GridSpec grid_{};
  std::vector<value_type> values_;
};

// delta^2 * sum |psi_ij|^2. Deterministic for any thread count (per-row
// partial sums combined in fixed row order).
double norm_squared(const ComplexField& psi);
double field_norm(const ComplexField& psi);

bool all_finite(const ComplexField& psi);

// Exact index permutation x -> -x. Requires a grid with a mirror column.
ComplexField mirror_x(const ComplexField& psi);

// ||psi - mirror_x(psi)|| / ||psi||; 0 for the zero field.
double mirror_asymmetry(const ComplexField& psi);

}  // namespace slitsim
