#include "slitsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slitsim {

BilliardShape BilliardShape::square(double side) {
  BilliardShape s;
  s.kind = BilliardKind::Square;
  s.side = side;
  return s;
}

BilliardShape BilliardShape::sinai_ring(double cx, double cy, double radius,
                                        double side) {
  BilliardShape s;
  s.kind = BilliardKind::SinaiRing;
  s.side = side;
  s.ring_cx = cx;
  s.ring_cy = cy;
  s.ring_radius = radius;
  return s;
}

BilliardShape BilliardShape::right_triangle(TriangleOrientation o, double side) {
  BilliardShape s;
  s.kind = BilliardKind::RightTriangle;
  s.side = side;
  s.orientation = o;
  return s;
}

BilliardShape BilliardShape::triangle_arc(TriangleOrientation o, double sagitta,
                                          double side) {
  BilliardShape s;
  s.kind = BilliardKind::TriangleArc;
  s.side = side;
  s.orientation = o;
  s.arc_sagitta = sagitta;
  return s;
}

double PotentialField::max_barrier() const {
  double m = 0.0;
  for (double v : barrier) m = std::max(m, v);
  return m;
}

double PotentialField::max_absorber() const {
  double m = 0.0;
  for (double v : absorber) m = std::max(m, v);
  return m;
}

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

// Circle carrying the arc that replaces the hypotenuse of the cathetus-left
// triangle: chord from (s/2, 0) to (-s/2, -s), bulging outward by the sagitta.
struct ArcCircle {
  double ox, oy, radius;
};

ArcCircle arc_circle(double side, double sagitta) {
  const double radius = (0.5 * side * side + sagitta * sagitta) / (2.0 * sagitta);
  const double back = (radius - sagitta) * kSqrtHalf;  // from chord midpoint toward interior
  return ArcCircle{-back, -0.5 * side + back, radius};
}

// Signed inside measure: >= 0 inside the closed outline, and equal to the
// distance to the nearest wall for interior points. CathetusRight variants
// evaluate the CathetusLeft geometry at (-x, y).
double signed_measure(const BilliardShape& shape, double x, double y) {
  const double h = 0.5 * shape.side;
  switch (shape.kind) {
    case BilliardKind::Square:
    case BilliardKind::SinaiRing:
      return std::min(std::min(x + h, h - x), std::min(-y, y + shape.side));
    case BilliardKind::RightTriangle: {
      if (shape.orientation == TriangleOrientation::Hypotenuse) {
        const double d1 = (y - x + h) * kSqrtHalf;
        const double d2 = (y + x + h) * kSqrtHalf;
        return std::min(-y, std::min(d1, d2));
      }
      const double xv = shape.orientation == TriangleOrientation::CathetusRight ? -x : x;
      const double hyp = (y - xv + h) * kSqrtHalf;
      return std::min(std::min(xv + h, -y), hyp);
    }
    case BilliardKind::TriangleArc: {
      const double xv = shape.orientation == TriangleOrientation::CathetusRight ? -x : x;
      const ArcCircle c = arc_circle(shape.side, shape.arc_sagitta);
      const double arc = c.radius - std::hypot(xv - c.ox, y - c.oy);
      return std::min(std::min(xv + h, -y), arc);
    }
  }
  return -1.0;
}

void validate_shape(const BilliardShape& shape) {
  if (!(shape.side > 0.0)) throw ConfigError("billiard side must be positive");
  if (shape.kind == BilliardKind::SinaiRing) {
    const double h = 0.5 * shape.side;
    if (!(shape.ring_radius > 0.0)) throw ConfigError("ring radius must be positive");
    if (!(std::abs(shape.ring_cx) + shape.ring_radius < h &&
          shape.ring_cy - shape.ring_radius > -shape.side &&
          shape.ring_cy + shape.ring_radius < 0.0)) {
      throw ConfigError("ring must lie strictly inside the outer square");
    }
  }
  if (shape.kind == BilliardKind::TriangleArc) {
    if (shape.orientation == TriangleOrientation::Hypotenuse) {
      throw ConfigError(
          "triangle_arc: the arc replaces the hypotenuse and cannot carry the "
          "slit side; use a cathetus orientation");
    }
    if (!(shape.arc_sagitta > 0.0 && shape.arc_sagitta < shape.side * kSqrtHalf)) {
      throw ConfigError("triangle_arc: sagitta must lie in (0, side/sqrt(2))");
    }
  }
}

}  // namespace

bool shape_contains(const BilliardShape& shape, double x, double y) {
  return signed_measure(shape, x, y) >= -1e-9 * shape.side;
}

double shape_boundary_distance(const BilliardShape& shape, double x, double y) {
  return signed_measure(shape, x, y);
}

PotentialField build_billiard(const BilliardShape& shape, double barrier_height,
                              double barrier_width, const GridSpec& grid) {
  validate_shape(shape);
  if (!(barrier_height > 0.0)) throw ConfigError("barrier height must be positive");
  if (barrier_width < 2.0 * grid.delta * (1.0 - 1e-9)) {
    throw ConfigError("barrier width must span at least two cells");
  }

  PotentialField field(grid);
  field.barrier_height = barrier_height;
  field.barrier_width = barrier_width;
  field.side = shape.side;

  const double inside_tol = 1e-9 * shape.side;
  const double band_tol = 1e-6 * grid.delta;
  const bool has_ring = shape.kind == BilliardKind::SinaiRing;
  const double ring_tol = 1e-9 * grid.delta;

  for (int i = 0; i < grid.rows(); ++i) {
    const double y = grid.y(i);
    for (int j = 0; j < grid.cols(); ++j) {
      const double x = grid.x(j);
      const double m = signed_measure(shape, x, y);
      bool hard = m >= -inside_tol && m < barrier_width - band_tol;
      if (!hard && has_ring) {
        hard = std::hypot(x - shape.ring_cx, y - shape.ring_cy) <=
               shape.ring_radius + ring_tol;
      }
      if (hard) field.barrier[grid.index(i, j)] = barrier_height;
    }
  }
  return field;
}

SlitColumns slit_columns(const SlitSpec& slits, const GridSpec& grid) {
  if (!grid.has_mirror_column()) {
    throw StructureError("slit_columns: grid has no mirror column");
  }
  const double lo = 0.5 * slits.distance - 0.5 * slits.width;
  const double hi = 0.5 * slits.distance + 0.5 * slits.width;
  const double tol = 1e-9 * grid.delta;
  SlitColumns cols;
  for (int j = grid.origin_col; j <= grid.nx; ++j) {
    const double x = grid.x(j);
    if (x > lo + tol && x <= hi + tol) {
      cols.b.push_back(j);
      cols.a.push_back(grid.mirror_col(j));  // exact mirror by construction
    }
  }
  std::sort(cols.a.begin(), cols.a.end());
  return cols;
}

PotentialField carve_slits(PotentialField field, const SlitSpec& slits) {
  if (!(slits.width > 0.0) || !(slits.distance > slits.width)) {
    throw ConfigError("slits: width must be positive and distance > width");
  }
  if (field.barrier_width <= 0.0 || field.side <= 0.0) {
    throw ConfigError("carve_slits: field does not carry a billiard barrier");
  }
  const double outer_edge = 0.5 * slits.distance + 0.5 * slits.width;
  if (outer_edge + slits.width > 0.5 * field.side + 1e-12) {
    throw ConfigError("slits fall outside the slit side or too close to its corners");
  }

  const GridSpec& grid = field.grid;
  const SlitColumns cols = slit_columns(slits, grid);
  const double band_tol = 1e-6 * grid.delta;
  const double y_tol = 1e-9 * grid.delta;

  for (int i = 0; i < grid.rows(); ++i) {
    const double y = grid.y(i);
    const bool in_band = y <= y_tol && -y < field.barrier_width - band_tol;
    if (!in_band) continue;
    if (slits.open_a) {
      for (int j : cols.a) field.barrier[grid.index(i, j)] = 0.0;
    }
    if (slits.open_b) {
      for (int j : cols.b) field.barrier[grid.index(i, j)] = 0.0;
    }
  }
  return field;
}

double absorber_ramp_value(AbsorberRamp ramp, double depth_fraction) {
  const double f = std::clamp(depth_fraction, 0.0, 1.0);
  switch (ramp) {
    case AbsorberRamp::Linear: return f;
    case AbsorberRamp::Quadratic: return f * f;
    case AbsorberRamp::Cubic: return f * f * f;
    case AbsorberRamp::Quartic: return f * f * f * f;
  }
  return f;
}

PotentialField build_absorber(PotentialField field, const AbsorberSpec& spec) {
  const GridSpec& grid = field.grid;
  if (spec.strength < 0.0) throw ConfigError("absorber strength must be >= 0");
  if (spec.width < 4.0 * grid.delta * (1.0 - 1e-9)) {
    throw ConfigError("absorbing layer must span at least four cells");
  }
  if (2.0 * spec.width >= std::min(grid.width(), grid.height())) {
    throw ConfigError("absorbing layer wider than half the region");
  }

  const double band_tol = 1e-6 * grid.delta;
  for (int i = 0; i < grid.rows(); ++i) {
    const int bi = std::min(i, grid.ny - i);
    for (int j = 0; j < grid.cols(); ++j) {
      const int bj = std::min(j, grid.nx - j);
      const double border_dist = std::min(bi, bj) * grid.delta;
      if (border_dist >= spec.width - band_tol) continue;
      const double frac = (spec.width - border_dist) / spec.width;
      const double v = spec.strength * absorber_ramp_value(spec.ramp, frac);
      const std::size_t idx = grid.index(i, j);
      if (v > 0.0 && field.barrier[idx] > 0.0) {
        throw ConfigError("absorbing layer overlaps the billiard barrier");
      }
      field.absorber[idx] = v;
    }
  }
  return field;
}

double potential_symmetry_defect(const PotentialField& field) {
  const GridSpec& grid = field.grid;
  if (!grid.has_mirror_column()) {
    throw StructureError("potential_symmetry_defect: grid has no mirror column");
  }
  double diff = 0.0;
  double total = 0.0;
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) {
      const double v = field.barrier[grid.index(i, j)];
      diff += std::abs(v - field.barrier[grid.index(i, grid.mirror_col(j))]);
      total += v;
    }
  }
  if (total <= 0.0) return 0.0;
  return diff / total;
}

std::vector<std::uint8_t> interior_mask(const BilliardShape& shape,
                                        const GridSpec& grid) {
  validate_shape(shape);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid.nodes()), 0);
  for (int i = 0; i < grid.rows(); ++i) {
    const double y = grid.y(i);
    for (int j = 0; j < grid.cols(); ++j) {
      if (shape_contains(shape, grid.x(j), y)) mask[grid.index(i, j)] = 1;
    }
  }
  return mask;
}

}  // namespace slitsim
