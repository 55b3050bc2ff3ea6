#pragma once

#include <cstdint>
#include <vector>

#include "slitsim/grid.hpp"

namespace slitsim {

enum class BilliardKind { Square, SinaiRing, RightTriangle, TriangleArc };

enum class TriangleOrientation { CathetusLeft, CathetusRight, Hypotenuse };

// Billiard outline. The slit side always lies on y = 0, centered on x = 0,
// with the interior at y < 0.
//
// Square: side x side box, interior [-side/2, side/2] x [-side, 0].
// SinaiRing: the square plus a filled hard disc (the standard dispersing
//   obstacle; a filled disc rather than a shell avoids trapped interior
//   modes). The disc radius is a free parameter, default 0.2.
// RightTriangle: isosceles right triangle. Orientation selects which side
//   carries the slits: CathetusLeft puts the right angle at (-side/2, 0) with
//   the second cathetus going down from it, CathetusRight mirrors that, and
//   Hypotenuse puts the hypotenuse on y = 0 (the mirror-symmetric variant,
//   apex at (0, -side/2)).
// TriangleArc: the cathetus-oriented right triangle with its hypotenuse
//   replaced by a circular arc bulging outward by `arc_sagitta`.
struct BilliardShape {
  BilliardKind kind = BilliardKind::Square;
  double side = 1.0;  // length of the slit side
  double ring_cx = 0.0;
  double ring_cy = -0.6;
  double ring_radius = 0.2;
  TriangleOrientation orientation = TriangleOrientation::CathetusLeft;
  double arc_sagitta = 0.2;

  static BilliardShape square(double side = 1.0);
  static BilliardShape sinai_ring(double cx, double cy, double radius = 0.2,
                                  double side = 1.0);
  static BilliardShape right_triangle(TriangleOrientation o, double side = 1.0);
  static BilliardShape triangle_arc(TriangleOrientation o, double sagitta,
                                    double side = 1.0);

  bool operator==(const BilliardShape&) const = default;
};

// Two slits of width `width`, centers at (-distance/2, 0) and (+distance/2, 0).
struct SlitSpec {
  double width = 0.012;    // w
  double distance = 0.1;   // d, center to center
  bool open_a = true;      // slit at x = -d/2
  bool open_b = true;      // slit at x = +d/2
};

enum class AbsorberRamp { Linear, Quadratic, Cubic, Quartic };

struct AbsorberSpec {
  double width = 0.1;       // layer depth measured inward from the region border
  double strength = 4e4;    // V_A at the border
  AbsorberRamp ramp = AbsorberRamp::Quadratic;
};

// Real barrier V_B (0 or barrier_height pointwise) plus absorber amplitude
// V_A (>= 0, nonzero only in the border layer), both sampled on the grid.
struct PotentialField {
  GridSpec grid{};
  std::vector<double> barrier;   // V_B
  std::vector<double> absorber;  // V_A
  double barrier_height = 0.0;
  double barrier_width = 0.0;
  double side = 0.0;  // slit-side length of the shape the barrier came from

  PotentialField() = default;
  explicit PotentialField(const GridSpec& g)
      : grid(g),
        barrier(static_cast<std::size_t>(g.nodes()), 0.0),
        absorber(static_cast<std::size_t>(g.nodes()), 0.0) {}

  double max_barrier() const;
  double max_absorber() const;
};

// Is (x, y) inside the closed billiard outline / how far from the boundary
// walls (>= 0 inside). Exposed for tests and for the interior mask.
bool shape_contains(const BilliardShape& shape, double x, double y);
double shape_boundary_distance(const BilliardShape& shape, double x, double y);

// Barrier bands are drawn inward from the wall line: a node is barrier iff it
// lies inside the closed outline and strictly closer than barrier_width to a
// wall (so the outer band edge sits on the wall line itself and the slit side
// band occupies y in (-barrier_width, 0]). The SinaiRing disc is filled.
PotentialField build_billiard(const BilliardShape& shape, double barrier_height,
                              double barrier_width, const GridSpec& grid);

// Node columns belonging to each slit. The +x slit keeps its outer edge node
// and drops the inner one; the -x slit is defined as its exact mirror image,
// so the two sets are mirror-identical by construction and each spans
// round(width/delta) columns when the edges are node-aligned.
struct SlitColumns {
  std::vector<int> a;  // x < 0
  std::vector<int> b;  // x > 0
};
SlitColumns slit_columns(const SlitSpec& slits, const GridSpec& grid);

// Clears V_B across the slit intervals through the slit-side band. Only nodes
// of that band are touched. Closed slits (open_* = false) are left as barrier.
PotentialField carve_slits(PotentialField field, const SlitSpec& slits);

// Ramp value for a depth fraction xi/W in [0, 1].
double absorber_ramp_value(AbsorberRamp ramp, double depth_fraction);

// Fills V_A in a frame of the given width along the region border, rising from
// 0 at the inner edge to `strength` at the border. Errors if any absorber node
// coincides with a barrier node.
PotentialField build_absorber(PotentialField field, const AbsorberSpec& spec);

// sum |V_B(i,j) - V_B(i, mirror j)| / sum V_B; 0 iff the barrier is exactly
// mirror symmetric.
double potential_symmetry_defect(const PotentialField& field);

// 1 for nodes inside the closed billiard outline, 0 elsewhere (barrier-band
// nodes count as inside; the field is negligible there anyway).
std::vector<std::uint8_t> interior_mask(const BilliardShape& shape,
                                        const GridSpec& grid);

}  // namespace slitsim
