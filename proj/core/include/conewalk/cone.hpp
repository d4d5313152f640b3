#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "conewalk/point.hpp"

namespace conewalk {

class StepDistribution;

/// Default relative tolerance for wedges whose edges come from floating
/// rotations: a point p satisfies an edge constraint iff n.p >= -tol*|p|.
inline constexpr double kDefaultWedgeTolerance = 1e-7;

/// Planar wedge {(r cos t, r sin t) : r >= 0, rotation <= t <= rotation + beta}.
struct Wedge2D {
  double beta = 0.0;
  double rotation = 0.0;
};

/// [0, inf) on the real line.
struct HalfLine1D {};

/// {x : x.n_i >= 0 for all i} in R^dimension.
struct HalfSpaceIntersection {
  int dimension = 0;
  std::vector<Point> normals;  // as given; unit copies are kept by Cone
};

/**
 * Closed convex linear cone. Membership counts the boundary (closed
 * convention). Immutable once built.
 */
class Cone {
 public:
  using Shape = std::variant<Wedge2D, HalfLine1D, HalfSpaceIntersection>;

  static Cone wedge(double beta, double rotation = 0.0, double tolerance = kDefaultWedgeTolerance);
  static Cone half_line();
  static Cone half_spaces(int dimension, std::vector<Point> normals);

  static Cone quarter_plane() { return wedge(std::numbers::pi / 2); }
  static Cone octant();
  static Cone half_plane();
  /// {0 <= x/2 <= y <= 2x} in R^3.
  static Cone degenerate_axis_cone();
  /// {0 <= x/2 <= y <= 2x, z >= 0} in R^3.
  static Cone degenerate_axis_cone_positive();

  int dimension() const { return dimension_; }
  const Shape& shape() const { return shape_; }
  bool is_wedge() const { return std::holds_alternative<Wedge2D>(shape_); }
  const Wedge2D& as_wedge() const;
  double tolerance() const { return tolerance_; }

  bool contains(const Point& p) const;
  bool contains(const LatticePoint& p) const;

  /// Euclidean distance from p to the boundary; p must lie in the cone.
  double distance_to_boundary(const Point& p) const;

  /// pi / (2 beta); wedges only.
  double meander_index() const;

  /// Polar angle of p measured from the first edge, clamped to [0, beta].
  double wedge_angle(const Point& p) const;

  /// Canonical spec string, e.g. "wedge:beta=1.5707963267948966,rot=0".
  std::string describe() const;

  std::size_t constraint_count() const { return unit_normals_.size(); }
  const std::vector<Point>& unit_normals() const { return unit_normals_; }

 private:
  Cone(Shape shape, int dimension, std::vector<Point> raw_normals, double tolerance);

  Shape shape_;
  int dimension_ = 0;
  std::vector<Point> raw_normals_;
  std::vector<Point> unit_normals_;
  double tolerance_ = 0.0;
};

struct AdaptednessReport {
  bool adapted = false;
  bool exact = false;            // lattice check is exact; continuous is sampled
  std::size_t samples_checked = 0;
  std::string witness;           // a step in C \ {0}, if found
  std::string note;
};

/// Checks P(xi in C \ {0}) > 0. Lattice laws are checked atom by atom;
/// continuous laws by drawing `samples` steps (a negative result is then
/// only evidence, which the report says).
AdaptednessReport is_adapted(const Cone& cone, const StepDistribution& dist,
                             std::size_t samples = 100000, std::uint64_t seed = 1);

}  // namespace conewalk
