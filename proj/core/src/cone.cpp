#include "conewalk/cone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "conewalk/rng.hpp"
#include "conewalk/walk.hpp"

namespace conewalk {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_dimension(const Cone& cone, int dim) {
  if (cone.dimension() != dim) {
    throw std::invalid_argument("cone of dimension " + std::to_string(cone.dimension()) +
                                " queried with a point of dimension " + std::to_string(dim));
  }
}

}  // namespace

std::string to_string(const Point& p) {
  std::string s = "(";
  for (int i = 0; i < p.dim; ++i) {
    if (i) s += ",";
    s += format_double(p.x[i]);
  }
  return s + ")";
}

std::string to_string(const LatticePoint& p) {
  std::string s = "(";
  for (int i = 0; i < p.dim; ++i) {
    if (i) s += ",";
    s += std::to_string(p.x[i]);
  }
  return s + ")";
}

Cone::Cone(Shape shape, int dimension, std::vector<Point> raw_normals, double tolerance)
    : shape_(std::move(shape)), dimension_(dimension), raw_normals_(std::move(raw_normals)), tolerance_(tolerance) {
  unit_normals_.reserve(raw_normals_.size());
  for (const Point& n : raw_normals_) {
    const double len = n.norm();
    unit_normals_.push_back((1.0 / len) * n);
  }
}

Cone Cone::wedge(double beta, double rotation, double tolerance) {
  if (!(beta > 0.0 && beta <= std::numbers::pi) || !std::isfinite(rotation)) {
    throw std::invalid_argument("wedge angle beta must lie in (0, pi], got " + format_double(beta));
  }
  if (!(tolerance >= 0.0)) throw std::invalid_argument("wedge tolerance must be nonnegative");
  // Inward normals of the two edges.
  const double end = rotation + beta;
  std::vector<Point> normals{Point{-std::sin(rotation), std::cos(rotation)}, Point{std::sin(end), -std::cos(end)}};
  return Cone(Wedge2D{beta, rotation}, 2, std::move(normals), tolerance);
}

Cone Cone::half_line() { return Cone(HalfLine1D{}, 1, {Point{1.0}}, 0.0); }

Cone Cone::half_spaces(int dimension, std::vector<Point> normals) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw std::invalid_argument("half-space cone dimension must be 1, 2 or 3");
  }
  if (normals.empty()) throw std::invalid_argument("half-space cone needs at least one normal");
  for (const Point& n : normals) {
    if (n.dim != dimension) throw std::invalid_argument("normal " + to_string(n) + " has the wrong dimension");
    if (!n.is_finite() || n.norm() == 0.0) throw std::invalid_argument("normal " + to_string(n) + " is degenerate");
  }
  HalfSpaceIntersection shape{dimension, normals};
  return Cone(std::move(shape), dimension, std::move(normals), 0.0);
}

Cone Cone::octant() { return wedge(std::numbers::pi / 4); }

Cone Cone::half_plane() { return wedge(std::numbers::pi); }

Cone Cone::degenerate_axis_cone() {
  // x/2 <= y  <=>  -x + 2y >= 0 ;  y <= 2x  <=>  2x - y >= 0 ; x >= 0 follows but is kept explicit.
  return half_spaces(3, {Point{1, 0, 0}, Point{-1, 2, 0}, Point{2, -1, 0}});
}

Cone Cone::degenerate_axis_cone_positive() {
  return half_spaces(3, {Point{1, 0, 0}, Point{-1, 2, 0}, Point{2, -1, 0}, Point{0, 0, 1}});
}

const Wedge2D& Cone::as_wedge() const {
  if (const auto* w = std::get_if<Wedge2D>(&shape_)) return *w;
  throw std::invalid_argument("cone is not a planar wedge");
}

bool Cone::contains(const Point& p) const {
  require_dimension(*this, p.dim);
  const double slack = tolerance_ > 0.0 ? tolerance_ * p.norm() : 0.0;
  for (std::size_t i = 0; i < raw_normals_.size(); ++i) {
    const Point& n = tolerance_ > 0.0 ? unit_normals_[i] : raw_normals_[i];
    if (dot(n, p) < -slack) return false;
  }
  return true;
}

bool Cone::contains(const LatticePoint& p) const { return contains(p.to_point()); }

double Cone::distance_to_boundary(const Point& p) const {
  if (!contains(p)) throw std::invalid_argument("point " + to_string(p) + " lies outside the cone");
  // For p in an intersection of half-spaces the distance to the complement
  // is the smallest distance to one of the bounding hyperplanes.
  double d = std::numeric_limits<double>::infinity();
  for (const Point& n : unit_normals_) d = std::min(d, dot(n, p));
  return std::max(d, 0.0);
}

double Cone::meander_index() const { return std::numbers::pi / (2.0 * as_wedge().beta); }

double Cone::wedge_angle(const Point& p) const {
  const Wedge2D& w = as_wedge();
  require_dimension(*this, p.dim);
  double theta = std::atan2(p.x[1], p.x[0]) - w.rotation;
  theta = std::remainder(theta, 2.0 * std::numbers::pi);  // (-pi, pi]
  if (theta < 0.0 && theta < -0.5 * (2.0 * std::numbers::pi - w.beta)) theta += 2.0 * std::numbers::pi;
  return std::clamp(theta, 0.0, w.beta);
}

std::string Cone::describe() const {
  if (const auto* w = std::get_if<Wedge2D>(&shape_)) {
    std::string s = "wedge:beta=" + format_double(w->beta) + ",rot=" + format_double(w->rotation);
    if (tolerance_ != kDefaultWedgeTolerance) s += ",eps=" + format_double(tolerance_);
    return s;
  }
  if (std::holds_alternative<HalfLine1D>(shape_)) return "halfline";
  std::string s = "halfspaces:";
  for (std::size_t i = 0; i < raw_normals_.size(); ++i) {
    if (i) s += ";";
    s += "n" + std::to_string(i + 1) + "=";
    for (int k = 0; k < dimension_; ++k) {
      if (k) s += ",";
      s += format_double(raw_normals_[i].x[k]);
    }
  }
  return s;
}

AdaptednessReport is_adapted(const Cone& cone, const StepDistribution& dist, std::size_t samples,
                             std::uint64_t seed) {
  if (cone.dimension() != dist.dimension()) {
    throw std::invalid_argument("walk and cone dimensions differ");
  }
  AdaptednessReport report;
  if (dist.is_lattice()) {
    report.exact = true;
    for (const Atom& a : dist.atoms()) {
      ++report.samples_checked;
      const bool nonzero = std::any_of(a.step.x.begin(), a.step.x.begin() + a.step.dim, [](auto c) { return c != 0; });
      if (a.probability > 0.0 && nonzero && cone.contains(a.step)) {
        report.adapted = true;
        report.witness = to_string(a.step);
        return report;
      }
    }
    report.note = "no atom of positive probability lies in C \\ {0}";
    return report;
  }
  RngStream rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Point p = dist.sample(rng);
    ++report.samples_checked;
    if (p.norm() > 0.0 && cone.contains(p)) {
      report.adapted = true;
      report.witness = to_string(p);
      report.note = "sampled check";
      return report;
    }
  }
  report.note = "no sampled step in C \\ {0}; sampled evidence only, not a proof";
  return report;
}

}  // namespace conewalk
