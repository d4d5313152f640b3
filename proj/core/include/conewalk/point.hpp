#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace conewalk {

inline constexpr int kMaxDimension = 3;

/// A point of R^d, d in {1,2,3}. Unused trailing coordinates are zero.
struct Point {
  std::array<double, kMaxDimension> x{};
  int dim = 0;

  Point() = default;
  Point(std::initializer_list<double> coords) {
    if (coords.size() < 1 || coords.size() > kMaxDimension) {
      throw std::invalid_argument("Point: dimension must be 1, 2 or 3");
    }
    dim = static_cast<int>(coords.size());
    int i = 0;
    for (double c : coords) x[i++] = c;
  }

  static Point zero(int d) {
    if (d < 1 || d > kMaxDimension) throw std::invalid_argument("Point: dimension must be 1, 2 or 3");
    Point p;
    p.dim = d;
    return p;
  }

  double operator[](int i) const { return x[i]; }
  double& operator[](int i) { return x[i]; }

  double norm() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += x[i] * x[i];
    return std::sqrt(s);
  }
  bool is_finite() const {
    for (int i = 0; i < dim; ++i)
      if (!std::isfinite(x[i])) return false;
    return true;
  }

  Point& operator+=(const Point& o) {
    for (int i = 0; i < dim; ++i) x[i] += o.x[i];
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) {
    for (int i = 0; i < a.dim; ++i) a.x[i] -= b.x[i];
    return a;
  }
  friend Point operator*(double s, Point a) {
    for (int i = 0; i < a.dim; ++i) a.x[i] *= s;
    return a;
  }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a.x[i] * b.x[i];
  return s;
}

/// Integer lattice point; ordered lexicographically so it can key a std::map.
struct LatticePoint {
  std::array<std::int64_t, kMaxDimension> x{};
  int dim = 0;

  LatticePoint() = default;
  LatticePoint(std::initializer_list<std::int64_t> coords) {
    if (coords.size() < 1 || coords.size() > kMaxDimension) {
      throw std::invalid_argument("LatticePoint: dimension must be 1, 2 or 3");
    }
    dim = static_cast<int>(coords.size());
    int i = 0;
    for (auto c : coords) x[i++] = c;
  }

  static LatticePoint zero(int d) {
    if (d < 1 || d > kMaxDimension) throw std::invalid_argument("LatticePoint: dimension must be 1, 2 or 3");
    LatticePoint p;
    p.dim = d;
    return p;
  }

  std::int64_t operator[](int i) const { return x[i]; }
  std::int64_t& operator[](int i) { return x[i]; }

  Point to_point() const {
    Point p = Point::zero(dim);
    for (int i = 0; i < dim; ++i) p.x[i] = static_cast<double>(x[i]);
    return p;
  }

  LatticePoint& operator+=(const LatticePoint& o) {
    for (int i = 0; i < dim; ++i) x[i] += o.x[i];
    return *this;
  }
  friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
  friend LatticePoint operator-(LatticePoint a, const LatticePoint& b) {
    for (int i = 0; i < a.dim; ++i) a.x[i] -= b.x[i];
    return a;
  }
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

std::string to_string(const Point& p);
std::string to_string(const LatticePoint& p);

}  // namespace conewalk
