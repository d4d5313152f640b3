#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "conewalk/point.hpp"
#include "conewalk/rng.hpp"

namespace conewalk {

struct Atom {
  LatticePoint step;
  double probability = 0.0;
};

struct Moments {
  int dim = 0;
  std::array<double, kMaxDimension> mean{};
  std::array<std::array<double, kMaxDimension>, kMaxDimension> covariance{};
};

/**
 * Law of one increment of the walk: mean zero, covariance sigma2 * I.
 *
 * Two variants: a finite lattice atom list, or a continuous law with
 * bounded support (uniform on a disk of radius 2*sigma, which has
 * covariance sigma2 * I). Construction validates the moment conditions
 * and rejects anything anisotropic.
 */
class StepDistribution {
 public:
  enum class Kind { lattice, uniform_disk };

  static inline constexpr double kProbabilityTolerance = 1e-12;
  static inline constexpr double kMeanTolerance = 1e-12;
  static inline constexpr double kCovarianceTolerance = 1e-9;

  /// Throws std::invalid_argument on any violated moment condition.
  static StepDistribution lattice(std::vector<Atom> atoms, std::string name = "lattice");
  static StepDistribution uniform_disk(double sigma2, std::string name = "disk");

  Kind kind() const { return kind_; }
  bool is_lattice() const { return kind_ == Kind::lattice; }
  int dimension() const { return dim_; }
  double sigma2() const { return sigma2_; }
  double sigma() const;
  const std::string& name() const { return name_; }

  /// Lattice atoms, in construction order. Throws for continuous laws.
  std::span<const Atom> atoms() const;

  /// Index of a lattice atom drawn from the law.
  std::size_t sample_index(RngStream& rng) const;

  Point sample(RngStream& rng) const;

 private:
  StepDistribution() = default;

  Kind kind_ = Kind::lattice;
  int dim_ = 0;
  double sigma2_ = 0.0;
  std::string name_;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

/// Exact moments (lattice: direct sums over atoms; disk: closed form).
Moments moments(const StepDistribution& dist);

/// Law of the sum of independent draws from a and b (lattice only).
/// Atoms are merged and listed in lexicographic order.
StepDistribution convolve(const StepDistribution& a, const StepDistribution& b, std::string name = "");

StepDistribution srw1d();
StepDistribution srw2d();
StepDistribution srw3d();
/// Law of S_2 for srw2d, i.e. the increments of (S_{2m}).
StepDistribution two_step_srw2d();

/// Steps of one trajectory; partial sums S_1..S_n derived on demand.
struct WalkPath {
  std::vector<Point> steps;

  std::vector<Point> partial_sums() const;
};

}  // namespace conewalk
