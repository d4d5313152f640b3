#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "conewalk/cone.hpp"
#include "conewalk/point.hpp"
#include "conewalk/walk.hpp"

namespace conewalk {

/// Donsker-normalized path on the grid k/n: w(k/n) = S_k / (sigma sqrt n).
struct NormalizedPath {
  std::vector<Point> grid;  // n + 1 points, grid[0] = 0
  int n = 0;
  double sigma = 1.0;

  const Point& endpoint() const { return grid.back(); }
  /// Linear interpolation at t in [0, 1].
  Point at(double t) const;
};

enum class SamplingMethod { rejection, splitting };

std::string to_string(SamplingMethod m);

/// Paths conditioned on T_C > n plus the tail estimate they carry.
struct PathEnsemble {
  std::vector<NormalizedPath> paths;
  SamplingMethod method = SamplingMethod::rejection;
  double tail_estimate = 0.0;
  double tail_stderr = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t attempts = 0;            // rejection: walks simulated
  std::vector<int> schedule;             // splitting checkpoints
  std::vector<double> level_fractions;   // splitting survival fractions
  double effective_sample_size = 0.0;
};

struct SamplerOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

class AcceptanceFloorError : public std::runtime_error {
 public:
  AcceptanceFloorError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

class ExtinctionError : public std::runtime_error {
 public:
  ExtinctionError(const std::string& what, int level, int checkpoint)
      : std::runtime_error(what), level_(level), checkpoint_(checkpoint) {}
  int level() const { return level_; }
  int checkpoint() const { return checkpoint_; }

 private:
  int level_;
  int checkpoint_;
};

/// Acceptance rate below which rejection sampling refuses to continue.
inline constexpr double kAcceptanceFloor = 1e-6;

/**
 * Plain rejection: attempt a uses RngStream(seed, a); the first `count`
 * accepted attempts in index order form the ensemble. The result is
 * identical for every thread count.
 */
PathEnsemble rejection_sample(const StepDistribution& dist, const Cone& cone, int n, int count,
                              const SamplerOptions& options);

/// n_j = ceil(n (j/J)^c), J = ceil(log2 n), duplicates removed.
std::vector<int> default_schedule(int n, double exponent = 1.0);

/**
 * Fixed-population multilevel splitting. K particles are pushed to each
 * checkpoint; the survival fraction f_j is recorded and the survivors are
 * resampled (multinomial) back to K. The tail estimate is prod f_j; its
 * standard error uses the per-level delta method and is approximate.
 */
PathEnsemble splitting_sample(const StepDistribution& dist, const Cone& cone, int n, int population,
                              const std::vector<int>& schedule, const SamplerOptions& options);

struct PathFunctionals {
  Point endpoint;
  double sup_norm = 0.0;
  double boundary_fraction = 0.0;  // share of k = 1..n with d(w(k/n), boundary) <= eps
};

std::vector<PathFunctionals> path_functionals(const PathEnsemble& ensemble, const Cone& cone, double eps);

}  // namespace conewalk
