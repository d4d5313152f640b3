#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conewalk/cone.hpp"
#include "conewalk/point.hpp"
#include "conewalk/walk.hpp"

namespace conewalk {

enum class Provenance { exact, truncated, monte_carlo };

std::string to_string(Provenance p);

/**
 * n -> P(T_C > n) for n = 0..n_max.
 *
 * `log_values` is always populated and stays finite where `values`
 * underflows (geometric tails). For truncated runs, the true value lies in
 * [values[n], values[n] + leaked[n]]; for Monte Carlo series `stderr_`
 * carries one standard error per n.
 */
struct TailSeries {
  std::vector<double> values;
  std::vector<double> log_values;
  std::vector<double> leaked;
  std::vector<double> stderr_;
  Provenance provenance = Provenance::exact;
  std::string walk;
  std::string cone;

  int n_max() const { return static_cast<int>(values.size()) - 1; }
  double lower(int n) const { return values.at(n); }
  double upper(int n) const { return values.at(n) + (leaked.empty() ? 0.0 : leaked.at(n)); }

  /// Builds a series from plain probabilities (fixtures, external data).
  static TailSeries from_values(std::vector<double> values, Provenance provenance = Provenance::exact);
};

using MassMap = std::map<LatticePoint, double>;

/// Conditional law of S_n given T_C > n.
struct EndpointLaw {
  MassMap masses;
  int n = 0;
  double sigma = 1.0;
  double leaked = 0.0;  // absolute mass dropped by truncation up to n
  double survival = 0.0;
  double log_survival = 0.0;
};

struct ExactOptions {
  /// States of mass < truncation are dropped and accounted as leaked mass.
  double truncation = 0.0;
  unsigned threads = 1;
  std::size_t memory_budget_bytes = std::size_t{2} << 30;
};

class MemoryBudgetError : public std::runtime_error {
 public:
  MemoryBudgetError(const std::string& what, std::size_t required_bytes)
      : std::runtime_error(what), required_bytes_(required_bytes) {}
  std::size_t required_bytes() const { return required_bytes_; }

 private:
  std::size_t required_bytes_;
};

/**
 * Forward sweep of the killed walk: q_n(x) = P(S_1..S_n in C, S_n = x).
 *
 * Masses live on a dense grid covering the bounding box of the current
 * support; the box is shrunk to the nonzero states after every step, so
 * memory tracks the active (cone-shaped) region. The grid is renormalized
 * to total mass one each step and the scale is kept in log form, so
 * geometric tails such as 3^-n never underflow.
 *
 * Results do not depend on the thread count: every target state is
 * gathered independently, in fixed atom order.
 */
class SurvivalSweep {
 public:
  SurvivalSweep(const StepDistribution& dist, const Cone& cone, const LatticePoint& start,
                ExactOptions options = {});

  void step();

  int steps_taken() const { return n_; }
  /// P^start(T_C > n) at the current n (0 if extinct or underflowed).
  double survival() const;
  double log_survival() const { return log_scale_; }
  /// Cumulative absolute mass dropped by truncation.
  double leaked() const { return leaked_; }
  bool extinct() const { return extinct_; }
  std::size_t active_states() const;

  /// Unnormalized masses q_n(x) of every state with positive mass.
  MassMap masses() const;
  /// Masses divided by their total.
  MassMap conditional_masses() const;

  template <typename Visitor>
  void for_each_state(Visitor&& visit) const;  // visit(const LatticePoint&, double conditional_mass)

 private:
  struct Box {
    std::array<std::int64_t, kMaxDimension> lo{};
    std::array<std::int64_t, kMaxDimension> extent{1, 1, 1};
    std::size_t volume() const { return static_cast<std::size_t>(extent[0] * extent[1] * extent[2]); }
  };

  std::size_t index(const Box& box, const LatticePoint& p) const;
  LatticePoint point_at(const Box& box, std::size_t idx) const;
  void gather(const Box& target, std::vector<double>& out, std::size_t row_begin, std::size_t row_end) const;
  void shrink_and_truncate(Box& box, std::vector<double>& grid);

  const StepDistribution* dist_;
  const Cone* cone_;
  ExactOptions options_;
  int dim_;
  int n_ = 0;
  Box box_;
  std::vector<double> grid_;  // conditional masses, sum 1
  double log_scale_ = 0.0;    // log of the total unnormalized mass
  double leaked_ = 0.0;
  double leaked_comp_ = 0.0;
  bool extinct_ = false;
  std::array<std::int64_t, kMaxDimension> step_min_{};
  std::array<std::int64_t, kMaxDimension> step_max_{};
};

template <typename Visitor>
void SurvivalSweep::for_each_state(Visitor&& visit) const {
  if (extinct_) return;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_[i] > 0.0) visit(point_at(box_, i), grid_[i]);
  }
}

/// P(T_C > n) for n = 0..n_max by the forward recursion from the origin.
TailSeries exact_tail(const StepDistribution& dist, const Cone& cone, int n_max, const ExactOptions& options = {});

/// P^start(T_C > n).
double survival_from(const StepDistribution& dist, const Cone& cone, const LatticePoint& start, int n,
                     const ExactOptions& options = {});

/// Law of S_n conditional on T_C > n, from the origin.
EndpointLaw endpoint_law(const StepDistribution& dist, const Cone& cone, int n, const ExactOptions& options = {});

/// m = [(n - k)/2] + 1, the number of two-step increments in the sandwich.
constexpr int sandwich_m(int n, int k) { return (n - k) / 2 + 1; }

struct SandwichReport {
  int n = 0;
  int k = 0;                    // steps needed to reach the interior point
  LatticePoint interior_point;  // x with d(x + C, boundary) > 1
  double alpha = 0.0;           // P(S_k = x, T_C > k)
  int m = 0;
  double tail = 0.0;            // P(T_C > n)
  double upper_bound = 0.0;     // P(S_2, ..., S_{2m-2} in C)
  double lower_bound = 0.0;     // alpha * P(S_2, ..., S_{2m} in C)
  bool upper_holds = false;
  bool lower_holds = false;
};

/**
 * Checks the two-step sandwich for the planar simple random walk:
 *   alpha * P(S_2..S_{2m} in C) <= P(T_C > n) <= P(S_2..S_{2m-2} in C).
 * The interior point x is the first state (smallest k, then largest mass,
 * then lexicographic) with distance to the boundary > 1.
 */
SandwichReport sandwich_check(const Cone& cone, int n, const ExactOptions& options = {}, int search_budget = 64);

}  // namespace conewalk
