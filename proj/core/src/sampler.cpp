#include "conewalk/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <thread>

#include "conewalk/rng.hpp"

namespace conewalk {

namespace {

constexpr std::uint64_t kRejectionChunk = 4096;

using RawPath = std::vector<Point>;  // S_0 = 0, S_1, ..., S_k

void check_inputs(const StepDistribution& dist, const Cone& cone, int n) {
  if (dist.dimension() != cone.dimension()) throw std::invalid_argument("walk and cone dimensions differ");
  if (n < 1) throw std::invalid_argument("path length n must be at least 1");
  if (!is_adapted(cone, dist).adapted) throw std::invalid_argument("cone is not adapted to the walk");
}

NormalizedPath normalize(const RawPath& raw, int n, double sigma) {
  NormalizedPath path;
  path.n = n;
  path.sigma = sigma;
  const double scale = 1.0 / (sigma * std::sqrt(static_cast<double>(n)));
  path.grid.reserve(raw.size());
  for (const Point& s : raw) path.grid.push_back(scale * s);
  return path;
}

// Extends `raw` by `steps` increments; false as soon as the walk leaves the cone.
bool advance(const StepDistribution& dist, const Cone& cone, RawPath& raw, int steps, RngStream& rng) {
  Point pos = raw.back();
  for (int k = 0; k < steps; ++k) {
    pos += dist.sample(rng);
    raw.push_back(pos);
    if (!cone.contains(pos)) return false;
  }
  return true;
}

// Runs body(i) for i in [0, count) on `threads` workers with a static split.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = std::min(count, w * chunk);
    const std::size_t e = std::min(count, b + chunk);
    pool.emplace_back([&body, b, e] {
      for (std::size_t i = b; i < e; ++i) body(i);
    });
  }
}

constexpr std::uint64_t level_stream(std::size_t level, std::size_t particle) {
  return (static_cast<std::uint64_t>(level + 1) << 32) | static_cast<std::uint64_t>(particle);
}

constexpr std::uint64_t kResampleStream = 0xFFFFFFFFULL;

}  // namespace

Point NormalizedPath::at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("path time must lie in [0, 1]");
  const double nt = t * n;
  const int k = std::min(static_cast<int>(std::floor(nt)), n);
  if (k == n) return grid.back();
  const double frac = nt - k;
  return grid[k] + frac * (grid[k + 1] - grid[k]);
}

std::string to_string(SamplingMethod m) { return m == SamplingMethod::rejection ? "rejection" : "splitting"; }

PathEnsemble rejection_sample(const StepDistribution& dist, const Cone& cone, int n, int count,
                              const SamplerOptions& options) {
  check_inputs(dist, cone, n);
  if (count < 1) throw std::invalid_argument("count must be at least 1");

  PathEnsemble ens;
  ens.method = SamplingMethod::rejection;
  ens.seed = options.seed;
  ens.paths.reserve(static_cast<std::size_t>(count));

  const double sigma = dist.sigma();
  const auto floor_attempts = static_cast<std::uint64_t>(10.0 / kAcceptanceFloor);
  std::uint64_t next_attempt = 0;
  std::vector<std::optional<RawPath>> slots(kRejectionChunk);

  while (ens.paths.size() < static_cast<std::size_t>(count)) {
    const std::uint64_t base = next_attempt;
    parallel_for(kRejectionChunk, options.threads, [&](std::size_t i) {
      RngStream rng(options.seed, base + i);
      RawPath raw;
      raw.reserve(static_cast<std::size_t>(n) + 1);
      raw.push_back(Point::zero(dist.dimension()));
      if (advance(dist, cone, raw, n, rng)) {
        slots[i] = std::move(raw);
      } else {
        slots[i].reset();
      }
    });
    for (std::size_t i = 0; i < kRejectionChunk; ++i) {
      if (ens.paths.size() == static_cast<std::size_t>(count)) break;
      ++next_attempt;
      if (slots[i]) ens.paths.push_back(normalize(*slots[i], n, sigma));
    }
    const double rate = static_cast<double>(ens.paths.size()) / static_cast<double>(next_attempt);
    if (next_attempt >= floor_attempts && rate < kAcceptanceFloor) {
      throw AcceptanceFloorError("acceptance rate " + std::to_string(rate) + " after " +
                                     std::to_string(next_attempt) +
                                     " attempts is below the 1e-6 floor; use splitting_sample",
                                 rate);
    }
  }

  ens.attempts = next_attempt;
  const double p = static_cast<double>(count) / static_cast<double>(ens.attempts);
  ens.tail_estimate = p;
  ens.tail_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(ens.attempts));
  ens.effective_sample_size = count;
  return ens;
}

std::vector<int> default_schedule(int n, double exponent) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const int levels = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))));
  std::vector<int> schedule;
  for (int j = 1; j <= levels; ++j) {
    const double frac = std::pow(static_cast<double>(j) / levels, exponent);
    const int nj = std::clamp(static_cast<int>(std::ceil(n * frac - 1e-9)), 1, n);
    if (schedule.empty() || nj > schedule.back()) schedule.push_back(nj);
  }
  if (schedule.back() != n) schedule.push_back(n);
  return schedule;
}

PathEnsemble splitting_sample(const StepDistribution& dist, const Cone& cone, int n, int population,
                              const std::vector<int>& schedule, const SamplerOptions& options) {
  check_inputs(dist, cone, n);
  if (population < 100) throw std::invalid_argument("splitting needs a population of at least 100");
  if (schedule.empty() || schedule.front() <= 0 || schedule.back() != n ||
      !std::is_sorted(schedule.begin(), schedule.end()) ||
      std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end()) {
    throw std::invalid_argument("schedule must satisfy 0 < n_1 < ... < n_J = n");
  }

  const auto K = static_cast<std::size_t>(population);
  std::vector<RawPath> particles(K, RawPath{Point::zero(dist.dimension())});
  std::vector<char> alive(K);
  std::vector<std::size_t> parent(K);

  PathEnsemble ens;
  ens.method = SamplingMethod::splitting;
  ens.seed = options.seed;
  ens.schedule = schedule;

  double estimate = 1.0;
  double rel_var = 0.0;
  int previous = 0;
  for (std::size_t level = 0; level < schedule.size(); ++level) {
    const int steps = schedule[level] - previous;
    parallel_for(K, options.threads, [&](std::size_t i) {
      RngStream rng(options.seed, level_stream(level, i));
      particles[i].reserve(static_cast<std::size_t>(schedule[level]) + 1);
      alive[i] = advance(dist, cone, particles[i], steps, rng) ? 1 : 0;
    });
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < K; ++i)
      if (alive[i]) survivors.push_back(i);
    if (survivors.empty()) {
      throw ExtinctionError("all particles died before checkpoint " + std::to_string(schedule[level]) +
                                "; refine the schedule or raise the population",
                            static_cast<int>(level), schedule[level]);
    }
    const double f = static_cast<double>(survivors.size()) / static_cast<double>(K);
    ens.level_fractions.push_back(f);
    estimate *= f;
    rel_var += (1.0 - f) / (static_cast<double>(K) * f);
    previous = schedule[level];

    if (level + 1 == schedule.size()) {
      // Survivors of the last level form the ensemble; ESS from parent multiplicities.
      std::map<std::size_t, std::size_t> multiplicity;
      for (std::size_t i : survivors) ++multiplicity[parent[i]];
      double sum_sq = 0.0;
      for (const auto& [p, c] : multiplicity) sum_sq += static_cast<double>(c) * static_cast<double>(c);
      const auto a = static_cast<double>(survivors.size());
      ens.effective_sample_size = level == 0 ? a : a * a / sum_sq;
      ens.paths.reserve(survivors.size());
      for (std::size_t i : survivors) ens.paths.push_back(normalize(particles[i], n, dist.sigma()));
      break;
    }

    RngStream resample(options.seed, level_stream(level, kResampleStream));
    std::vector<RawPath> next(K);
    for (std::size_t i = 0; i < K; ++i) {
      const auto pick = static_cast<std::size_t>(resample.uniform() * static_cast<double>(survivors.size()));
      const std::size_t src = survivors[std::min(pick, survivors.size() - 1)];
      next[i] = particles[src];
      parent[i] = src;
    }
    particles.swap(next);
  }

  ens.tail_estimate = estimate;
  ens.tail_stderr = estimate * std::sqrt(rel_var);
  return ens;
}

std::vector<PathFunctionals> path_functionals(const PathEnsemble& ensemble, const Cone& cone, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be nonnegative");
  std::vector<PathFunctionals> out;
  out.reserve(ensemble.paths.size());
  for (const NormalizedPath& path : ensemble.paths) {
    PathFunctionals f;
    f.endpoint = path.endpoint();
    int near = 0;
    for (std::size_t k = 0; k < path.grid.size(); ++k) {
      f.sup_norm = std::max(f.sup_norm, path.grid[k].norm());
      if (k > 0 && cone.distance_to_boundary(path.grid[k]) <= eps) ++near;
    }
    f.boundary_fraction = path.n > 0 ? static_cast<double>(near) / path.n : 0.0;
    out.push_back(f);
  }
  return out;
}

}  // namespace conewalk
