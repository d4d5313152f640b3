#include "conewalk/exact_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "compensated_sum.hpp"

namespace conewalk {

namespace {

constexpr std::size_t kParallelThreshold = std::size_t{1} << 15;

void require_lattice(const StepDistribution& dist, const Cone& cone) {
  if (!dist.is_lattice()) {
    throw std::invalid_argument("exact computation needs a lattice step law; use Monte Carlo for '" + dist.name() + "'");
  }
  if (dist.dimension() != cone.dimension()) throw std::invalid_argument("walk and cone dimensions differ");
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::exact:
      return "exact";
    case Provenance::truncated:
      return "truncated";
    case Provenance::monte_carlo:
      return "monte_carlo";
  }
  return "unknown";
}

TailSeries TailSeries::from_values(std::vector<double> values, Provenance provenance) {
  TailSeries t;
  t.log_values.reserve(values.size());
  for (double v : values) t.log_values.push_back(v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity());
  t.values = std::move(values);
  t.provenance = provenance;
  return t;
}

SurvivalSweep::SurvivalSweep(const StepDistribution& dist, const Cone& cone, const LatticePoint& start,
                             ExactOptions options)
    : dist_(&dist), cone_(&cone), options_(options), dim_(dist.dimension()) {
  require_lattice(dist, cone);
  if (start.dim != dim_) throw std::invalid_argument("start point has the wrong dimension");
  if (!cone.contains(start)) throw std::invalid_argument("start point " + to_string(start) + " lies outside the cone");
  if (!(options_.truncation >= 0.0)) throw std::invalid_argument("truncation must be nonnegative");
  if (options_.threads == 0) options_.threads = 1;

  for (int d = 0; d < dim_; ++d) {
    step_min_[d] = std::numeric_limits<std::int64_t>::max();
    step_max_[d] = std::numeric_limits<std::int64_t>::min();
  }
  for (const Atom& a : dist.atoms()) {
    if (a.probability == 0.0) continue;
    for (int d = 0; d < dim_; ++d) {
      step_min_[d] = std::min(step_min_[d], a.step.x[d]);
      step_max_[d] = std::max(step_max_[d], a.step.x[d]);
    }
  }
  for (int d = 0; d < dim_; ++d) box_.lo[d] = start.x[d];
  grid_.assign(1, 1.0);
}

std::size_t SurvivalSweep::index(const Box& box, const LatticePoint& p) const {
  std::size_t idx = 0;
  for (int d = 0; d < kMaxDimension; ++d) {
    const std::int64_t c = d < dim_ ? p.x[d] - box.lo[d] : 0;
    idx = idx * static_cast<std::size_t>(box.extent[d]) + static_cast<std::size_t>(c);
  }
  return idx;
}

LatticePoint SurvivalSweep::point_at(const Box& box, std::size_t idx) const {
  LatticePoint p = LatticePoint::zero(dim_);
  for (int d = kMaxDimension - 1; d >= 0; --d) {
    const auto e = static_cast<std::size_t>(box.extent[d]);
    const auto c = static_cast<std::int64_t>(idx % e);
    idx /= e;
    if (d < dim_) p.x[d] = box.lo[d] + c;
  }
  return p;
}

// Fills the target rows [row_begin, row_end) with the one-step gather
// sum_a q(x - delta_a) p_a, zero outside the cone. A row runs along the
// last used dimension, which is contiguous in both grids.
void SurvivalSweep::gather(const Box& target, std::vector<double>& out, std::size_t row_begin,
                           std::size_t row_end) const {
  const auto atoms = dist_->atoms();
  const Box& src = box_;
  const int inner = dim_ - 1;
  const std::int64_t row_len = target.extent[inner];
  std::array<std::int64_t, kMaxDimension> t{};

  for (std::size_t row = row_begin; row < row_end; ++row) {
    // Decode the outer coordinates of this row.
    std::size_t rest = row;
    for (int d = inner - 1; d >= 0; --d) {
      const auto e = static_cast<std::size_t>(target.extent[d]);
      t[d] = target.lo[d] + static_cast<std::int64_t>(rest % e);
      rest /= e;
    }
    double* dst = out.data() + row * static_cast<std::size_t>(row_len);

    for (const Atom& a : atoms) {
      if (a.probability == 0.0) continue;
      std::size_t src_row = 0;
      bool inside = true;
      for (int d = 0; d < inner; ++d) {
        const std::int64_t c = t[d] - a.step.x[d] - src.lo[d];
        if (c < 0 || c >= src.extent[d]) {
          inside = false;
          break;
        }
        src_row = src_row * static_cast<std::size_t>(src.extent[d]) + static_cast<std::size_t>(c);
      }
      if (!inside) continue;
      // Target inner index i maps to source inner coordinate i + offset.
      const std::int64_t offset = target.lo[inner] - a.step.x[inner] - src.lo[inner];
      const std::int64_t i_begin = std::max<std::int64_t>(0, -offset);
      const std::int64_t i_end = std::min<std::int64_t>(row_len, src.extent[inner] - offset);
      const double* s = grid_.data() + src_row * static_cast<std::size_t>(src.extent[inner]);
      const double p = a.probability;
      for (std::int64_t i = i_begin; i < i_end; ++i) dst[i] += p * s[i + offset];
    }

    LatticePoint x = LatticePoint::zero(dim_);
    for (int d = 0; d < inner; ++d) x.x[d] = t[d];
    for (std::int64_t i = 0; i < row_len; ++i) {
      if (dst[i] == 0.0) continue;
      x.x[inner] = target.lo[inner] + i;
      if (!cone_->contains(x)) dst[i] = 0.0;
    }
  }
}

void SurvivalSweep::shrink_and_truncate(Box& box, std::vector<double>& grid) {
  // Truncation compares absolute masses grid * exp(log_scale_) with the threshold.
  if (options_.truncation > 0.0) {
    const double log_threshold = std::log(options_.truncation) - log_scale_;
    const double scale = std::exp(log_scale_);
    for (double& v : grid) {
      if (v > 0.0 && std::log(v) < log_threshold) {
        const double dropped = v * scale;
        const double t = leaked_ + dropped;
        if (std::abs(leaked_) >= std::abs(dropped)) {
          leaked_comp_ += (leaked_ - t) + dropped;
        } else {
          leaked_comp_ += (dropped - t) + leaked_;
        }
        leaked_ = t;
        v = 0.0;
      }
    }
  }

  std::array<std::int64_t, kMaxDimension> lo{}, hi{};
  for (int d = 0; d < kMaxDimension; ++d) {
    lo[d] = std::numeric_limits<std::int64_t>::max();
    hi[d] = std::numeric_limits<std::int64_t>::min();
  }
  bool any = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= 0.0) continue;
    any = true;
    const LatticePoint p = point_at(box, i);
    for (int d = 0; d < dim_; ++d) {
      lo[d] = std::min(lo[d], p.x[d]);
      hi[d] = std::max(hi[d], p.x[d]);
    }
  }
  if (!any) {
    extinct_ = true;
    grid.clear();
    return;
  }
  Box tight;
  for (int d = 0; d < dim_; ++d) {
    tight.lo[d] = lo[d];
    tight.extent[d] = hi[d] - lo[d] + 1;
  }
  if (tight.volume() == box.volume()) return;
  std::vector<double> packed(tight.volume(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > 0.0) packed[index(tight, point_at(box, i))] = grid[i];
  }
  box = tight;
  grid.swap(packed);
}

void SurvivalSweep::step() {
  ++n_;
  if (extinct_) return;

  Box target;
  for (int d = 0; d < dim_; ++d) {
    target.lo[d] = box_.lo[d] + step_min_[d];
    target.extent[d] = box_.extent[d] + (step_max_[d] - step_min_[d]);
  }
  const std::size_t volume = target.volume();
  const std::size_t required = (volume + grid_.size()) * sizeof(double);
  if (required > options_.memory_budget_bytes) {
    throw MemoryBudgetError("exact sweep at n=" + std::to_string(n_) + " needs about " +
                                std::to_string(required >> 20) + " MiB, over the budget of " +
                                std::to_string(options_.memory_budget_bytes >> 20) + " MiB; use --trunc",
                            required);
  }

  std::vector<double> next(volume, 0.0);
  const auto rows = volume / static_cast<std::size_t>(target.extent[dim_ - 1]);
  const unsigned workers = volume >= kParallelThreshold ? std::min<unsigned>(options_.threads, static_cast<unsigned>(rows)) : 1;
  if (workers <= 1) {
    gather(target, next, 0, rows);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (rows + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = std::min(rows, w * chunk);
      const std::size_t e = std::min(rows, b + chunk);
      pool.emplace_back([this, &target, &next, b, e] { gather(target, next, b, e); });
    }
  }

  shrink_and_truncate(target, next);
  if (extinct_) {
    grid_.clear();
    log_scale_ = -std::numeric_limits<double>::infinity();
    return;
  }

  detail::CompensatedSum total;
  for (double v : next) total.add(v);
  const double mass = total.value();
  if (!(mass > 0.0)) {
    extinct_ = true;
    grid_.clear();
    log_scale_ = -std::numeric_limits<double>::infinity();
    return;
  }
  const double inv = 1.0 / mass;
  for (double& v : next) v *= inv;
  log_scale_ += std::log(mass);
  box_ = target;
  grid_.swap(next);
}

double SurvivalSweep::survival() const { return extinct_ ? 0.0 : std::exp(log_scale_); }

std::size_t SurvivalSweep::active_states() const {
  return static_cast<std::size_t>(std::count_if(grid_.begin(), grid_.end(), [](double v) { return v > 0.0; }));
}

MassMap SurvivalSweep::masses() const {
  MassMap out;
  const double scale = survival();
  for_each_state([&](const LatticePoint& p, double m) { out.emplace(p, m * scale); });
  return out;
}

MassMap SurvivalSweep::conditional_masses() const {
  MassMap out;
  for_each_state([&](const LatticePoint& p, double m) { out.emplace(p, m); });
  return out;
}

TailSeries exact_tail(const StepDistribution& dist, const Cone& cone, int n_max, const ExactOptions& options) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  SurvivalSweep sweep(dist, cone, LatticePoint::zero(dist.dimension()), options);
  TailSeries tail;
  tail.provenance = options.truncation > 0.0 ? Provenance::truncated : Provenance::exact;
  tail.walk = dist.name();
  tail.cone = cone.describe();
  tail.values.reserve(static_cast<std::size_t>(n_max) + 1);
  tail.values.push_back(1.0);
  tail.log_values.push_back(0.0);
  tail.leaked.push_back(0.0);
  for (int n = 1; n <= n_max; ++n) {
    sweep.step();
    tail.values.push_back(sweep.survival());
    tail.log_values.push_back(sweep.log_survival());
    tail.leaked.push_back(sweep.leaked());
  }
  return tail;
}

double survival_from(const StepDistribution& dist, const Cone& cone, const LatticePoint& start, int n,
                     const ExactOptions& options) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  SurvivalSweep sweep(dist, cone, start, options);
  for (int k = 0; k < n; ++k) sweep.step();
  return sweep.survival();
}

EndpointLaw endpoint_law(const StepDistribution& dist, const Cone& cone, int n, const ExactOptions& options) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  SurvivalSweep sweep(dist, cone, LatticePoint::zero(dist.dimension()), options);
  for (int k = 0; k < n; ++k) sweep.step();
  if (sweep.extinct()) throw std::runtime_error("no surviving mass at n=" + std::to_string(n));
  EndpointLaw law;
  law.masses = sweep.conditional_masses();
  law.n = n;
  law.sigma = dist.sigma();
  law.leaked = sweep.leaked();
  law.survival = sweep.survival();
  law.log_survival = sweep.log_survival();
  return law;
}

SandwichReport sandwich_check(const Cone& cone, int n, const ExactOptions& options, int search_budget) {
  const StepDistribution walk = srw2d();
  const StepDistribution pairs = two_step_srw2d();
  if (!is_adapted(cone, walk).adapted) throw std::invalid_argument("cone is not adapted to the simple random walk");

  // Steps of srw2d have length 1, so any x with d(x + C, boundary) > 1 works.
  // For a convex cone d(x + C, boundary) = d(x, boundary).
  SandwichReport report;
  report.n = n;
  SurvivalSweep sweep(walk, cone, LatticePoint::zero(2), options);
  bool found = false;
  for (int k = 0; k <= search_budget && !found; ++k) {
    if (k > 0) sweep.step();
    if (sweep.extinct()) break;
    double best = 0.0;
    sweep.for_each_state([&](const LatticePoint& x, double mass) {
      if (cone.distance_to_boundary(x.to_point()) > 1.0 && mass > best) {
        best = mass;
        report.interior_point = x;
        found = true;
      }
    });
    if (found) {
      report.k = k;
      report.alpha = best * sweep.survival();
    }
  }
  if (!found) {
    throw std::runtime_error("no lattice point at distance > 1 from the boundary reached within " +
                             std::to_string(search_budget) + " steps");
  }
  if (n <= report.k) {
    throw std::invalid_argument("sandwich needs n > k = " + std::to_string(report.k));
  }
  report.m = sandwich_m(n, report.k);
  const TailSeries tail = exact_tail(walk, cone, n, options);
  const TailSeries even = exact_tail(pairs, cone, report.m, options);
  report.tail = tail.values[n];
  report.upper_bound = even.values[report.m - 1];
  report.lower_bound = report.alpha * even.values[report.m];
  constexpr double kRoundoff = 1e-12;
  report.upper_holds = tail.lower(n) <= even.upper(report.m - 1) * (1 + kRoundoff);
  report.lower_holds = report.alpha * even.lower(report.m) <= tail.upper(n) * (1 + kRoundoff);
  return report;
}

}  // namespace conewalk
