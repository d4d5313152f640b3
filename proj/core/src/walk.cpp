#include "conewalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "compensated_sum.hpp"

namespace conewalk {

namespace {

using detail::CompensatedSum;

std::string describe_violation(const std::string& what, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (got %.17g)", value);
  return what + buf;
}

Moments lattice_moments(int dim, const std::vector<Atom>& atoms) {
  Moments m;
  m.dim = dim;
  std::array<CompensatedSum, kMaxDimension> mean{};
  std::array<std::array<CompensatedSum, kMaxDimension>, kMaxDimension> second{};
  for (const Atom& a : atoms) {
    for (int i = 0; i < dim; ++i) {
      const double xi = static_cast<double>(a.step.x[i]);
      mean[i].add(a.probability * xi);
      for (int j = 0; j < dim; ++j) second[i][j].add(a.probability * xi * static_cast<double>(a.step.x[j]));
    }
  }
  for (int i = 0; i < dim; ++i) {
    m.mean[i] = mean[i].value();
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m.covariance[i][j] = second[i][j].value() - m.mean[i] * m.mean[j];
  }
  return m;
}

}  // namespace

StepDistribution StepDistribution::lattice(std::vector<Atom> atoms, std::string name) {
  if (atoms.empty()) throw std::invalid_argument("lattice distribution needs at least one atom");
  const int dim = atoms.front().step.dim;
  if (dim < 1 || dim > kMaxDimension) throw std::invalid_argument("atom dimension must be 1, 2 or 3");
  CompensatedSum total;
  for (const Atom& a : atoms) {
    if (a.step.dim != dim) throw std::invalid_argument("atoms have mixed dimensions");
    if (!(a.probability >= 0.0) || !std::isfinite(a.probability)) {
      throw std::invalid_argument(describe_violation("atom probability must be nonnegative", a.probability));
    }
    total.add(a.probability);
  }
  if (std::abs(total.value() - 1.0) > kProbabilityTolerance) {
    throw std::invalid_argument(describe_violation("atom probabilities must sum to 1", total.value()));
  }

  const Moments m = lattice_moments(dim, atoms);
  for (int i = 0; i < dim; ++i) {
    if (std::abs(m.mean[i]) > kMeanTolerance) {
      throw std::invalid_argument(describe_violation("step law must have mean zero", m.mean[i]));
    }
  }
  const double sigma2 = m.covariance[0][0];
  if (!(sigma2 > 0.0)) throw std::invalid_argument("step law must have positive variance");
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double expected = i == j ? sigma2 : 0.0;
      if (std::abs(m.covariance[i][j] - expected) > kCovarianceTolerance) {
        throw std::invalid_argument(
            describe_violation("step covariance must be sigma^2 * I (anisotropic walks are not supported)",
                               m.covariance[i][j]));
      }
    }
  }

  StepDistribution d;
  d.kind_ = Kind::lattice;
  d.dim_ = dim;
  d.sigma2_ = sigma2;
  d.name_ = std::move(name);
  d.atoms_ = std::move(atoms);
  CompensatedSum running;
  for (const Atom& a : d.atoms_) {
    running.add(a.probability);
    d.cumulative_.push_back(running.value());
  }
  d.cumulative_.back() = 1.0;
  return d;
}

StepDistribution StepDistribution::uniform_disk(double sigma2, std::string name) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw std::invalid_argument("disk variance must be positive");
  StepDistribution d;
  d.kind_ = Kind::uniform_disk;
  d.dim_ = 2;
  d.sigma2_ = sigma2;
  d.name_ = std::move(name);
  return d;
}

double StepDistribution::sigma() const { return std::sqrt(sigma2_); }

std::span<const Atom> StepDistribution::atoms() const {
  if (!is_lattice()) throw std::invalid_argument("continuous step law has no atoms");
  return atoms_;
}

std::size_t StepDistribution::sample_index(RngStream& rng) const {
  if (!is_lattice()) throw std::invalid_argument("continuous step law has no atoms");
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(idx, atoms_.size() - 1);
}

Point StepDistribution::sample(RngStream& rng) const {
  if (is_lattice()) return atoms_[sample_index(rng)].step.to_point();
  // Uniform on the disk of radius 2 sigma: covariance (radius^2 / 4) I.
  const double radius = 2.0 * sigma();
  while (true) {
    const double x = 2.0 * rng.uniform() - 1.0;
    const double y = 2.0 * rng.uniform() - 1.0;
    if (x * x + y * y <= 1.0) return Point{radius * x, radius * y};
  }
}

Moments moments(const StepDistribution& dist) {
  if (dist.is_lattice()) {
    const auto atoms = dist.atoms();
    return lattice_moments(dist.dimension(), std::vector<Atom>(atoms.begin(), atoms.end()));
  }
  Moments m;
  m.dim = dist.dimension();
  for (int i = 0; i < m.dim; ++i) m.covariance[i][i] = dist.sigma2();
  return m;
}

StepDistribution convolve(const StepDistribution& a, const StepDistribution& b, std::string name) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("cannot convolve laws of different dimension");
  std::map<LatticePoint, double> merged;
  for (const Atom& x : a.atoms()) {
    for (const Atom& y : b.atoms()) merged[x.step + y.step] += x.probability * y.probability;
  }
  std::vector<Atom> atoms;
  atoms.reserve(merged.size());
  for (const auto& [step, p] : merged) atoms.push_back({step, p});
  if (name.empty()) name = a.name() + "*" + b.name();
  return StepDistribution::lattice(std::move(atoms), std::move(name));
}

StepDistribution srw1d() { return StepDistribution::lattice({{{1}, 0.5}, {{-1}, 0.5}}, "srw1d"); }

StepDistribution srw2d() {
  return StepDistribution::lattice({{{1, 0}, 0.25}, {{-1, 0}, 0.25}, {{0, 1}, 0.25}, {{0, -1}, 0.25}}, "srw2d");
}

StepDistribution srw3d() {
  const double p = 1.0 / 6.0;
  return StepDistribution::lattice(
      {{{1, 0, 0}, p}, {{-1, 0, 0}, p}, {{0, 1, 0}, p}, {{0, -1, 0}, p}, {{0, 0, 1}, p}, {{0, 0, -1}, p}}, "srw3d");
}

StepDistribution two_step_srw2d() {
  return StepDistribution::lattice({{{0, 0}, 4.0 / 16},
                                    {{2, 0}, 1.0 / 16},
                                    {{-2, 0}, 1.0 / 16},
                                    {{0, 2}, 1.0 / 16},
                                    {{0, -2}, 1.0 / 16},
                                    {{1, 1}, 2.0 / 16},
                                    {{1, -1}, 2.0 / 16},
                                    {{-1, 1}, 2.0 / 16},
                                    {{-1, -1}, 2.0 / 16}},
                                   "srw2d-2step");
}

std::vector<Point> WalkPath::partial_sums() const {
  std::vector<Point> sums;
  sums.reserve(steps.size());
  for (const Point& s : steps) sums.push_back(sums.empty() ? s : sums.back() + s);
  return sums;
}

}  // namespace conewalk
