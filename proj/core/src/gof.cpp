#include "conewalk/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace conewalk {

namespace {

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  if (std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); })) {
    throw std::invalid_argument("samples contain NaN");
  }
  std::sort(v.begin(), v.end());
  return v;
}

struct Polar {
  std::vector<double> r;
  std::vector<double> theta;
};

Polar ensemble_endpoints(const PathEnsemble& ensemble, const Cone& cone) {
  Polar p;
  for (const NormalizedPath& path : ensemble.paths) {
    p.r.push_back(path.endpoint().norm());
    p.theta.push_back(cone.wedge_angle(path.endpoint()));
  }
  return p;
}

void require_wedge(const Cone& cone) {
  if (cone.dimension() != 2 || !cone.is_wedge()) throw std::invalid_argument("endpoint test needs a planar wedge");
}

void require_half_line(const Cone& cone) {
  if (cone.dimension() != 1) throw std::invalid_argument("Rayleigh check needs the 1D half-line");
}

// Bin index for bins centered at multiples of h: [0, h/2), [h/2, 3h/2), ...
std::size_t centered_bin(double x, double h) { return static_cast<std::size_t>(std::floor(x / h + 0.5)); }

enum class BinnedMetric { total_variation, kolmogorov };

double binned_distance_impl(std::span<const double> atoms, std::span<const double> masses, const Cdf& cdf,
                            double h, double upper, BinnedMetric metric = BinnedMetric::total_variation) {
  if (atoms.size() != masses.size()) throw std::invalid_argument("atoms and masses differ in length");
  if (!(h > 0.0)) throw std::invalid_argument("bin width must be positive");
  const bool bounded = std::isfinite(upper);
  std::size_t last = bounded ? centered_bin(upper, h) : 0;
  std::vector<double> bins(last + 1, 0.0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i] >= 0.0)) throw std::invalid_argument("binned distance needs nonnegative atoms");
    std::size_t b = centered_bin(atoms[i], h);
    if (bounded) b = std::min(b, last);
    if (b >= bins.size()) bins.resize(b + 1, 0.0);
    bins[b] += masses[i];
  }
  double total = 0.0;
  double worst_gap = 0.0;
  double cumulative = 0.0;
  double lo_cdf = cdf(0.0);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    double edge = (static_cast<double>(b) + 0.5) * h;
    if (bounded && (b == bins.size() - 1 || edge > upper)) edge = upper;
    const double hi_cdf = cdf(edge);
    total += std::abs(bins[b] - (hi_cdf - lo_cdf));
    cumulative += bins[b];
    worst_gap = std::max(worst_gap, std::abs(cumulative - hi_cdf));
    lo_cdf = hi_cdf;
  }
  if (!bounded) total += std::abs(1.0 - lo_cdf);
  return metric == BinnedMetric::kolmogorov ? worst_gap : 0.5 * total;
}

GofReport exact_report(std::string name, double value, double size, double threshold) {
  return {std::move(name), value, size, threshold, value < threshold};
}

}  // namespace

double ks_critical_value(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(level / 2.0));
}

double ks_statistic(std::span<const double> samples, const Cdf& cdf) {
  if (samples.empty()) throw std::invalid_argument("KS statistic needs at least one sample");
  const std::vector<double> x = sorted_copy(samples);
  const auto n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

GofReport ks_one_sample(std::span<const double> samples, const Cdf& cdf, double level,
                        std::optional<double> effective_size) {
  if (samples.size() < 20) throw std::invalid_argument("one-sample KS test needs at least 20 samples");
  GofReport rep;
  rep.statistic = "ks_one_sample";
  rep.value = ks_statistic(samples, cdf);
  rep.sample_size = effective_size.value_or(static_cast<double>(samples.size()));
  rep.threshold = ks_critical_value(level) / std::sqrt(rep.sample_size);
  rep.pass = rep.value <= rep.threshold;
  return rep;
}

GofReport ks_two_sample(std::span<const double> a, std::span<const double> b, double level) {
  if (a.empty() || b.empty()) throw std::invalid_argument("two-sample KS test needs two nonempty samples");
  const std::vector<double> x = sorted_copy(a);
  const std::vector<double> y = sorted_copy(b);
  const auto na = static_cast<double>(x.size());
  const auto nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  GofReport rep;
  rep.statistic = "ks_two_sample";
  rep.value = d;
  rep.sample_size = na * nb / (na + nb);
  rep.threshold = ks_critical_value(level) / std::sqrt(rep.sample_size);
  rep.pass = rep.value <= rep.threshold;
  return rep;
}

double binned_distance(std::span<const double> atoms, std::span<const double> masses, const Cdf& cdf,
                       double bin_width) {
  return binned_distance_impl(atoms, masses, cdf, bin_width, std::numeric_limits<double>::infinity());
}

double binned_distance_bounded(std::span<const double> atoms, std::span<const double> masses, const Cdf& cdf,
                               double bin_width, double upper) {
  if (!(upper > 0.0) || !std::isfinite(upper)) throw std::invalid_argument("upper bound must be positive and finite");
  return binned_distance_impl(atoms, masses, cdf, bin_width, upper);
}

double binned_ks_distance(std::span<const double> atoms, std::span<const double> masses, const Cdf& cdf,
                          double bin_width, double upper) {
  return binned_distance_impl(atoms, masses, cdf, bin_width, upper, BinnedMetric::kolmogorov);
}

EndpointGof endpoint_gof(const PathEnsemble& ensemble, const Cone& cone, const MeanderEndpointLaw& law,
                         double level) {
  require_wedge(cone);
  const Polar p = ensemble_endpoints(ensemble, cone);
  const double ess = ensemble.effective_sample_size > 0.0 ? ensemble.effective_sample_size
                                                          : static_cast<double>(p.r.size());
  EndpointGof out;
  out.radial = ks_one_sample(p.r, [&](double r) { return law.radial_cdf(r); }, level, ess);
  out.radial.statistic = "radial_ks";
  out.angular = ks_one_sample(p.theta, [&](double t) { return law.angular_cdf(std::min(t, law.beta())); }, level, ess);
  out.angular.statistic = "angular_ks";
  return out;
}

namespace {

struct PolarMasses {
  std::vector<double> r, theta, mass;
};

PolarMasses polar_masses(const EndpointLaw& law, const Cone& cone) {
  if (law.n < 1) throw std::invalid_argument("endpoint law needs n >= 1");
  const double scale = 1.0 / (law.sigma * std::sqrt(static_cast<double>(law.n)));
  PolarMasses out;
  for (const auto& [x, m] : law.masses) {
    const Point w = scale * x.to_point();
    out.r.push_back(w.norm());
    out.theta.push_back(w.norm() > 0.0 ? cone.wedge_angle(w) : 0.0);
    out.mass.push_back(m);
  }
  return out;
}

}  // namespace

EndpointGof endpoint_gof(const EndpointLaw& law, const Cone& cone, const MeanderEndpointLaw& meander,
                         double threshold) {
  require_wedge(cone);
  const PolarMasses p = polar_masses(law, cone);
  const double h = 2.0 / std::sqrt(static_cast<double>(law.n));
  const auto radial = [&](double v) { return meander.radial_cdf(v); };
  const auto angular = [&](double v) { return meander.angular_cdf(std::min(v, meander.beta())); };
  EndpointGof out;
  out.radial = exact_report("radial_binned_ks",
                            binned_ks_distance(p.r, p.mass, radial, h, std::numeric_limits<double>::infinity()),
                            law.n, threshold);
  out.angular = exact_report("angular_binned_ks", binned_ks_distance(p.theta, p.mass, angular, h, meander.beta()),
                             law.n, threshold);
  return out;
}

EndpointGof endpoint_tv(const EndpointLaw& law, const Cone& cone, const MeanderEndpointLaw& meander,
                        double threshold) {
  require_wedge(cone);
  const PolarMasses p = polar_masses(law, cone);
  const double h = 2.0 / std::sqrt(static_cast<double>(law.n));
  EndpointGof out;
  out.radial = exact_report("radial_binned_tv",
                            binned_distance(p.r, p.mass, [&](double v) { return meander.radial_cdf(v); }, h), law.n,
                            threshold);
  out.angular = exact_report(
      "angular_binned_tv",
      binned_distance_bounded(p.theta, p.mass, [&](double v) { return meander.angular_cdf(std::min(v, meander.beta())); },
                              h, meander.beta()),
      law.n, threshold);
  return out;
}

BoundaryOccupation boundary_occupation(const PathEnsemble& ensemble, const Cone& cone, double eps) {
  BoundaryOccupation occ;
  for (const PathFunctionals& f : path_functionals(ensemble, cone, eps)) occ.per_path.push_back(f.boundary_fraction);
  if (!occ.per_path.empty()) {
    double s = 0.0;
    for (double v : occ.per_path) s += v;
    occ.mean = s / static_cast<double>(occ.per_path.size());
  }
  return occ;
}

GofReport rayleigh_check(const PathEnsemble& ensemble, const Cone& cone, double level) {
  require_half_line(cone);
  std::vector<double> x;
  x.reserve(ensemble.paths.size());
  for (const NormalizedPath& p : ensemble.paths) x.push_back(p.endpoint()[0]);
  const double ess = ensemble.effective_sample_size > 0.0 ? ensemble.effective_sample_size
                                                          : static_cast<double>(x.size());
  GofReport rep = ks_one_sample(x, [](double v) { return v <= 0.0 ? 0.0 : rayleigh_cdf(v); }, level, ess);
  rep.statistic = "rayleigh_ks";
  return rep;
}

GofReport rayleigh_check(const EndpointLaw& law, const Cone& cone, double threshold) {
  require_half_line(cone);
  if (law.n < 1) throw std::invalid_argument("endpoint law needs n >= 1");
  const double scale = 1.0 / (law.sigma * std::sqrt(static_cast<double>(law.n)));
  std::vector<double> x, mass;
  for (const auto& [p, m] : law.masses) {
    x.push_back(scale * static_cast<double>(p[0]));
    mass.push_back(m);
  }
  const double h = 2.0 / std::sqrt(static_cast<double>(law.n));
  return exact_report("rayleigh_binned_tv", binned_distance(x, mass, rayleigh_cdf, h), law.n, threshold);
}

}  // namespace conewalk
