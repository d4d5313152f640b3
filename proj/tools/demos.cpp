#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>

#include <conewalk/conewalk.hpp>

#include "cli.hpp"
#include "io.hpp"

namespace conewalk::cli {

namespace {

using io::num;

void line(std::ostream& out, const std::string& key, double v) { out << key << " = " << num(v) << '\n'; }

EndpointLaw law_from(const SurvivalSweep& sweep, const StepDistribution& walk) {
  EndpointLaw law;
  law.masses = sweep.conditional_masses();
  law.n = sweep.steps_taken();
  law.sigma = walk.sigma();
  law.leaked = sweep.leaked();
  law.survival = sweep.survival();
  law.log_survival = sweep.log_survival();
  return law;
}

void report_gof(std::ostream& out, const GofReport& r) {
  out << r.statistic << " = " << num(r.value) << " (threshold " << num(r.threshold) << ", "
      << (r.pass ? "pass" : "FAIL") << ")\n";
}

void demo_quarter_plane(unsigned threads, std::ostream& out) {
  const StepDistribution walk = srw2d();
  const Cone cone = Cone::quarter_plane();
  ExactOptions opts;
  opts.threads = threads;
  out << "walk " << walk.name() << ", cone " << cone.describe() << ", alpha = 1\n";

  SurvivalSweep sweep(walk, cone, LatticePoint::zero(2), opts);
  std::vector<double> values{1.0}, logs{0.0};
  std::map<int, EndpointLaw> laws;
  for (int n = 1; n <= 800; ++n) {
    sweep.step();
    values.push_back(sweep.survival());
    logs.push_back(sweep.log_survival());
    if (n == 100 || n == 400) laws.emplace(n, law_from(sweep, walk));
  }
  TailSeries tail = TailSeries::from_values(values);
  tail.log_values = logs;
  for (int n : {100, 200, 400, 800}) line(out, "p(" + std::to_string(n) + ")", tail.values[n]);

  const Window w{100, 800};
  const IndexEstimate ll = estimate_index(tail, w, IndexMethod::loglog_ls);
  const IndexEstimate ra = estimate_index(tail, w, IndexMethod::ratio);
  out << "alpha_hat loglog [100,800] = " << num(ll.alpha_hat) << " +- " << num(ll.stderr_) << '\n';
  out << "alpha_hat ratio  [100,800] = " << num(ra.alpha_hat) << '\n';
  const VaropoulosReport v = varopoulos_check(tail, 1.0, w);
  out << "n p(n) on [100,800] in [" << num(v.inf) << ", " << num(v.sup) << "]\n";
  line(out, "domvar(t=1/2) on [100,800]", dominated_variation_stat(tail, 0.5, w));
  const RatioLimitReport r = ratio_limit_check(tail, 0.5, 1.0, 800);
  out << "p(400)/p(800) = " << num(r.ratio) << " vs 2^1, rel err " << num(r.rel_error) << '\n';

  const MeanderEndpointLaw meander = MeanderEndpointLaw::from_alpha(1.0);
  for (const auto& [n, law] : laws) {
    out << "endpoint law n=" << n << ":\n";
    const EndpointGof ks = endpoint_gof(law, cone, meander);
    const EndpointGof tv = endpoint_tv(law, cone, meander);
    report_gof(out, ks.radial);
    report_gof(out, ks.angular);
    report_gof(out, tv.radial);
    report_gof(out, tv.angular);
  }

  const PathEnsemble ens = splitting_sample(walk, cone, 400, 2000, default_schedule(400), {1, threads});
  out << "splitting n=400 K=2000 seed=1: p = " << num(ens.tail_estimate) << " +- " << num(ens.tail_stderr)
      << " (exact " << num(tail.values[400]) << ")\n";
  line(out, "boundary occupation (eps=0.05)", boundary_occupation(ens, cone, 0.05).mean);
}

void demo_example1(unsigned threads, std::ostream& out) {
  const StepDistribution walk = srw3d();
  const Cone cone = Cone::degenerate_axis_cone();
  ExactOptions opts;
  opts.threads = threads;
  out << "walk " << walk.name() << ", cone " << cone.describe() << '\n';
  const TailSeries tail = exact_tail(walk, cone, 30, opts);
  for (int n = 1; n <= 30; ++n) {
    const double expected = std::pow(3.0, -n);
    const double rel = std::abs(tail.values[n] - expected) / expected;
    if (rel <= 1e-12) {
      out << "p(" << n << ") = 3^-" << n << " (exact)\n";
    } else {
      out << "p(" << n << ") = " << num(tail.values[n]) << " (3^-" << n << " off by " << num(rel) << ")\n";
    }
  }
  line(out, "domvar(t=1/2) on [10,30]", dominated_variation_stat(tail, 0.5, {10, 30}));

  std::vector<int> schedule;
  for (int n = 1; n <= 30; ++n) schedule.push_back(n);
  const PathEnsemble ens = splitting_sample(walk, cone, 30, 1000, schedule, {1, threads});
  out << "splitting n=30 K=1000 seed=1: p = " << num(ens.tail_estimate) << " +- " << num(ens.tail_stderr) << '\n';
  line(out, "boundary occupation (eps=0)", boundary_occupation(ens, cone, 0.0).mean);
}

void demo_example2(unsigned threads, std::ostream& out) {
  const StepDistribution walk = srw3d();
  const Cone cone = Cone::degenerate_axis_cone_positive();
  ExactOptions opts;
  opts.threads = threads;
  out << "walk " << walk.name() << ", cone " << cone.describe() << '\n';
  const TailSeries tail = exact_tail(walk, cone, 1000, opts);
  for (int n = 1; n <= 20; ++n) {
    const double expected =
        std::exp(std::lgamma(n + 1.0) - std::lgamma(n / 2 + 1.0) - std::lgamma(n - n / 2 + 1.0) - n * std::log(6.0));
    out << "p(" << n << ") = " << num(tail.values[n]) << ", C(n,n/2)/6^n = " << num(expected) << '\n';
  }
  std::vector<double> scaled(tail.log_values.size());
  for (std::size_t n = 0; n < scaled.size(); ++n) scaled[n] = tail.log_values[n] + static_cast<double>(n) * std::log(3.0);
  const IndexEstimate e = estimate_index_log(scaled, {100, 1000});
  out << "slope of log(3^n p(n)) vs log n on [100,1000] = " << num(-e.alpha_hat) << '\n';
  line(out, "3^n p(n) sqrt(n) at n=1000", std::exp(scaled[1000]) * std::sqrt(1000.0));
}

void demo_rayleigh(unsigned threads, std::ostream& out) {
  const StepDistribution walk = srw1d();
  const Cone cone = Cone::half_line();
  ExactOptions opts;
  opts.threads = threads;
  out << "walk " << walk.name() << ", cone " << cone.describe() << '\n';
  double previous = 0.0;
  for (int n : {100, 1000}) {
    const GofReport r = rayleigh_check(endpoint_law(walk, cone, n, opts), cone);
    out << "n=" << n << ": ";
    report_gof(out, r);
    if (n == 1000) out << "distance decreased: " << (r.value < previous ? "yes" : "no") << '\n';
    previous = r.value;
  }
}

void demo_octant(unsigned threads, std::ostream& out) {
  const Cone cone = Cone::octant();
  ExactOptions opts;
  opts.threads = threads;
  out << "walk srw2d, cone " << cone.describe() << ", alpha = 2\n";
  for (int n : {20, 50, 100, 200}) {
    const SandwichReport s = sandwich_check(cone, n, opts);
    out << "n=" << n << " k=" << s.k << " x=" << to_string(s.interior_point) << " m=" << s.m << ": "
        << num(s.lower_bound) << " <= " << num(s.tail) << " <= " << num(s.upper_bound) << " ("
        << (s.lower_holds && s.upper_holds ? "holds" : "VIOLATED") << ")\n";
  }
  opts.truncation = 1e-16;
  const TailSeries tail = exact_tail(srw2d(), cone, 600, opts);
  const IndexEstimate e = estimate_index(tail, default_window(600));
  out << "truncated DP eps=1e-16 to n=600, leaked " << num(tail.leaked.back()) << '\n';
  out << "alpha_hat loglog [" << e.window.lo << "," << e.window.hi << "] = " << num(e.alpha_hat) << '\n';
}

const std::map<std::string, std::function<void(unsigned, std::ostream&)>>& registry() {
  static const std::map<std::string, std::function<void(unsigned, std::ostream&)>> demos{
      {"quarter-plane", demo_quarter_plane}, {"example1", demo_example1}, {"example2", demo_example2},
      {"rayleigh", demo_rayleigh},           {"octant", demo_octant},
  };
  return demos;
}

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

bool run_demo(const std::string& name, unsigned threads, std::ostream& out) {
  const auto it = registry().find(name);
  if (it == registry().end()) return false;
  it->second(threads, out);
  return true;
}

}  // namespace conewalk::cli
