// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <conewalk/conewalk.hpp>

#include "../oracles.hpp"
#include "io.hpp"

using namespace conewalk;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g(double v) { return fmt("%.6g", v); }

// Serialized stochastic outputs, keyed by run name, for the determinism check.
std::map<std::string, std::string> g_stochastic;

std::string serialize(const PathEnsemble& ens) {
  std::ostringstream out;
  io::write_paths_jsonl(out, ens);
  out << io::ensemble_summary_json(ens) << '\n';
  return out.str();
}

std::vector<int> every_step(int n) {
  std::vector<int> s;
  for (int k = 1; k <= n; ++k) s.push_back(k);
  return s;
}

// ---- stochastic runs, parameterized by thread count

PathEnsemble octant_splitting(unsigned threads) {
  return splitting_sample(srw2d(), Cone::octant(), 200, 10000, default_schedule(200), {20240501, threads});
}
PathEnsemble quarter_rejection(unsigned threads) {
  return rejection_sample(srw2d(), Cone::quarter_plane(), 100, 10000, {20240502, threads});
}
PathEnsemble axis_splitting(unsigned threads) {
  return splitting_sample(srw3d(), Cone::degenerate_axis_cone(), 30, 1000, every_step(30), {20240503, threads});
}
PathEnsemble half_axis_splitting(unsigned threads) {
  return splitting_sample(srw3d(), Cone::degenerate_axis_cone_positive(), 30, 1000, every_step(30), {20240504, threads});
}
PathEnsemble quarter_splitting_400(unsigned threads) {
  return splitting_sample(srw2d(), Cone::quarter_plane(), 400, 2000, default_schedule(400), {20240505, threads});
}
std::string meander_samples(double alpha) {
  const auto law = MeanderEndpointLaw::from_alpha(alpha);
  RngStream rng(20240506, static_cast<std::uint64_t>(alpha * 2));
  std::ostringstream out;
  for (int i = 0; i < 100000; ++i) {
    const PolarPoint p = law.sample(rng);
    out << io::num(p.r) << ',' << io::num(p.theta) << '\n';
  }
  return out.str();
}

std::string all_meander_samples() {
  std::string s;
  for (double a : {0.5, 1.0, 2.0, 3.0}) s += meander_samples(a);
  return s;
}

const std::map<std::string, std::function<std::string(unsigned)>>& stochastic_runs() {
  static const std::map<std::string, std::function<std::string(unsigned)>> runs{
      {"octant splitting n=200", [](unsigned t) { return serialize(octant_splitting(t)); }},
      {"quarter-plane rejection n=100", [](unsigned t) { return serialize(quarter_rejection(t)); }},
      {"axis-cone splitting n=30", [](unsigned t) { return serialize(axis_splitting(t)); }},
      {"half-axis splitting n=30", [](unsigned t) { return serialize(half_axis_splitting(t)); }},
      {"quarter-plane splitting n=400", [](unsigned t) { return serialize(quarter_splitting_400(t)); }},
      {"meander samples", [](unsigned) { return all_meander_samples(); }},
  };
  return runs;
}

// Exact quarter-plane tail to n = 800, shared by two criteria.
const TailSeries& quarter_tail() {
  static const TailSeries t = exact_tail(srw2d(), Cone::quarter_plane(), 800);
  return t;
}

// ---- criteria

Outcome geometric_tail() {
  const TailSeries t = exact_tail(srw3d(), Cone::degenerate_axis_cone(), 30);
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) worst = std::max(worst, std::abs(t.values[n] * std::pow(3.0, n) - 1.0));
  return {worst <= 1e-12, "max rel error vs 3^-n over n<=30 = " + g(worst)};
}

Outcome half_axis_exponent() {
  const TailSeries t = exact_tail(srw3d(), Cone::degenerate_axis_cone_positive(), 1000);
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const double counted = static_cast<double>(oracle::count_nonnegative_paths(n)) / std::pow(6.0, n);
    const double ballot = oracle::binomial(n, n / 2) / std::pow(6.0, n);
    worst = std::max({worst, std::abs(t.values[n] / counted - 1.0), std::abs(t.values[n] / ballot - 1.0)});
  }
  std::vector<double> scaled(t.log_values.size());
  for (std::size_t n = 0; n < scaled.size(); ++n) scaled[n] = t.log_values[n] + static_cast<double>(n) * std::log(3.0);
  const double slope = -estimate_index_log(scaled, {100, 1000}).alpha_hat;
  return {worst <= 1e-12 && std::abs(slope + 0.5) <= 0.05,
          "enumeration rel error (n<=20) = " + g(worst) + ", slope of log(3^n p) on [100,1000] = " + g(slope)};
}

Outcome quarter_plane_index() {
  const IndexEstimate e = estimate_index(quarter_tail(), {100, 800});
  return {e.alpha_hat >= 0.9 && e.alpha_hat <= 1.1, "alpha_hat [100,800] = " + g(e.alpha_hat) + " (true 1)"};
}

Outcome octant_index() {
  ExactOptions o;
  o.truncation = 1e-16;
  const TailSeries t = exact_tail(srw2d(), Cone::octant(), 600, o);
  const IndexEstimate e = estimate_index(t, default_window(600));
  // the bracket must be tight enough for the fit to be meaningful
  const double rel_bracket = t.leaked[600] / t.values[600];
  return {e.alpha_hat >= 1.8 && e.alpha_hat <= 2.2 && rel_bracket < 1e-3,
          "alpha_hat [" + std::to_string(e.window.lo) + ",600] = " + g(e.alpha_hat) +
              " (true 2), relative bracket at 600 = " + g(rel_bracket)};
}

Outcome rayleigh_limit() {
  const Cone c = Cone::half_line();
  const double d100 = rayleigh_check(endpoint_law(srw1d(), c, 100), c).value;
  const double d1000 = rayleigh_check(endpoint_law(srw1d(), c, 1000), c).value;
  return {d1000 < 0.05 && d1000 < d100, "binned distance n=100: " + g(d100) + ", n=1000: " + g(d1000)};
}

// Radial binned distance with the radius measured from (-1,-1), the apex
// of the lattice region the walk actually explores. Diagnostic only.
double apex_shifted_radial(const EndpointLaw& law, const MeanderEndpointLaw& m) {
  const double scale = 1.0 / (law.sigma * std::sqrt(static_cast<double>(law.n)));
  std::vector<double> r, mass;
  for (const auto& [p, w] : law.masses) {
    r.push_back(scale * std::hypot(p[0] + 1.0, p[1] + 1.0));
    mass.push_back(w);
  }
  return binned_ks_distance(r, mass, [&](double v) { return m.radial_cdf(v); }, 2.0 / std::sqrt(law.n),
                            std::numeric_limits<double>::infinity());
}

Outcome meander_endpoint() {
  const Cone c = Cone::quarter_plane();
  const auto m = MeanderEndpointLaw::from_alpha(1.0);
  const EndpointLaw l100 = endpoint_law(srw2d(), c, 100);
  const EndpointLaw l400 = endpoint_law(srw2d(), c, 400);
  const EndpointGof a = endpoint_gof(l100, c, m);
  const EndpointGof b = endpoint_gof(l400, c, m);
  const bool pass = b.radial.value < 0.05 && b.angular.value < 0.05 && b.radial.value < a.radial.value &&
                    b.angular.value < a.angular.value;
  return {pass, "n=400 radial " + g(b.radial.value) + ", angular " + g(b.angular.value) + "; n=100 radial " +
                    g(a.radial.value) + ", angular " + g(a.angular.value) +
                    "; apex-shifted radial n=400 (diagnostic) " + g(apex_shifted_radial(l400, m))};
}

Outcome ratio_limit() {
  ExactOptions o;
  o.truncation = 1e-15;
  const TailSeries t = exact_tail(srw2d(), Cone::quarter_plane(), 1200, o);
  const RatioLimitReport r = ratio_limit_check(t, 2.0, 1.0, 600);
  return {r.worst_rel_error < 0.10, "p(1200)/p(600) in [" + fmt("%.8f", r.ratio_lo) + ", " + fmt("%.8f", r.ratio_hi) +
                                        "], worst rel error vs 1/2 = " + g(r.worst_rel_error)};
}

Outcome estimator_consistency() {
  ExactOptions o;
  o.truncation = 1e-16;
  const TailSeries oct = exact_tail(srw2d(), Cone::octant(), 200, o);
  const PathEnsemble s = octant_splitting(1);
  g_stochastic["octant splitting n=200"] = serialize(s);
  const double gap = std::max({0.0, oct.lower(200) - s.tail_estimate, s.tail_estimate - oct.upper(200)});
  const double exact100 = quarter_tail().values[100];
  const PathEnsemble r = quarter_rejection(1);
  g_stochastic["quarter-plane rejection n=100"] = serialize(r);
  const double rgap = std::abs(r.tail_estimate - exact100);
  return {gap <= 3 * s.tail_stderr && rgap <= 3 * r.tail_stderr,
          "splitting " + g(s.tail_estimate) + " +- " + g(s.tail_stderr) + " vs [" + g(oct.lower(200)) + ", " +
              g(oct.upper(200)) + "] (" + g(gap / s.tail_stderr) + " se); rejection " + g(r.tail_estimate) + " +- " +
              g(r.tail_stderr) + " vs " + g(exact100) + " (" + g(rgap / r.tail_stderr) + " se)"};
}

Outcome boundary_dichotomy() {
  const PathEnsemble axis = axis_splitting(1);
  const PathEnsemble half = half_axis_splitting(1);
  const PathEnsemble quarter = quarter_splitting_400(1);
  g_stochastic["axis-cone splitting n=30"] = serialize(axis);
  g_stochastic["half-axis splitting n=30"] = serialize(half);
  g_stochastic["quarter-plane splitting n=400"] = serialize(quarter);
  const double occ_axis = boundary_occupation(axis, Cone::degenerate_axis_cone(), 0.0).mean;
  const double occ_half = boundary_occupation(half, Cone::degenerate_axis_cone_positive(), 0.0).mean;
  const double occ_quarter = boundary_occupation(quarter, Cone::quarter_plane(), 0.05).mean;
  const TailSeries geo = exact_tail(srw3d(), Cone::degenerate_axis_cone(), 10);
  const double dv_geo = dominated_variation_stat(geo, 0.5, {2, 10});
  const double dv_quarter = dominated_variation_stat(quarter_tail(), 0.5, {2, 800});
  const bool pass = occ_axis == 1.0 && occ_half == 1.0 && occ_quarter < 0.2 && dv_geo > 100 && dv_quarter < 4;
  return {pass, "occupation axis " + g(occ_axis) + ", half-axis " + g(occ_half) + ", quarter plane (eps 0.05) " +
                    g(occ_quarter) + "; domvar(1/2) axis by n=10 " + g(dv_geo) + ", quarter plane to 800 " +
                    g(dv_quarter)};
}

Outcome meander_self_consistency() {
  using boost::math::quadrature::gauss_kronrod;
  double worst_mass = 0.0;
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    const auto law = MeanderEndpointLaw::from_alpha(a);
    const auto radial = [&](double r) {
      return r * gauss_kronrod<double, 61>::integrate([&](double t) { return law.density(r, t); }, 0.0, law.beta(),
                                                      10, 1e-13);
    };
    const double mass = gauss_kronrod<double, 61>::integrate(radial, 0.0, std::numeric_limits<double>::infinity(), 15,
                                                             1e-12);
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
  }
  bool ks_pass = true;
  std::string ks;
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    const auto law = MeanderEndpointLaw::from_alpha(a);
    RngStream rng(20240506, static_cast<std::uint64_t>(a * 2));
    std::vector<double> r, t;
    for (int i = 0; i < 100000; ++i) {
      const PolarPoint p = law.sample(rng);
      r.push_back(p.r);
      t.push_back(p.theta);
    }
    const GofReport kr = ks_one_sample(r, [&](double v) { return law.radial_cdf(v); });
    const GofReport kt = ks_one_sample(t, [&](double v) { return law.angular_cdf(v); });
    ks_pass = ks_pass && kr.pass && kt.pass;
    ks += " alpha=" + g(a) + ": D_r " + g(kr.value) + ", D_theta " + g(kt.value) + " (c " + g(kr.threshold) + ");";
  }
  g_stochastic["meander samples"] = all_meander_samples();
  return {worst_mass <= 1e-8 && ks_pass, "max |mass - 1| = " + g(worst_mass) + ";" + ks};
}

Outcome oracle_equivalence() {
  const Cone orthant = Cone::half_spaces(3, {Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}});
  const std::vector<std::pair<StepDistribution, Cone>> cases = {
      {srw1d(), Cone::half_line()},
      {srw2d(), Cone::quarter_plane()},
      {srw2d(), Cone::octant()},
      {srw2d(), Cone::half_plane()},
      {srw2d(), Cone::wedge(2.0, 0.3)},
      {two_step_srw2d(), Cone::quarter_plane()},
      {two_step_srw2d(), Cone::octant()},
      {srw3d(), Cone::degenerate_axis_cone()},
      {srw3d(), Cone::degenerate_axis_cone_positive()},
      {srw3d(), orthant},
  };
  double worst = 0.0;
  for (const auto& [walk, cone] : cases) {
    const auto want = oracle::enumerate_tail(walk, cone, 10);
    const TailSeries got = exact_tail(walk, cone, 10);
    for (int n = 0; n <= 10; ++n) worst = std::max(worst, std::abs(got.values[n] - want[n]) / want[n]);
  }
  return {worst <= 1e-12, std::to_string(cases.size()) + " walk/cone pairs, n<=10, max rel difference " + g(worst)};
}

Outcome determinism() {
  int same = 0, total = 0;
  std::string bad;
  for (const auto& [name, run] : stochastic_runs()) {
    const auto it = g_stochastic.find(name);
    const std::string one = it != g_stochastic.end() ? it->second : run(1);
    const std::string again = run(1);
    const std::string four = run(4);
    ++total;
    if (one == four && one == again) {
      ++same;
    } else {
      bad += " " + name;
    }
  }
  // exact sweeps are threaded too
  std::ostringstream a, b;
  ExactOptions o1, o4;
  o4.threads = 4;
  io::write_tail_csv(a, exact_tail(srw2d(), Cone::quarter_plane(), 300, o1));
  io::write_tail_csv(b, exact_tail(srw2d(), Cone::quarter_plane(), 300, o4));
  ++total;
  if (a.str() == b.str()) ++same;
  else bad += " exact-sweep";
  return {same == total, std::to_string(same) + "/" + std::to_string(total) +
                             " runs byte-identical for threads 1, 1, 4" + (bad.empty() ? "" : ";  differing:" + bad)};
}

struct Criterion {
  const char* name;
  double budget_s;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"exact geometric tail on the axis cone", 1, geometric_tail},
      {"half-axis ballot tail and -1/2 exponent", 10, half_axis_exponent},
      {"quarter-plane index", 60, quarter_plane_index},
      {"octant index (truncated, bracketed)", 120, octant_index},
      {"half-line endpoint vs Rayleigh", 10, rayleigh_limit},
      {"quarter-plane endpoint vs meander", 60, meander_endpoint},
      {"ratio limit p(1200)/p(600)", 120, ratio_limit},
      {"estimator consistency", 120, estimator_consistency},
      {"boundary dichotomy", 60, boundary_dichotomy},
      {"meander law self-consistency", 30, meander_self_consistency},
      {"exact engine vs path enumeration", 30, oracle_equivalence},
      {"determinism across thread counts", 600, determinism},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
