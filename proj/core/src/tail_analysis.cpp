#include "conewalk/tail_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace conewalk {

namespace {

void check_window(const std::vector<double>& log_values, Window w, int min_points) {
  if (w.lo < 1 || w.hi >= static_cast<int>(log_values.size()) || w.lo > w.hi) {
    throw std::out_of_range("window [" + std::to_string(w.lo) + "," + std::to_string(w.hi) +
                            "] is not inside the series (n = 1.." + std::to_string(log_values.size() - 1) + ")");
  }
  if (w.size() < min_points) {
    throw std::invalid_argument("window needs at least " + std::to_string(min_points) + " points");
  }
  for (int n = w.lo; n <= w.hi; ++n) {
    if (!std::isfinite(log_values[n])) {
      throw std::invalid_argument("tail value at n=" + std::to_string(n) + " is not positive");
    }
  }
}

int scaled_index(int n, double t) { return static_cast<int>(std::floor(n * t)); }

}  // namespace

Window default_window(int n_max) { return {std::max(1, n_max / 8), n_max}; }

std::string to_string(IndexMethod m) { return m == IndexMethod::loglog_ls ? "loglog" : "ratio"; }

IndexEstimate estimate_index_log(const std::vector<double>& log_values, Window window, IndexMethod method) {
  check_window(log_values, window, 5);
  IndexEstimate est;
  est.window = window;
  est.method = method;

  if (method == IndexMethod::loglog_ls) {
    const double m = window.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (int n = window.lo; n <= window.hi; ++n) {
      mean_x += std::log(static_cast<double>(n));
      mean_y += log_values[n];
    }
    mean_x /= m;
    mean_y /= m;
    double sxx = 0.0, sxy = 0.0;
    for (int n = window.lo; n <= window.hi; ++n) {
      const double dx = std::log(static_cast<double>(n)) - mean_x;
      sxx += dx * dx;
      sxy += dx * (log_values[n] - mean_y);
    }
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (int n = window.lo; n <= window.hi; ++n) {
      const double r = log_values[n] - mean_y - slope * (std::log(static_cast<double>(n)) - mean_x);
      ssr += r * r;
    }
    est.alpha_hat = -slope;
    est.stderr_ = std::sqrt(ssr / (m - 2.0) / sxx);
    return est;
  }

  std::vector<double> terms;
  for (int n = window.lo; 2 * n <= window.hi; ++n) {
    terms.push_back((log_values[n] - log_values[2 * n]) / std::numbers::ln2);
  }
  if (terms.empty()) throw std::invalid_argument("ratio method needs 2*lo <= hi");
  double mean = 0.0;
  for (double v : terms) mean += v;
  mean /= static_cast<double>(terms.size());
  double var = 0.0;
  for (double v : terms) var += (v - mean) * (v - mean);
  est.alpha_hat = mean;
  est.stderr_ = terms.size() > 1 ? std::sqrt(var / static_cast<double>(terms.size() - 1) / terms.size()) : 0.0;
  return est;
}

IndexEstimate estimate_index(const TailSeries& tail, Window window, IndexMethod method) {
  return estimate_index_log(tail.log_values, window, method);
}

double dominated_variation_stat(const TailSeries& tail, double t, Window window) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in (0, 1]");
  if (window.lo > window.hi) throw std::invalid_argument("empty window");
  if (window.hi >= static_cast<int>(tail.log_values.size()) || window.lo < 1) {
    throw std::out_of_range("window is not inside the series");
  }
  double worst = 0.0;
  for (int n = window.lo; n <= window.hi; ++n) {
    const int m = scaled_index(n, t);
    if (m < 1) throw std::invalid_argument("[n t] must be >= 1 throughout the window");
    worst = std::max(worst, std::exp(tail.log_values[m] - tail.log_values[n]));
  }
  return worst;
}

VaropoulosReport varopoulos_check(const TailSeries& tail, double alpha, Window window) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  check_window(tail.log_values, window, 1);
  VaropoulosReport rep;
  rep.alpha = alpha;
  rep.window = window;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int n = window.lo; n <= window.hi; ++n) {
    const double v = alpha * std::log(static_cast<double>(n)) + tail.log_values[n];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  rep.inf = std::exp(lo);
  rep.sup = std::exp(hi);
  rep.gamma = std::max(rep.sup, 1.0 / rep.inf);
  return rep;
}

RatioLimitReport ratio_limit_check(const TailSeries& tail, double t, double alpha, int n) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  const int nt = scaled_index(n, t);
  const int n_max = static_cast<int>(tail.log_values.size()) - 1;
  if (n < 1 || nt < 0 || n > n_max || nt > n_max) {
    throw std::out_of_range("indices n=" + std::to_string(n) + " and [nt]=" + std::to_string(nt) +
                            " must lie in 0.." + std::to_string(n_max));
  }
  RatioLimitReport rep;
  rep.n = n;
  rep.nt = nt;
  rep.t = t;
  rep.alpha = alpha;
  rep.ratio = std::exp(tail.log_values[nt] - tail.log_values[n]);
  rep.limit = std::pow(t, -alpha);
  rep.abs_error = std::abs(rep.ratio - rep.limit);
  rep.rel_error = rep.abs_error / rep.limit;
  rep.ratio_lo = rep.ratio_hi = rep.ratio;
  if (!tail.leaked.empty() && !tail.values.empty() && tail.values[n] > 0.0) {
    rep.ratio_lo = tail.lower(nt) / tail.upper(n);
    rep.ratio_hi = tail.upper(nt) / tail.lower(n);
  }
  rep.worst_rel_error = std::max(std::abs(rep.ratio_lo - rep.limit), std::abs(rep.ratio_hi - rep.limit)) / rep.limit;
  return rep;
}

std::vector<double> dominated_not_regular_sequence(int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  std::vector<double> u(static_cast<std::size_t>(n_max) + 1);
  u[0] = 1.0;
  double c = 1.0;
  int excursion = 1;
  for (int n = 1; n <= n_max; ++n) {
    u[n] = c / n;
    const double target = 2.0 - 1.0 / (excursion + 1);
    if (c >= target) {
      c = 1.0;
      ++excursion;
    } else {
      c = std::min(2.0, c * (1.0 + 1.0 / n));
    }
  }
  return u;
}

}  // namespace conewalk
