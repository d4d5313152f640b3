#pragma once

#include <string>
#include <vector>

#include "conewalk/exact_engine.hpp"

namespace conewalk {

/// Inclusive index window [lo, hi].
struct Window {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo + 1; }
};

/// [n_max/8, n_max], keeping lo >= 1.
Window default_window(int n_max);

enum class IndexMethod { loglog_ls, ratio };

std::string to_string(IndexMethod m);

struct IndexEstimate {
  double alpha_hat = 0.0;
  double stderr_ = 0.0;
  Window window;
  IndexMethod method = IndexMethod::loglog_ls;
};

/**
 * Regular-variation index of a tail series.
 *
 * loglog_ls: negated least-squares slope of log p(n) against log n using
 * every integer n in the window, with the usual regression standard error.
 * ratio: mean of log2(p(n)/p(2n)) over n with n, 2n in the window.
 * Works on log values, so underflowed geometric tails are fine.
 */
IndexEstimate estimate_index(const TailSeries& tail, Window window, IndexMethod method = IndexMethod::loglog_ls);
IndexEstimate estimate_index_log(const std::vector<double>& log_values, Window window,
                                 IndexMethod method = IndexMethod::loglog_ls);

/// max over n in the window of p([n t]) / p(n); a finite-n stand-in for
/// limsup_n u_[nt] / u_n.
double dominated_variation_stat(const TailSeries& tail, double t, Window window);

struct VaropoulosReport {
  double alpha = 0.0;
  Window window;
  double inf = 0.0;    // inf of n^alpha p(n)
  double sup = 0.0;    // sup of n^alpha p(n)
  double gamma = 0.0;  // max(sup, 1/inf)
  double spread() const { return sup / inf; }
};

VaropoulosReport varopoulos_check(const TailSeries& tail, double alpha, Window window);

struct RatioLimitReport {
  int n = 0;
  int nt = 0;
  double t = 0.0;
  double alpha = 0.0;
  double ratio = 0.0;  // p([n t]) / p(n)
  double limit = 0.0;  // t^-alpha
  double abs_error = 0.0;
  double rel_error = 0.0;
  // Using the truncation brackets of both terms (equal to ratio for exact series).
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
  double worst_rel_error = 0.0;
};

RatioLimitReport ratio_limit_check(const TailSeries& tail, double t, double alpha, int n);

/**
 * A non-increasing sequence u_n = c_n / n with 1 <= c_n <= 2 that is
 * dominatedly but not regularly varying: c grows by factors (1 + 1/n)
 * until it passes 2 - 1/k (k-th excursion), then drops back to 1.
 * Entry 0 is set to 1 so the result can back a TailSeries.
 */
std::vector<double> dominated_not_regular_sequence(int n_max);

}  // namespace conewalk
