#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conewalk/cone.hpp"
#include "conewalk/exact_engine.hpp"
#include "conewalk/meander.hpp"
#include "conewalk/sampler.hpp"

namespace conewalk {

struct GofReport {
  std::string statistic;
  double value = 0.0;
  double sample_size = 0.0;  // N, or the effective sample size
  double threshold = 0.0;
  bool pass = false;
};

using Cdf = std::function<double(double)>;

/// Asymptotic Kolmogorov critical coefficient c(level) = sqrt(-ln(level/2)/2);
/// c(0.01) = 1.628.
double ks_critical_value(double level);

/// sup_x |F_emp(x) - F(x)| for any N >= 1. Throws on NaN input.
double ks_statistic(std::span<const double> samples, const Cdf& cdf);

/// One-sample KS test; needs at least 20 samples. `effective_size`
/// replaces N in the threshold when given (dependent samples).
GofReport ks_one_sample(std::span<const double> samples, const Cdf& cdf, double level = 0.01,
                        std::optional<double> effective_size = std::nullopt);

GofReport ks_two_sample(std::span<const double> a, std::span<const double> b, double level = 0.01);

/// Default threshold for distances between an exact lattice law and its
/// continuous limit. The limit theorem gives no rate; this is our choice.
inline constexpr double kExactDistanceThreshold = 0.05;

/**
 * Distance between a discrete law on [0, inf) (atoms x_i with masses m_i)
 * and a continuous CDF, measured on bins of width h starting at 0:
 * half the sum over bins of |empirical bin mass - F bin mass|.
 */
double binned_distance(std::span<const double> atoms, std::span<const double> masses, const Cdf& cdf, double bin_width);

/// Same binning on a bounded interval [0, upper], with the bin count rounded up.
double binned_distance_bounded(std::span<const double> atoms, std::span<const double> masses, const Cdf& cdf,
                               double bin_width, double upper);

/// Kolmogorov distance on the same grid: the largest gap between the two
/// CDFs at the bin edges. Pass upper = infinity for an unbounded range.
double binned_ks_distance(std::span<const double> atoms, std::span<const double> masses, const Cdf& cdf,
                          double bin_width, double upper);

struct EndpointGof {
  GofReport radial;
  GofReport angular;
};

/// KS tests of |w(1)| and the polar angle of w(1) against the meander law.
EndpointGof endpoint_gof(const PathEnsemble& ensemble, const Cone& cone, const MeanderEndpointLaw& law,
                         double level = 0.01);

/**
 * Exact DP endpoint law against the meander law, on bins of width 2/sqrt(n)
 * (normalized units for the radius, radians for the angle) centered at
 * multiples of the width. The default compares CDFs at the bin edges
 * (binned Kolmogorov distance); endpoint_tv gives half the L1 distance
 * between bin masses instead.
 */
EndpointGof endpoint_gof(const EndpointLaw& law, const Cone& cone, const MeanderEndpointLaw& meander,
                         double threshold = kExactDistanceThreshold);
EndpointGof endpoint_tv(const EndpointLaw& law, const Cone& cone, const MeanderEndpointLaw& meander,
                        double threshold = kExactDistanceThreshold);

struct BoundaryOccupation {
  double mean = 0.0;
  std::vector<double> per_path;
};

/// Share of grid times k/n, k = 1..n, with d(w(k/n), boundary) <= eps.
BoundaryOccupation boundary_occupation(const PathEnsemble& ensemble, const Cone& cone, double eps);

/// Endpoint of 1D half-line ensembles against 1 - exp(-x^2/2) (KS).
GofReport rayleigh_check(const PathEnsemble& ensemble, const Cone& cone, double level = 0.01);

/// Exact 1D endpoint law against the Rayleigh law (binned distance).
GofReport rayleigh_check(const EndpointLaw& law, const Cone& cone, double threshold = kExactDistanceThreshold);

}  // namespace conewalk
