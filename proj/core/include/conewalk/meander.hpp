#pragma once

#include "conewalk/rng.hpp"

namespace conewalk {

struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;
};

/**
 * Time-one law of the Brownian meander of a planar wedge of angle beta,
 * with alpha = pi / (2 beta):
 *
 *   e(1, y) = r^{2 alpha} 2^{-alpha} / Gamma(alpha) exp(-r^2/2) sin(2 alpha theta)
 *
 * (density in Cartesian dy). R and Theta are independent:
 * R^2/2 ~ Gamma(alpha + 1) and P(Theta <= t) = (1 - cos 2 alpha t) / 2.
 */
class MeanderEndpointLaw {
 public:
  static MeanderEndpointLaw from_alpha(double alpha);
  static MeanderEndpointLaw from_beta(double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// Throws std::domain_error for theta outside [0, beta] or r < 0.
  double density(double r, double theta) const;
  double radial_density(double r) const;
  double angular_density(double theta) const;
  double radial_cdf(double r) const;
  double angular_cdf(double theta) const;

  PolarPoint sample(RngStream& rng) const;

 private:
  MeanderEndpointLaw(double alpha, double beta);

  double alpha_;
  double beta_;
  double log_norm_;  // -alpha ln 2 - ln Gamma(alpha)
};

/// 1 - exp(-x^2/2); throws std::domain_error for x < 0.
double rayleigh_cdf(double x);

}  // namespace conewalk
