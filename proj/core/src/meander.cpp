#include "conewalk/meander.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "conewalk/special_functions.hpp"

namespace conewalk {

MeanderEndpointLaw::MeanderEndpointLaw(double alpha, double beta)
    : alpha_(alpha), beta_(beta), log_norm_(-alpha * std::numbers::ln2 - std::lgamma(alpha)) {}

MeanderEndpointLaw MeanderEndpointLaw::from_alpha(double alpha) {
  if (!(alpha >= 0.5) || !std::isfinite(alpha)) {
    throw std::invalid_argument("meander index alpha = pi/(2 beta) must be >= 1/2");
  }
  return MeanderEndpointLaw(alpha, std::numbers::pi / (2.0 * alpha));
}

MeanderEndpointLaw MeanderEndpointLaw::from_beta(double beta) {
  if (!(beta > 0.0 && beta <= std::numbers::pi)) throw std::invalid_argument("wedge angle must lie in (0, pi]");
  return MeanderEndpointLaw(std::numbers::pi / (2.0 * beta), beta);
}

double MeanderEndpointLaw::density(double r, double theta) const {
  if (!(r >= 0.0)) throw std::domain_error("radius must be nonnegative");
  if (!(theta >= 0.0 && theta <= beta_)) throw std::domain_error("angle outside [0, beta]");
  if (r == 0.0) return 0.0;
  const double s = std::sin(2.0 * alpha_ * theta);
  if (s <= 0.0) return 0.0;  // boundary rays
  return std::exp(log_norm_ + 2.0 * alpha_ * std::log(r) - 0.5 * r * r) * s;
}

double MeanderEndpointLaw::radial_density(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("radius must be nonnegative");
  if (r == 0.0) return 0.0;
  // r^{2 alpha + 1} e^{-r^2/2} / (2^alpha Gamma(alpha + 1))
  return std::exp((2.0 * alpha_ + 1.0) * std::log(r) - 0.5 * r * r - alpha_ * std::numbers::ln2 -
                  std::lgamma(alpha_ + 1.0));
}

double MeanderEndpointLaw::angular_density(double theta) const {
  if (!(theta >= 0.0 && theta <= beta_)) throw std::domain_error("angle outside [0, beta]");
  return alpha_ * std::sin(2.0 * alpha_ * theta);
}

double MeanderEndpointLaw::radial_cdf(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("radius must be nonnegative");
  return regularized_gamma_p(alpha_ + 1.0, 0.5 * r * r);
}

double MeanderEndpointLaw::angular_cdf(double theta) const {
  if (!(theta >= 0.0 && theta <= beta_ * (1.0 + 1e-15))) throw std::domain_error("angle outside [0, beta]");
  if (theta >= beta_) return 1.0;
  return 0.5 * (1.0 - std::cos(2.0 * alpha_ * theta));
}

PolarPoint MeanderEndpointLaw::sample(RngStream& rng) const {
  PolarPoint p;
  const double u = rng.uniform();
  p.theta = std::acos(1.0 - 2.0 * u) / (2.0 * alpha_);
  std::gamma_distribution<double> gamma(alpha_ + 1.0, 1.0);
  p.r = std::sqrt(2.0 * gamma(rng));
  return p;
}

double rayleigh_cdf(double x) {
  if (!(x >= 0.0)) throw std::domain_error("Rayleigh CDF needs x >= 0");
  return -std::expm1(-0.5 * x * x);
}

}  // namespace conewalk
