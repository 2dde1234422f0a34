#pragma once

#include <array>

#include "var_model.hpp"

namespace ltport {

// Continuous-time opportunity set: risk-free rate r, return volatility
// sigma, and an Ornstein-Uhlenbeck Sharpe ratio
//   dX = kappa (theta - X) dt + zeta dB_x
// whose innovations correlate with return innovations at rate rho.
// Units are quarters throughout.
struct ContinuousParams {
  double r = 0.0;
  double theta = 0.0;
  double kappa = 0.0;
  double sigma = 0.0;
  double zeta = 0.0;
  double rho = 0.0;
};

// Recovers the continuous-time parameters implied by the quarterly VAR:
//   r     = rf
//   theta = a_z b_r / (sigma_r (1 - b_z)) + (a_r + sigma_r^2/2) / sigma_r
//   kappa = -ln(b_z)
//   sigma = sigma_r
//   zeta  = b_r sigma_z / sigma_r
//   rho   = cov_rz / (sigma_r sigma_z)
// Requires b_r, b_z > 0.
ContinuousParams recover_continuous(const DiscreteVarParams &params);

// Unconditional (stationary) distribution of the Sharpe ratio X.
struct XDistribution {
  double mean = 0.0;
  double variance = 0.0;
};

// mean = theta, variance = b_r^2 var_z / ((1 - b_z^2) var_r).
XDistribution x_distribution(const DiscreteVarParams &params);

// p-th percentile of the X distribution, p in percent in (0, 100).
// Throws DegenerateDistribution for zero variance unless p = 50.
double x_percentile(const XDistribution &dist, double p);

// Affine map between the predictor and the Sharpe ratio at quarterly
// sampling: X = sigma/2 + (a_r + b_r z) / sigma, and its inverse.
double z_to_x(const DiscreteVarParams &params, double z);
double x_to_z(const DiscreteVarParams &params, double x);

// Conditional second moments and transition of the exactly discretized
// continuous system over a step of dt quarters. State ordering is
// (excess log return, X).
struct ExactMoments {
  double var_x = 0.0;
  double cov_x_return = 0.0;
  double var_return = 0.0;
  std::array<double, 4> transition{}; // row-major 2x2
  std::array<double, 2> intercept{};
};

ExactMoments exact_moments(const ContinuousParams &cont, double dt);

} // namespace ltport
