#include "aggregation.hpp"

#include <cmath>

#include "norminv.hpp"

namespace ltport {

ContinuousParams recover_continuous(const DiscreteVarParams &params) {
  validate(params);
  const double sigma_r = std::sqrt(params.var_r);
  const double sigma_z = std::sqrt(params.var_z);

  ContinuousParams cont;
  cont.r = params.rf_quarterly;
  cont.theta = params.a_z * params.b_r / (sigma_r * (1.0 - params.b_z)) +
               (params.a_r + params.var_r / 2.0) / sigma_r;
  cont.kappa = -std::log(params.b_z);
  cont.sigma = sigma_r;
  cont.zeta = params.b_r * sigma_z / sigma_r;
  cont.rho = params.cov_rz / (sigma_r * sigma_z);
  return cont;
}

XDistribution x_distribution(const DiscreteVarParams &params) {
  XDistribution dist;
  dist.mean = recover_continuous(params).theta;
  dist.variance = params.b_r * params.b_r * params.var_z /
                  ((1.0 - params.b_z * params.b_z) * params.var_r);
  return dist;
}

double x_percentile(const XDistribution &dist, double p) {
  if (!(p > 0.0 && p < 100.0))
    throw InvalidParams("percentile must lie in (0, 100)");
  if (dist.variance == 0.0) {
    if (p == 50.0)
      return dist.mean;
    throw DegenerateDistribution(
        "zero-variance X distribution has no percentile away from the median");
  }
  return dist.mean + inverse_normal_cdf(p / 100.0) * std::sqrt(dist.variance);
}

double z_to_x(const DiscreteVarParams &params, double z) {
  validate(params);
  const double sigma = std::sqrt(params.var_r);
  return sigma / 2.0 + (params.a_r + params.b_r * z) / sigma;
}

double x_to_z(const DiscreteVarParams &params, double x) {
  validate(params);
  const double sigma = std::sqrt(params.var_r);
  return ((x - sigma / 2.0) * sigma - params.a_r) / params.b_r;
}

ExactMoments exact_moments(const ContinuousParams &cont, double dt) {
  if (!(dt > 0.0))
    throw InvalidParams("dt must be positive");
  if (!(cont.kappa > 0.0))
    throw InvalidParams("kappa must be positive");

  const double k = cont.kappa;
  const double s = cont.sigma;
  const double z = cont.zeta;
  const double rho = cont.rho;
  const double e1 = 1.0 - std::exp(-k * dt);
  const double e2 = 1.0 - std::exp(-2.0 * k * dt);

  ExactMoments m;
  m.var_x = z * z / (2.0 * k) * e2;
  m.cov_x_return = rho * s * z / k * e1 + s * z * z / (k * k) * e1 -
                   s * z * z / (2.0 * k * k) * e2;
  m.var_return =
      (s * s + 2.0 * rho * z * s * s / k + z * z * s * s / (k * k)) * dt -
      2.0 * rho * z * s * s / (k * k) * e1 -
      2.0 * z * z * s * s / (k * k * k) * e1 +
      z * z * s * s / (2.0 * k * k * k) * e2;

  m.transition = {1.0, e1 * s / k, 0.0, std::exp(-k * dt)};
  m.intercept = {(-s * s / 2.0 + s * cont.theta) * dt - e1 * s * cont.theta / k,
                 e1 * cont.theta};
  return m;
}

} // namespace ltport
