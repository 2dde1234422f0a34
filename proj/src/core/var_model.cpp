#include "var_model.hpp"

#include <cmath>

#include "rng.hpp"

namespace ltport {

DiscreteVarParams default_var_params() {
  DiscreteVarParams p;
  p.rf_quarterly = 0.015;
  p.a_r = 0.227;
  p.b_r = 0.060;
  p.a_z = -0.155;
  p.b_z = 0.958;
  p.var_r = 0.0060;
  p.var_z = 0.0049;
  p.cov_rz = -0.0051;
  return p;
}

const DiscreteVarParams &validate(const DiscreteVarParams &params) {
  if (!std::isfinite(params.rf_quarterly) || !std::isfinite(params.a_r) ||
      !std::isfinite(params.b_r) || !std::isfinite(params.a_z) ||
      !std::isfinite(params.b_z) || !std::isfinite(params.var_r) ||
      !std::isfinite(params.var_z) || !std::isfinite(params.cov_rz))
    throw InvalidParams("non-finite parameter value");
  if (!(params.var_r > 0.0))
    throw InvalidParams("var_r must be positive");
  if (!(params.var_z > 0.0))
    throw InvalidParams("var_z must be positive");
  if (!(params.cov_rz * params.cov_rz <= params.var_r * params.var_z))
    throw InvalidParams(
        "covariance: cov_rz^2 must not exceed var_r * var_z");
  if (!(std::fabs(params.b_z) < 1.0))
    throw InvalidParams("nonstationary: |b_z| must be below 1");
  if (!(params.b_r > 0.0))
    throw InvalidParams("b_r must be positive");
  if (!(params.b_z > 0.0))
    throw InvalidParams("b_z must be positive");
  return params;
}

std::pair<double, double> z_unconditional(const DiscreteVarParams &params) {
  validate(params);
  const double mean = params.a_z / (1.0 - params.b_z);
  const double variance = params.var_z / (1.0 - params.b_z * params.b_z);
  return {mean, variance};
}

PathBatch simulate_paths(const DiscreteVarParams &params, std::int64_t n_paths,
                         std::int32_t horizon, double z0, std::uint64_t seed,
                         const SimulateOptions &options) {
  validate(params);
  if (n_paths < 1)
    throw InvalidParams("n_paths must be at least 1");
  if (horizon < 1)
    throw InvalidParams("horizon must be at least 1");

  PathBatch batch;
  batch.n_paths = n_paths;
  batch.horizon = horizon;
  batch.seed = seed;
  batch.excess_log_returns.resize(static_cast<std::size_t>(n_paths) * horizon);
  batch.predictor.resize(static_cast<std::size_t>(n_paths) * (horizon + 1));

  // Explicit lower-triangular factor of the 2x2 innovation covariance:
  //   eps_r = l11 u1, eps_z = l21 u1 + l22 u2.
  const double sigma_r = std::sqrt(params.var_r);
  const double l11 = sigma_r;
  const double l21 = params.cov_rz / sigma_r;
  const double l22 =
      std::sqrt(std::fmax(params.var_z - l21 * l21, 0.0));

  const std::size_t n = static_cast<std::size_t>(n_paths);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng(substream_seed(seed, i));
    double z = z0;
    batch.predictor[i] = z;
    for (std::int32_t t = 0; t < horizon; ++t) {
      double eps_r = 0.0;
      double eps_z = 0.0;
      if (!options.zero_innovations) {
        const double u1 = rng.next_normal();
        const double u2 = rng.next_normal();
        eps_r = l11 * u1;
        eps_z = l21 * u1 + l22 * u2;
      }
      const std::size_t at = static_cast<std::size_t>(t) * n + i;
      batch.excess_log_returns[at] = params.a_r + params.b_r * z + eps_r;
      z = params.a_z + params.b_z * z + eps_z;
      batch.predictor[at + n] = z;
    }
  }
  return batch;
}

void write_csv(const PathBatch &batch, std::ostream &os) {
  os << "path,quarter,excess_log_return,predictor_begin,predictor_end\n";
  for (std::int64_t i = 0; i < batch.n_paths; ++i)
    for (std::int32_t t = 0; t < batch.horizon; ++t)
      os << i << ',' << t << ',' << batch.ret(i, t) << ',' << batch.z(i, t)
         << ',' << batch.z(i, t + 1) << '\n';
}

} // namespace ltport
