#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ltport {

// Restricted VAR(1) for quarterly excess log returns and a predictor z:
//   dlnP_{t+1} - rf = a_r + b_r z_t + eps_r_{t+1}
//   z_{t+1}         = a_z + b_z z_t + eps_z_{t+1}
// with Gaussian innovations of covariance [[var_r, cov_rz], [cov_rz, var_z]].
struct DiscreteVarParams {
  double rf_quarterly = 0.0;
  double a_r = 0.0;
  double b_r = 0.0;
  double a_z = 0.0;
  double b_z = 0.0;
  double var_r = 0.0;
  double var_z = 0.0;
  double cov_rz = 0.0;
};

// Built-in quarterly U.S. stock index / dividend-yield estimates.
DiscreteVarParams default_var_params();

// Throws InvalidParams naming the violated invariant; returns its argument
// unchanged otherwise.
const DiscreteVarParams &validate(const DiscreteVarParams &params);

// Stationary AR(1) moments of z: (mean, variance). Requires |b_z| < 1.
std::pair<double, double> z_unconditional(const DiscreteVarParams &params);

// Simulated paths, stored time-major: values for a fixed quarter are
// contiguous across paths, which is the access pattern of the strategy
// search hot loop.
struct PathBatch {
  std::int64_t n_paths = 0;
  std::int32_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<double> excess_log_returns; // [t * n_paths + i], t < horizon
  std::vector<double> predictor;          // [t * n_paths + i], t <= horizon

  double ret(std::int64_t path, std::int32_t t) const {
    return excess_log_returns[static_cast<std::size_t>(t) * n_paths + path];
  }
  double z(std::int64_t path, std::int32_t t) const {
    return predictor[static_cast<std::size_t>(t) * n_paths + path];
  }
};

struct SimulateOptions {
  // Replaces both innovations by exactly zero; the recursion then runs
  // deterministically (test hook for the noiseless limit).
  bool zero_innovations = false;
};

// Simulates n_paths paths of `horizon` quarters from the initial predictor
// value z0. Path i draws from SplitMix64 substream i of `seed` (two normals
// per quarter, return innovation first), so the output is bit-identical for
// a given (params, n_paths, horizon, z0, seed) regardless of scheduling.
PathBatch simulate_paths(const DiscreteVarParams &params, std::int64_t n_paths,
                         std::int32_t horizon, double z0, std::uint64_t seed,
                         const SimulateOptions &options = {});

// Debug dump: header row, then one row per (path, quarter) record.
void write_csv(const PathBatch &batch, std::ostream &os);

} // namespace ltport
