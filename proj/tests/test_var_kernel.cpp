#include <doctest.h>

#include <cmath>
#include <sstream>

#include "core/var_model.hpp"

using namespace ltport;

TEST_CASE("default parameters validate") {
  const DiscreteVarParams p = default_var_params();
  CHECK_NOTHROW(validate(p));
  CHECK(p.rf_quarterly == doctest::Approx(0.015));
  CHECK(p.b_z == doctest::Approx(0.958));
}

TEST_CASE("validation rejects broken parameter sets") {
  DiscreteVarParams p = default_var_params();

  SUBCASE("nonstationary predictor") {
    p.b_z = 1.0;
    CHECK_THROWS_AS(validate(p), InvalidParams);
    p.b_z = 1.3;
    CHECK_THROWS_AS(validate(p), InvalidParams);
  }
  SUBCASE("negative variances") {
    p.var_r = -1e-6;
    CHECK_THROWS_AS(validate(p), InvalidParams);
  }
  SUBCASE("covariance violating Cauchy-Schwarz") {
    p.cov_rz = -2.0 * std::sqrt(p.var_r * p.var_z);
    CHECK_THROWS_AS(validate(p), InvalidParams);
  }
  SUBCASE("non-finite input") {
    p.a_r = std::nan("");
    CHECK_THROWS_AS(validate(p), InvalidParams);
  }
}

TEST_CASE("stationary predictor moments") {
  const DiscreteVarParams p = default_var_params();
  const auto [mean, variance] = z_unconditional(p);
  // a_z / (1 - b_z) and var_z / (1 - b_z^2) at the built-in estimates.
  CHECK(mean == doctest::Approx(-3.690476190476187).epsilon(1e-12));
  CHECK(variance == doctest::Approx(0.05958461014640783).epsilon(1e-12));
}

TEST_CASE("zero-innovation simulation follows the deterministic recursion") {
  const DiscreteVarParams p = default_var_params();
  SimulateOptions opts;
  opts.zero_innovations = true;
  const double z0 = -3.0;
  const PathBatch batch = simulate_paths(p, 3, 8, z0, 99, opts);

  double z = z0;
  for (std::int32_t t = 0; t < batch.horizon; ++t) {
    const double expected_ret = p.a_r + p.b_r * z;
    const double z_next = p.a_z + p.b_z * z;
    for (std::int64_t i = 0; i < batch.n_paths; ++i) {
      CHECK(batch.ret(i, t) == expected_ret);
      CHECK(batch.z(i, t) == z);
      CHECK(batch.z(i, t + 1) == z_next);
    }
    z = z_next;
  }
}

TEST_CASE("simulation is deterministic in the seed") {
  const DiscreteVarParams p = default_var_params();
  const PathBatch a = simulate_paths(p, 50, 12, -3.7, 1234);
  const PathBatch b = simulate_paths(p, 50, 12, -3.7, 1234);
  const PathBatch c = simulate_paths(p, 50, 12, -3.7, 1235);
  CHECK(a.excess_log_returns == b.excess_log_returns);
  CHECK(a.predictor == b.predictor);
  CHECK(a.excess_log_returns != c.excess_log_returns);
}

TEST_CASE("per-path substreams are independent of batch size") {
  // Path i must draw the same numbers whether simulated alone or as part
  // of a larger batch.
  const DiscreteVarParams p = default_var_params();
  const PathBatch big = simulate_paths(p, 20, 6, -3.7, 42);
  const PathBatch small = simulate_paths(p, 5, 6, -3.7, 42);
  for (std::int64_t i = 0; i < small.n_paths; ++i)
    for (std::int32_t t = 0; t < 6; ++t) {
      CHECK(big.ret(i, t) == small.ret(i, t));
      CHECK(big.z(i, t + 1) == small.z(i, t + 1));
    }
}

TEST_CASE("simulated moments approach the model moments") {
  const DiscreteVarParams p = default_var_params();
  const auto [zmean, zvar] = z_unconditional(p);
  const std::int64_t n = 200000;
  const PathBatch batch = simulate_paths(p, n, 2, zmean, 7);

  // One-step innovations around the conditional means.
  double s_r = 0.0, s_rr = 0.0, s_z = 0.0, s_zz = 0.0, s_rz = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double er = batch.ret(i, 0) - (p.a_r + p.b_r * zmean);
    const double ez = batch.z(i, 1) - (p.a_z + p.b_z * zmean);
    s_r += er;
    s_z += ez;
    s_rr += er * er;
    s_zz += ez * ez;
    s_rz += er * ez;
  }
  const double nd = static_cast<double>(n);
  CHECK(std::fabs(s_r / nd) < 4.0 * std::sqrt(p.var_r / nd));
  CHECK(std::fabs(s_z / nd) < 4.0 * std::sqrt(p.var_z / nd));
  CHECK(s_rr / nd == doctest::Approx(p.var_r).epsilon(0.02));
  CHECK(s_zz / nd == doctest::Approx(p.var_z).epsilon(0.02));
  CHECK(s_rz / nd == doctest::Approx(p.cov_rz).epsilon(0.02));
}

TEST_CASE("csv dump shape") {
  const DiscreteVarParams p = default_var_params();
  const PathBatch batch = simulate_paths(p, 2, 3, -3.7, 5);
  std::ostringstream os;
  write_csv(batch, os);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  REQUIRE(std::getline(is, line));
  CHECK(line == "path,quarter,excess_log_return,predictor_begin,predictor_end");
  while (std::getline(is, line))
    ++rows;
  CHECK(rows == 2 * 3);
}
