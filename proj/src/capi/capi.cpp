#include "ltport/ltport.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "../core/aggregation.hpp"
#include "../core/closed_form.hpp"
#include "../core/strategy_search.hpp"
#include "../core/var_model.hpp"

namespace {

thread_local std::string g_last_error;

lt_status record_error(lt_status status, const char *message) {
  g_last_error = message;
  return status;
}

// Maps the core exception hierarchy onto status codes.
lt_status translate_current_exception() {
  try {
    throw;
  } catch (const ltport::NonNormalRegime &e) {
    return record_error(LT_ERR_NON_NORMAL_REGIME, e.what());
  } catch (const ltport::SingularDenominator &e) {
    return record_error(LT_ERR_SINGULAR, e.what());
  } catch (const ltport::DegenerateDistribution &e) {
    return record_error(LT_ERR_DEGENERATE, e.what());
  } catch (const ltport::BudgetExceeded &e) {
    return record_error(LT_ERR_BUDGET_EXCEEDED, e.what());
  } catch (const ltport::InvalidParams &e) {
    return record_error(LT_ERR_INVALID_PARAMS, e.what());
  } catch (const std::invalid_argument &e) {
    return record_error(LT_ERR_BAD_ARGUMENT, e.what());
  } catch (const std::domain_error &e) {
    return record_error(LT_ERR_BAD_ARGUMENT, e.what());
  } catch (const std::bad_alloc &e) {
    return record_error(LT_ERR_INTERNAL, e.what());
  } catch (const std::exception &e) {
    return record_error(LT_ERR_INTERNAL, e.what());
  } catch (...) {
    return record_error(LT_ERR_INTERNAL, "unknown error");
  }
}

template <typename Fn> lt_status guarded(Fn &&fn) {
  try {
    fn();
    return LT_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

ltport::DiscreteVarParams to_core(const lt_var_params &p) {
  ltport::DiscreteVarParams core;
  core.rf_quarterly = p.rf_quarterly;
  core.a_r = p.a_r;
  core.b_r = p.b_r;
  core.a_z = p.a_z;
  core.b_z = p.b_z;
  core.var_r = p.var_r;
  core.var_z = p.var_z;
  core.cov_rz = p.cov_rz;
  return core;
}

} // namespace

struct lt_model {
  ltport::DiscreteVarParams params;
  ltport::ContinuousParams continuous;
  ltport::XDistribution x_dist;
};

struct lt_solution {
  ltport::ContinuousParams continuous;
  ltport::RiccatiCoefficients coeffs;
};

struct lt_paths {
  ltport::PathBatch batch;
};

struct lt_search_result {
  ltport::SearchResult result;
};

extern "C" {

const char *lt_version(void) { return "1.0.0"; }

const char *lt_last_error(void) { return g_last_error.c_str(); }

lt_var_params lt_var_params_default(void) {
  const ltport::DiscreteVarParams p = ltport::default_var_params();
  return {p.rf_quarterly, p.a_r, p.b_r, p.a_z,
          p.b_z,          p.var_r, p.var_z, p.cov_rz};
}

lt_model *lt_model_create(const lt_var_params *params, lt_status *status) {
  lt_status local = LT_OK;
  lt_status &st = status ? *status : local;
  if (!params) {
    st = record_error(LT_ERR_BAD_ARGUMENT, "params must not be null");
    return nullptr;
  }
  lt_model *model = nullptr;
  st = guarded([&] {
    auto owned = std::make_unique<lt_model>();
    owned->params = to_core(*params);
    ltport::validate(owned->params);
    owned->continuous = ltport::recover_continuous(owned->params);
    owned->x_dist = ltport::x_distribution(owned->params);
    model = owned.release();
  });
  return model;
}

void lt_model_destroy(lt_model *model) { delete model; }

lt_status lt_model_params(const lt_model *model, lt_var_params *out) {
  if (!model || !out)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  const ltport::DiscreteVarParams &p = model->params;
  *out = {p.rf_quarterly, p.a_r, p.b_r, p.a_z,
          p.b_z,          p.var_r, p.var_z, p.cov_rz};
  return LT_OK;
}

lt_status lt_model_continuous(const lt_model *model,
                              lt_continuous_params *out) {
  if (!model || !out)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  const ltport::ContinuousParams &c = model->continuous;
  *out = {c.r, c.theta, c.kappa, c.sigma, c.zeta, c.rho};
  return LT_OK;
}

lt_status lt_model_z_unconditional(const lt_model *model, double *mean,
                                   double *variance) {
  if (!model || !mean || !variance)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    const auto [m, v] = ltport::z_unconditional(model->params);
    *mean = m;
    *variance = v;
  });
}

lt_status lt_model_x_distribution(const lt_model *model, double *mean,
                                  double *variance) {
  if (!model || !mean || !variance)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  *mean = model->x_dist.mean;
  *variance = model->x_dist.variance;
  return LT_OK;
}

lt_status lt_model_x_percentile(const lt_model *model, double p, double *out) {
  if (!model || !out)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] { *out = ltport::x_percentile(model->x_dist, p); });
}

lt_status lt_model_z_to_x(const lt_model *model, double z, double *x) {
  if (!model || !x)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] { *x = ltport::z_to_x(model->params, z); });
}

lt_status lt_model_x_to_z(const lt_model *model, double x, double *z) {
  if (!model || !z)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] { *z = ltport::x_to_z(model->params, x); });
}

lt_status lt_model_exact_moments(const lt_model *model, double dt,
                                 lt_exact_moments *out) {
  if (!model || !out)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    const ltport::ExactMoments m =
        ltport::exact_moments(model->continuous, dt);
    out->var_x = m.var_x;
    out->cov_x_return = m.cov_x_return;
    out->var_return = m.var_return;
    std::memcpy(out->transition, m.transition.data(), sizeof out->transition);
    std::memcpy(out->intercept, m.intercept.data(), sizeof out->intercept);
  });
}

lt_solution *lt_solution_create(const lt_model *model, double gamma,
                                lt_status *status) {
  lt_status local = LT_OK;
  lt_status &st = status ? *status : local;
  if (!model) {
    st = record_error(LT_ERR_BAD_ARGUMENT, "model must not be null");
    return nullptr;
  }
  lt_solution *solution = nullptr;
  st = guarded([&] {
    auto owned = std::make_unique<lt_solution>();
    owned->continuous = model->continuous;
    if (gamma == 1.0) {
      // Logarithmic branch: C1 = C2 = 0 for every tau.
      owned->coeffs.gamma = 1.0;
      owned->coeffs.a = model->continuous.zeta * model->continuous.zeta;
      owned->coeffs.b = -2.0 * model->continuous.kappa;
      owned->coeffs.c = 0.0;
      owned->coeffs.discriminant = owned->coeffs.b * owned->coeffs.b;
      owned->coeffs.delta = -owned->coeffs.b;
    } else {
      owned->coeffs = ltport::riccati_coefficients(model->continuous, gamma);
    }
    solution = owned.release();
  });
  return solution;
}

void lt_solution_destroy(lt_solution *solution) { delete solution; }

lt_status lt_solution_coefficients(const lt_solution *solution, double *a,
                                   double *b, double *c,
                                   double *discriminant) {
  if (!solution)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  if (a)
    *a = solution->coeffs.a;
  if (b)
    *b = solution->coeffs.b;
  if (c)
    *c = solution->coeffs.c;
  if (discriminant)
    *discriminant = solution->coeffs.discriminant;
  return LT_OK;
}

lt_status lt_solution_c1(const lt_solution *solution, double tau, double *out) {
  if (!solution || !out)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    *out = ltport::c1_at(solution->coeffs, solution->continuous, tau);
  });
}

lt_status lt_solution_c2(const lt_solution *solution, double tau, double *out) {
  if (!solution || !out)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] { *out = ltport::c2_at(solution->coeffs, tau); });
}

lt_status lt_solution_allocation(const lt_solution *solution, double x,
                                 double tau, lt_allocation *out) {
  if (!solution || !out)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    ltport::Preferences prefs;
    prefs.gamma = solution->coeffs.gamma;
    prefs.horizon_T = tau;
    const ltport::AllocationDecomposition d =
        ltport::allocation(solution->continuous, prefs, x, tau);
    *out = {d.myopic, d.hedging, d.total, d.constrained, d.c1, d.c2};
  });
}

lt_paths *lt_paths_simulate(const lt_model *model, int64_t n_paths,
                            int32_t horizon, double z0, uint64_t seed,
                            lt_status *status) {
  lt_status local = LT_OK;
  lt_status &st = status ? *status : local;
  if (!model) {
    st = record_error(LT_ERR_BAD_ARGUMENT, "model must not be null");
    return nullptr;
  }
  lt_paths *paths = nullptr;
  st = guarded([&] {
    auto owned = std::make_unique<lt_paths>();
    owned->batch =
        ltport::simulate_paths(model->params, n_paths, horizon, z0, seed);
    paths = owned.release();
  });
  return paths;
}

void lt_paths_destroy(lt_paths *paths) { delete paths; }

int64_t lt_paths_count(const lt_paths *paths) {
  return paths ? paths->batch.n_paths : 0;
}

int32_t lt_paths_horizon(const lt_paths *paths) {
  return paths ? paths->batch.horizon : 0;
}

double lt_paths_excess_return(const lt_paths *paths, int64_t path, int32_t t) {
  return paths->batch.ret(path, t);
}

double lt_paths_predictor(const lt_paths *paths, int64_t path, int32_t t) {
  return paths->batch.z(path, t);
}

lt_status lt_paths_write_csv(const lt_paths *paths, const char *filename) {
  if (!paths || !filename)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  std::ofstream os(filename);
  if (!os)
    return record_error(LT_ERR_IO, "cannot open file for writing");
  ltport::write_csv(paths->batch, os);
  return os ? LT_OK : record_error(LT_ERR_IO, "write failed");
}

lt_search_result *lt_search_run(const lt_paths *paths, const double *grid,
                                size_t n_grid, double gamma,
                                double rf_quarterly, uint64_t budget,
                                int n_threads, lt_status *status) {
  lt_status local = LT_OK;
  lt_status &st = status ? *status : local;
  if (!paths || !grid || n_grid == 0) {
    st = record_error(LT_ERR_BAD_ARGUMENT, "paths and grid must be provided");
    return nullptr;
  }
  lt_search_result *result = nullptr;
  st = guarded([&] {
    ltport::SearchOptions options;
    if (budget != 0)
      options.budget = budget;
    options.n_threads = n_threads;
    auto owned = std::make_unique<lt_search_result>();
    owned->result = ltport::exhaustive_search(
        paths->batch, std::vector<double>(grid, grid + n_grid), gamma,
        rf_quarterly, options);
    result = owned.release();
  });
  return result;
}

void lt_search_result_destroy(lt_search_result *result) { delete result; }

lt_status lt_search_best(const lt_search_result *result, double *seq,
                         size_t seq_len) {
  if (!result || !seq)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  const std::vector<double> &best = result->result.best.sequence;
  if (seq_len < best.size())
    return record_error(LT_ERR_BAD_ARGUMENT, "sequence buffer too small");
  std::memcpy(seq, best.data(), best.size() * sizeof(double));
  return LT_OK;
}

double lt_search_expected_utility(const lt_search_result *result) {
  return result->result.expected_utility;
}

uint64_t lt_search_evaluations(const lt_search_result *result) {
  return result->result.n_strategies_evaluated;
}

size_t lt_search_tie_count(const lt_search_result *result) {
  return result->result.ties.size();
}

lt_status lt_strategy_utility(const lt_paths *paths, const double *seq,
                              size_t seq_len, double gamma,
                              double rf_quarterly, double *out) {
  if (!paths || !seq || !out)
    return record_error(LT_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    ltport::GridStrategy strategy;
    strategy.sequence.assign(seq, seq + seq_len);
    *out = ltport::expected_crra_utility(paths->batch, strategy, gamma,
                                         rf_quarterly);
  });
}

} // extern "C"
