/* ltport -- long-horizon dynamic portfolio choice with a mean-reverting
 * Sharpe ratio.
 *
 * C API of the shared library. All functions are thread-safe as long as a
 * given handle is not destroyed while in use. Handles are opaque; errors are
 * reported through lt_status codes, with a human-readable message available
 * from lt_last_error() (thread-local).
 */
#ifndef LTPORT_H
#define LTPORT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lt_status {
  LT_OK = 0,
  LT_ERR_INVALID_PARAMS = 1,  /* a model invariant is violated */
  LT_ERR_BAD_ARGUMENT = 2,    /* null pointer, bad range, bad grid, ... */
  LT_ERR_NON_NORMAL_REGIME = 3, /* Riccati discriminant D <= 0 */
  LT_ERR_SINGULAR = 4,        /* coefficient denominator below tolerance */
  LT_ERR_DEGENERATE = 5,      /* degenerate distribution (zero variance) */
  LT_ERR_BUDGET_EXCEEDED = 6, /* strategy count above the configured budget */
  LT_ERR_IO = 7,
  LT_ERR_INTERNAL = 8
} lt_status;

/* Discrete-time restricted VAR(1):
 *   excess log return: dlnP_{t+1} - rf = a_r + b_r z_t + eps_r
 *   predictor:         z_{t+1}         = a_z + b_z z_t + eps_z
 * with jointly Gaussian innovations of covariance
 * [[var_r, cov_rz], [cov_rz, var_z]]. One period is one quarter. */
typedef struct lt_var_params {
  double rf_quarterly;
  double a_r;
  double b_r;
  double a_z;
  double b_z;
  double var_r;
  double var_z;
  double cov_rz;
} lt_var_params;

/* Continuous-time opportunity set: risk-free rate r, Sharpe-ratio process
 * dX = kappa (theta - X) dt + zeta dB_x, return volatility sigma, and
 * instantaneous innovation correlation rho. Units: per quarter. */
typedef struct lt_continuous_params {
  double r;
  double theta;
  double kappa;
  double sigma;
  double zeta;
  double rho;
} lt_continuous_params;

/* Optimal allocation at one (X, tau, gamma), split into its components.
 * total = myopic + hedging; constrained = total clipped to [0, 1]. */
typedef struct lt_allocation {
  double myopic;
  double hedging;
  double total;
  double constrained;
  double c1; /* coefficient values at the queried time-to-go */
  double c2;
} lt_allocation;

/* Exact-discretization moments of the continuous system over a step dt.
 * State ordering is (excess log return, X); transition is row-major 2x2. */
typedef struct lt_exact_moments {
  double var_x;
  double cov_x_return;
  double var_return;
  double transition[4];
  double intercept[2];
} lt_exact_moments;

typedef struct lt_model lt_model;
typedef struct lt_solution lt_solution;
typedef struct lt_paths lt_paths;
typedef struct lt_search_result lt_search_result;

const char *lt_version(void);

/* Message describing the most recent error on this thread. */
const char *lt_last_error(void);

/* Built-in quarterly U.S. stock index / dividend-yield VAR estimates used
 * throughout the library's reference outputs. */
lt_var_params lt_var_params_default(void);

/* ---- model -------------------------------------------------------------- */

/* Validates the VAR parameters and recovers the continuous-time parameters.
 * Returns NULL with *status set on failure. */
lt_model *lt_model_create(const lt_var_params *params, lt_status *status);
void lt_model_destroy(lt_model *model);

lt_status lt_model_params(const lt_model *model, lt_var_params *out);
lt_status lt_model_continuous(const lt_model *model, lt_continuous_params *out);

/* Stationary AR(1) moments of the predictor z. */
lt_status lt_model_z_unconditional(const lt_model *model, double *mean,
                                   double *variance);

/* Unconditional distribution of the Sharpe ratio X. */
lt_status lt_model_x_distribution(const lt_model *model, double *mean,
                                  double *variance);

/* p-th percentile of the unconditional X distribution, p in (0, 100). */
lt_status lt_model_x_percentile(const lt_model *model, double p, double *out);

/* Affine maps between the predictor z and the Sharpe ratio X. */
lt_status lt_model_z_to_x(const lt_model *model, double z, double *x);
lt_status lt_model_x_to_z(const lt_model *model, double x, double *z);

lt_status lt_model_exact_moments(const lt_model *model, double dt,
                                 lt_exact_moments *out);

/* ---- closed-form solution ----------------------------------------------- */

/* Riccati coefficients for one risk aversion gamma > 0. Fails with
 * LT_ERR_NON_NORMAL_REGIME when the discriminant is not positive. */
lt_solution *lt_solution_create(const lt_model *model, double gamma,
                                lt_status *status);
void lt_solution_destroy(lt_solution *solution);

lt_status lt_solution_coefficients(const lt_solution *solution, double *a,
                                   double *b, double *c, double *discriminant);

/* C1/C2 at time-to-go tau >= 0 (quarters). */
lt_status lt_solution_c1(const lt_solution *solution, double tau, double *out);
lt_status lt_solution_c2(const lt_solution *solution, double tau, double *out);

lt_status lt_solution_allocation(const lt_solution *solution, double x,
                                 double tau, lt_allocation *out);

/* ---- path simulation ---------------------------------------------------- */

/* Simulates n_paths VAR(1) paths of `horizon` quarters starting at z0.
 * Deterministic given the seed; path i uses an independent substream so the
 * output does not depend on evaluation order. */
lt_paths *lt_paths_simulate(const lt_model *model, int64_t n_paths,
                            int32_t horizon, double z0, uint64_t seed,
                            lt_status *status);
void lt_paths_destroy(lt_paths *paths);

int64_t lt_paths_count(const lt_paths *paths);
int32_t lt_paths_horizon(const lt_paths *paths);

/* Excess log return over quarter t (0-based, t < horizon) on path i. */
double lt_paths_excess_return(const lt_paths *paths, int64_t path, int32_t t);

/* Predictor value at date t (0 <= t <= horizon; t = 0 is the initial z0). */
double lt_paths_predictor(const lt_paths *paths, int64_t path, int32_t t);

lt_status lt_paths_write_csv(const lt_paths *paths, const char *filename);

/* ---- exhaustive strategy search ----------------------------------------- */

/* Enumerates every open-loop allocation sequence over `grid` (ascending,
 * within [0,1]) and returns the sequence maximizing expected CRRA utility of
 * terminal wealth. Ties break to the lexicographically smallest sequence.
 * budget caps |grid|^horizon (0 selects the default cap of 1e7);
 * n_threads <= 0 selects the hardware concurrency. */
lt_search_result *lt_search_run(const lt_paths *paths, const double *grid,
                                size_t n_grid, double gamma,
                                double rf_quarterly, uint64_t budget,
                                int n_threads, lt_status *status);
void lt_search_result_destroy(lt_search_result *result);

/* Copies the best sequence (one allocation per quarter) into seq, which must
 * hold at least lt_paths_horizon() entries. */
lt_status lt_search_best(const lt_search_result *result, double *seq,
                         size_t seq_len);
double lt_search_expected_utility(const lt_search_result *result);
uint64_t lt_search_evaluations(const lt_search_result *result);
size_t lt_search_tie_count(const lt_search_result *result);

/* Expected CRRA utility of one fixed sequence on the given paths (the same
 * scoring rule the search uses). */
lt_status lt_strategy_utility(const lt_paths *paths, const double *seq,
                              size_t seq_len, double gamma,
                              double rf_quarterly, double *out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LTPORT_H */
