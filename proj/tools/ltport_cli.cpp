// ltport command-line tool: parameter recovery, closed-form allocations,
// reference tables, figure data files, and the brute-force grid search,
// all on top of the shared-library C API.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltport/ltport.h"

namespace {

using nlohmann::json;

constexpr int kExitConfigError = 2;
constexpr int kExitBudgetError = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(lt_status status) {
  if (status == LT_OK)
    return;
  if (status == LT_ERR_BUDGET_EXCEEDED)
    throw BudgetError(lt_last_error());
  throw ConfigError(lt_last_error());
}

struct ModelDeleter {
  void operator()(lt_model *m) const { lt_model_destroy(m); }
};
struct SolutionDeleter {
  void operator()(lt_solution *s) const { lt_solution_destroy(s); }
};
struct PathsDeleter {
  void operator()(lt_paths *p) const { lt_paths_destroy(p); }
};
struct SearchDeleter {
  void operator()(lt_search_result *r) const { lt_search_result_destroy(r); }
};

using ModelPtr = std::unique_ptr<lt_model, ModelDeleter>;
using SolutionPtr = std::unique_ptr<lt_solution, SolutionDeleter>;
using PathsPtr = std::unique_ptr<lt_paths, PathsDeleter>;
using SearchPtr = std::unique_ptr<lt_search_result, SearchDeleter>;

struct RunConfig {
  lt_var_params params = lt_var_params_default();
  std::vector<double> percentiles = {10, 30, 50, 70, 90};
  std::vector<double> gammas = {5, 15};
  std::vector<double> horizons = {10, 20, 30, 40};
  std::string params_file;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  bool raw = false;
};

// Discrete-time benchmark allocations (percent) published for the same VAR
// estimates. Reference data only; this tool does not reproduce the solver
// that generated them. Keyed by (T, gamma), percentiles 10/30/50/70/90.
const std::map<std::pair<int, int>, std::array<double, 5>> kBenchmarkTable = {
    {{10, 5}, {0.0, 13.3, 43.2, 73.1, 100.0}},
    {{10, 15}, {0.0, 4.3, 15.4, 27.0, 44.7}},
    {{20, 5}, {0.0, 24.4, 57.2, 89.7, 100.0}},
    {{20, 15}, {0.0, 10.7, 25.1, 40.4, 63.2}},
    {{30, 5}, {0.0, 32.8, 68.4, 100.0, 100.0}},
    {{30, 15}, {0.0, 17.5, 35.2, 54.0, 80.7}},
    {{40, 5}, {0.0, 38.8, 77.6, 100.0, 100.0}},
    {{40, 15}, {0.0, 24.1, 44.5, 65.7, 94.6}},
};

void load_params_file(RunConfig &config) {
  if (config.params_file.empty())
    return;
  std::ifstream is(config.params_file);
  if (!is)
    throw ConfigError("cannot open params file: " + config.params_file);
  json j;
  try {
    is >> j;
  } catch (const json::parse_error &e) {
    throw ConfigError("malformed JSON in " + config.params_file + ": " +
                      e.what());
  }
  auto field = [&](const char *name) {
    if (!j.contains(name))
      throw ConfigError("params file missing field: " + std::string(name));
    if (!j[name].is_number())
      throw ConfigError("params field is not a number: " + std::string(name));
    return j[name].get<double>();
  };
  config.params.rf_quarterly = field("rf_quarterly");
  config.params.a_r = field("a_r");
  config.params.b_r = field("b_r");
  config.params.a_z = field("a_z");
  config.params.b_z = field("b_z");
  config.params.var_r = field("var_r");
  config.params.var_z = field("var_z");
  config.params.cov_rz = field("cov_rz");
}

ModelPtr make_model(const RunConfig &config) {
  lt_status status = LT_OK;
  ModelPtr model(lt_model_create(&config.params, &status));
  check(status);
  return model;
}

SolutionPtr make_solution(const lt_model *model, double gamma) {
  lt_status status = LT_OK;
  SolutionPtr solution(lt_solution_create(model, gamma, &status));
  check(status);
  return solution;
}

double percentile_x(const lt_model *model, double p) {
  double x = 0.0;
  check(lt_model_x_percentile(model, p, &x));
  return x;
}

// Paper-style display rounding: percent, one decimal, half away from zero.
double round1(double percent) { return std::round(percent * 10.0) / 10.0; }

std::string fmt1(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", round1(percent));
  return buf;
}

std::ofstream open_output(const RunConfig &config, const std::string &name) {
  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path path =
      std::filesystem::path(config.output_dir) / name;
  std::ofstream os(path);
  if (!os)
    throw ConfigError("cannot open output file: " + path.string());
  return os;
}

void write_xy(std::ostream &os, double x, double y) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g %.6g\n", x, y);
  os << buf;
}

// Expected Sharpe-ratio path: z decays geometrically to its stationary
// mean, X follows by the affine map.
std::vector<double> expected_x_path(const lt_model *model, double z0,
                                    int horizon) {
  lt_var_params p;
  check(lt_model_params(model, &p));
  double z_mean = 0.0, z_var = 0.0;
  check(lt_model_z_unconditional(model, &z_mean, &z_var));
  std::vector<double> xs(horizon + 1);
  double z = z0;
  for (int t = 0; t <= horizon; ++t) {
    check(lt_model_z_to_x(model, z, &xs[t]));
    z = z_mean + p.b_z * (z - z_mean);
  }
  return xs;
}

int cmd_recover(const RunConfig &config) {
  ModelPtr model = make_model(config);
  lt_continuous_params c;
  check(lt_model_continuous(model.get(), &c));
  const lt_var_params &p = config.params;

  auto row = [&](const char *ln, double lv, const char *rn, double rv) {
    std::printf("  %-8s %10.4f    %-8s %10.4f\n", ln, lv, rn, rv);
  };
  std::printf("%-25s%s\n", "Discrete-time input", "Continuous-time output");
  row("rf", p.rf_quarterly, "r", c.r);
  row("a_r", p.a_r, "theta", c.theta);
  row("b_r", p.b_r, "kappa", c.kappa);
  row("a_z", p.a_z, "sigma", c.sigma);
  row("b_z", p.b_z, "zeta", c.zeta);
  row("var_r", p.var_r, "rho", c.rho);
  std::printf("  %-8s %10.4f\n", "var_z", p.var_z);
  std::printf("  %-8s %10.4f\n", "cov_rz", p.cov_rz);
  return 0;
}

int cmd_percentiles(const RunConfig &config) {
  ModelPtr model = make_model(config);
  double mean = 0.0, variance = 0.0;
  check(lt_model_x_distribution(model.get(), &mean, &variance));
  std::printf("X ~ N(mean %.6g, std %.6g)\n", mean, std::sqrt(variance));
  for (const double p : config.percentiles)
    std::printf("  X_(%g) = %.6g\n", p, percentile_x(model.get(), p));
  return 0;
}

struct AllocateArgs {
  double gamma = 5.0;
  double horizon = 10.0;
  double x = 0.0;
  double x_percentile = 50.0;
  bool has_x = false;
  bool constrained = false;
};

int cmd_allocate(const RunConfig &config, const AllocateArgs &args) {
  ModelPtr model = make_model(config);
  const double x = args.has_x ? args.x
                              : percentile_x(model.get(), args.x_percentile);
  SolutionPtr solution = make_solution(model.get(), args.gamma);
  lt_allocation d;
  check(lt_solution_allocation(solution.get(), x, args.horizon, &d));

  std::printf("gamma %.6g, horizon %.6g quarters, X %.6g\n", args.gamma,
              args.horizon, x);
  if (config.raw) {
    std::printf("  myopic      %.10f\n", d.myopic);
    std::printf("  hedging     %.10f\n", d.hedging);
    std::printf("  total       %.10f\n", d.total);
    std::printf("  constrained %.10f\n", d.constrained);
    std::printf("  C1 %.12g, C2 %.12g\n", d.c1, d.c2);
  } else {
    std::printf("  myopic      %7s %%\n", fmt1(100.0 * d.myopic).c_str());
    std::printf("  hedging     %7s %%\n", fmt1(100.0 * d.hedging).c_str());
    std::printf("  total       %7s %%\n", fmt1(100.0 * d.total).c_str());
    if (args.constrained)
      std::printf("  constrained %7s %%\n",
                  fmt1(100.0 * d.constrained).c_str());
  }
  return 0;
}

int cmd_table(const RunConfig &config, int id) {
  ModelPtr model = make_model(config);
  std::vector<double> xs;
  for (const double p : config.percentiles)
    xs.push_back(percentile_x(model.get(), p));

  std::ofstream csv = open_output(
      config, id == 2 ? "table2.csv" : "table3.csv");
  csv << "T,row";
  for (const double g : config.gammas)
    for (const double p : config.percentiles)
      csv << ",g" << g << "_p" << p;
  csv << "\n";

  auto print_header = [&] {
    std::printf("%4s %-4s", "T", "");
    for (const double g : config.gammas)
      for (const double p : config.percentiles)
        std::printf(" %6s", ("g" + std::to_string(static_cast<int>(g)) + "p" +
                             std::to_string(static_cast<int>(p)))
                                .c_str());
    std::printf("\n");
  };
  print_header();

  auto emit_row = [&](double T, const char *label,
                      const std::vector<std::string> &cells) {
    csv << T << ',' << label;
    std::printf("%4g %-4s", T, label);
    for (const std::string &cell : cells) {
      csv << ',' << cell;
      std::printf(" %6s", cell.c_str());
    }
    csv << "\n";
    std::printf("\n");
  };

  for (const double T : config.horizons) {
    std::vector<std::string> md_cells, hd_cells, lt_cells, gs_cells, d_cells;
    for (const double g : config.gammas) {
      SolutionPtr solution = make_solution(model.get(), g);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        lt_allocation d;
        check(lt_solution_allocation(solution.get(), xs[i], T, &d));
        md_cells.push_back(config.raw ? std::to_string(100.0 * d.myopic)
                                      : fmt1(100.0 * d.myopic));
        hd_cells.push_back(config.raw ? std::to_string(100.0 * d.hedging)
                                      : fmt1(100.0 * d.hedging));
        const double lt = 100.0 * d.constrained;
        lt_cells.push_back(config.raw ? std::to_string(lt) : fmt1(lt));
        const auto it = kBenchmarkTable.find(
            {static_cast<int>(T), static_cast<int>(g)});
        const bool have_ref =
            it != kBenchmarkTable.end() && i < 5 &&
            config.percentiles[i] == std::vector<double>{10, 30, 50,
                                                         70, 90}[i];
        if (have_ref) {
          const double gs = it->second[i];
          gs_cells.push_back(fmt1(gs));
          d_cells.push_back(fmt1(lt - gs));
        } else {
          gs_cells.push_back("n/a");
          d_cells.push_back("n/a");
        }
      }
    }
    if (id == 2) {
      emit_row(T, "MD", md_cells);
      emit_row(T, "HD", hd_cells);
    } else {
      emit_row(T, "LT", lt_cells);
      emit_row(T, "GS", gs_cells);
      emit_row(T, "D", d_cells);
    }
  }
  if (id == 3)
    std::printf("GS rows are published reference values, not reproduced by "
                "this tool; D = LT - GS.\n");
  return 0;
}

struct FigureArgs {
  int id = 1;
  bool with_search = false;
  std::int64_t paths = 100000;
  double gamma = 5.0;
  double horizon = 10.0;
  double x_percentile = 30.0;
};

int cmd_figure(const RunConfig &config, const FigureArgs &args) {
  ModelPtr model = make_model(config);
  lt_continuous_params cont;
  check(lt_model_continuous(model.get(), &cont));

  if (args.id == 1) {
    // Hedging demand vs gamma, one file per horizon, plus the myopic curve;
    // all evaluated at the unconditional mean Sharpe ratio.
    const double x = cont.theta;
    for (const double T : config.horizons) {
      std::ostringstream name;
      name << "explicit-solution-hd-wrt-gamma-" << static_cast<int>(T)
           << ".txt";
      std::ofstream os = open_output(config, name.str());
      for (double g = 1.0; g <= 21.0 + 1e-9; g += 0.1) {
        SolutionPtr solution = make_solution(model.get(), g);
        lt_allocation d;
        check(lt_solution_allocation(solution.get(), x, T, &d));
        write_xy(os, g, d.hedging);
      }
    }
    std::ofstream os = open_output(config, "explicit-solution-md-wrt-gamma.txt");
    for (double g = 1.0; g <= 21.0 + 1e-9; g += 0.1)
      write_xy(os, g, x / (g * cont.sigma));
    std::printf("figure 1 data written to %s\n", config.output_dir.c_str());
    return 0;
  }

  if (args.id == 2) {
    // Constrained allocation vs horizon, one file per (gamma, percentile).
    const double t_max =
        *std::max_element(config.horizons.begin(), config.horizons.end());
    for (const double g : config.gammas) {
      SolutionPtr solution = make_solution(model.get(), g);
      for (const double p : config.percentiles) {
        const double x = percentile_x(model.get(), p);
        char name[80];
        std::snprintf(name, sizeof name, "explicit-solution-wrt-T-%g-%f.txt",
                      g, p / 100.0);
        std::ofstream os = open_output(config, name);
        for (double T = 0.0; T <= t_max + 1e-9; T += 0.25) {
          lt_allocation d;
          check(lt_solution_allocation(solution.get(), x, T, &d));
          write_xy(os, T, 100.0 * d.constrained);
        }
      }
    }
    std::printf("figure 2 data written to %s\n", config.output_dir.c_str());
    return 0;
  }

  // Figure 3: closed-form allocation along the expected Sharpe-ratio path,
  // optionally overlaid with the grid-search staircase.
  const int horizon = static_cast<int>(args.horizon);
  const double x0 = percentile_x(model.get(), args.x_percentile);
  double z0 = 0.0;
  check(lt_model_x_to_z(model.get(), x0, &z0));
  const std::vector<double> xs = expected_x_path(model.get(), z0, horizon);
  SolutionPtr solution = make_solution(model.get(), args.gamma);
  {
    std::ofstream os = open_output(config, "explicit-solution-path.txt");
    for (int t = 0; t <= horizon; ++t) {
      lt_allocation d;
      check(lt_solution_allocation(solution.get(), xs[t],
                                   static_cast<double>(horizon - t), &d));
      write_xy(os, t, d.total);
    }
  }
  if (args.with_search) {
    lt_status status = LT_OK;
    PathsPtr paths(lt_paths_simulate(model.get(), args.paths, horizon, z0,
                                     config.seed, &status));
    check(status);
    const std::vector<double> grid = {0.05, 0.10, 0.15, 0.20, 0.25};
    SearchPtr search(lt_search_run(paths.get(), grid.data(), grid.size(),
                                   args.gamma, config.params.rf_quarterly, 0,
                                   0, &status));
    check(status);
    std::vector<double> seq(horizon);
    check(lt_search_best(search.get(), seq.data(), seq.size()));
    std::ofstream os = open_output(config, "grid-search-path.txt");
    for (int t = 0; t < horizon; ++t)
      write_xy(os, t, seq[t]);
    write_xy(os, horizon, seq[horizon - 1]);
  }
  std::printf("figure 3 data written to %s\n", config.output_dir.c_str());
  return 0;
}

struct SearchArgs {
  std::string grid = "0.05,0.10,0.15,0.20,0.25";
  std::int64_t paths = 100000;
  double gamma = 5.0;
  int horizon = 10;
  double x_percentile = 30.0;
  std::uint64_t budget = 0; // 0: library default
  int threads = 0;
};

std::vector<double> parse_grid(const std::string &text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception &) {
      throw ConfigError("bad grid entry: " + item);
    }
  }
  if (grid.empty())
    throw ConfigError("grid must not be empty");
  return grid;
}

int cmd_search(const RunConfig &config, const SearchArgs &args) {
  if (args.paths < 1)
    throw ConfigError("--paths must be at least 1");
  ModelPtr model = make_model(config);
  const std::vector<double> grid = parse_grid(args.grid);
  const double x0 = percentile_x(model.get(), args.x_percentile);
  double z0 = 0.0;
  check(lt_model_x_to_z(model.get(), x0, &z0));

  std::printf("open-loop grid search: expected CRRA utility of terminal "
              "wealth over all simulated paths\n");
  std::printf("gamma %.6g, horizon %d, X0 %.6g (percentile %g), paths %lld, "
              "seed %llu\n",
              args.gamma, args.horizon, x0, args.x_percentile,
              static_cast<long long>(args.paths),
              static_cast<unsigned long long>(config.seed));

  lt_status status = LT_OK;
  PathsPtr paths(lt_paths_simulate(model.get(), args.paths, args.horizon, z0,
                                   config.seed, &status));
  check(status);

  const auto t0 = std::chrono::steady_clock::now();
  SearchPtr search(lt_search_run(paths.get(), grid.data(), grid.size(),
                                 args.gamma, config.params.rf_quarterly,
                                 args.budget, args.threads, &status));
  check(status);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::vector<double> seq(args.horizon);
  check(lt_search_best(search.get(), seq.data(), seq.size()));
  const double utility = lt_search_expected_utility(search.get());

  // Closed-form allocation along the expected Sharpe-ratio path, for
  // side-by-side comparison with the open-loop staircase.
  const std::vector<double> xs =
      expected_x_path(model.get(), z0, args.horizon);
  SolutionPtr solution = make_solution(model.get(), args.gamma);
  std::printf("\n%8s %12s %14s\n", "quarter", "best grid", "closed form");
  json staircase = json::array();
  for (int t = 0; t < args.horizon; ++t) {
    lt_allocation d;
    check(lt_solution_allocation(solution.get(), xs[t],
                                 static_cast<double>(args.horizon - t), &d));
    std::printf("%8d %12.2f %14.4f\n", t, seq[t], d.total);
    staircase.push_back(seq[t]);
  }
  std::printf("\nexpected utility %.12g over %llu strategies (%zu ties), "
              "%.2f s\n",
              utility,
              static_cast<unsigned long long>(
                  lt_search_evaluations(search.get())),
              lt_search_tie_count(search.get()), elapsed);

  json report;
  report["gamma"] = args.gamma;
  report["horizon"] = args.horizon;
  report["x_percentile"] = args.x_percentile;
  report["x0"] = x0;
  report["z0"] = z0;
  report["n_paths"] = args.paths;
  report["seed"] = config.seed;
  report["grid"] = grid;
  report["best_sequence"] = staircase;
  report["expected_utility"] = utility;
  report["n_strategies_evaluated"] = lt_search_evaluations(search.get());
  report["n_ties"] = lt_search_tie_count(search.get());
  report["wall_seconds"] = elapsed;
  std::ofstream os = open_output(config, "search_report.json");
  os << report.dump(2) << "\n";

  std::ofstream stairs = open_output(config, "grid-search-path.txt");
  for (int t = 0; t < args.horizon; ++t)
    write_xy(stairs, t, seq[t]);
  write_xy(stairs, args.horizon, seq[args.horizon - 1]);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  RunConfig config;
  CLI::App app{"Long-horizon dynamic portfolio choice with a mean-reverting "
               "Sharpe ratio"};
  app.require_subcommand(1);
  app.add_option("--params", config.params_file,
                 "JSON file overriding the built-in VAR estimates");
  app.add_option("--seed", config.seed, "RNG seed for simulations");
  app.add_option("--out", config.output_dir, "output directory");
  app.add_flag("--raw", config.raw, "full-precision output, no rounding");

  app.add_subcommand("recover",
                     "recover continuous-time parameters from the VAR");
  auto *percentiles =
      app.add_subcommand("percentiles", "unconditional Sharpe-ratio percentiles");
  percentiles->add_option("--percentiles", config.percentiles,
                          "percentile list");

  AllocateArgs alloc_args;
  auto *allocate = app.add_subcommand("allocate", "closed-form allocation");
  allocate->add_option("--gamma", alloc_args.gamma, "risk aversion");
  allocate->add_option("--horizon", alloc_args.horizon,
                       "time to go, quarters");
  auto *x_opt = allocate->add_option("--x", alloc_args.x, "Sharpe ratio");
  allocate->add_option("--x-percentile", alloc_args.x_percentile,
                       "Sharpe ratio percentile")
      ->excludes(x_opt);
  allocate->add_flag("--constrained", alloc_args.constrained,
                     "also print the [0,1]-clipped total");

  int table_id = 2;
  auto *table = app.add_subcommand("table", "reference tables");
  table->add_option("--id", table_id, "table id (2 or 3)")
      ->check(CLI::IsMember({2, 3}));
  table->add_option("--gammas", config.gammas, "risk aversions");
  table->add_option("--horizons", config.horizons, "horizons (quarters)");
  table->add_option("--percentiles", config.percentiles, "percentiles");

  FigureArgs fig_args;
  auto *figure = app.add_subcommand("figure", "plot data files");
  figure->add_option("--id", fig_args.id, "figure id (1, 2 or 3)")
      ->check(CLI::IsMember({1, 2, 3}));
  figure->add_flag("--with-search", fig_args.with_search,
                   "overlay the grid-search staircase (figure 3)");
  figure->add_option("--paths", fig_args.paths, "paths for --with-search");
  figure->add_option("--gamma", fig_args.gamma, "risk aversion (figure 3)");
  figure->add_option("--horizon", fig_args.horizon, "horizon (figure 3)");
  figure->add_option("--x-percentile", fig_args.x_percentile,
                     "initial percentile (figure 3)");

  SearchArgs search_args;
  auto *search = app.add_subcommand("search", "exhaustive grid search");
  search->add_option("--grid", search_args.grid, "comma-separated grid");
  search->add_option("--paths", search_args.paths, "number of paths")
      ->check(CLI::PositiveNumber);
  search->add_option("--gamma", search_args.gamma, "risk aversion");
  search->add_option("--horizon", search_args.horizon, "horizon, quarters")
      ->check(CLI::PositiveNumber);
  search->add_option("--x-percentile", search_args.x_percentile,
                     "initial percentile");
  search->add_option("--budget", search_args.budget,
                     "max strategies (0: library default)");
  search->add_option("--threads", search_args.threads,
                     "worker threads (0: auto)");

  // Let global options (--params, --seed, --out, --raw) appear after the
  // subcommand name as well.
  for (CLI::App *sub :
       app.get_subcommands([](const CLI::App *) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    load_params_file(config);
    if (app.got_subcommand("recover"))
      return cmd_recover(config);
    if (app.got_subcommand(percentiles))
      return cmd_percentiles(config);
    if (app.got_subcommand(allocate)) {
      alloc_args.has_x = x_opt->count() > 0;
      return cmd_allocate(config, alloc_args);
    }
    if (app.got_subcommand(table))
      return cmd_table(config, table_id);
    if (app.got_subcommand(figure))
      return cmd_figure(config, fig_args);
    if (app.got_subcommand(search))
      return cmd_search(config, search_args);
  } catch (const BudgetError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudgetError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
