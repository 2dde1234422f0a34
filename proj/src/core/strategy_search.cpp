#include "strategy_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <thread>

namespace ltport {

namespace {

// Four-lane Kahan summation over elem(0..n-1): lane j accumulates elements
// 4k + j, lane partials are combined in lane order. The shape is fixed, so
// the result is independent of how the surrounding traversal is scheduled,
// and the lanes vectorize.
template <typename E> double lane_kahan_sum(std::size_t n, E elem) {
  double sum[4] = {0.0, 0.0, 0.0, 0.0};
  double comp[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    for (int j = 0; j < 4; ++j) {
      const double y = elem(k + j) - comp[j];
      const double t = sum[j] + y;
      comp[j] = (t - sum[j]) - y;
      sum[j] = t;
    }
  for (; k < n; ++k) {
    const int j = static_cast<int>(k & 3);
    const double y = elem(k) - comp[j];
    const double t = sum[j] + y;
    comp[j] = (t - sum[j]) - y;
    sum[j] = t;
  }
  double total = 0.0;
  double c = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double y = sum[j] - c;
    const double t = total + y;
    c = (t - total) - y;
    total = t;
  }
  return total;
}

inline double portfolio_factor(double alpha, double gross_stock,
                               double gross_rf) {
  return alpha * gross_stock + (1.0 - alpha) * gross_rf;
}

// CRRA scoring in transformed space: since (prod f_t)^(1-gamma) equals
// prod f_t^(1-gamma), each per-quarter factor is powered once up front and
// the wealth recursion becomes a plain product (a plain sum of logs for
// gamma = 1). The evaluator and the tree search share this transform, which
// makes their arithmetic identical operation for operation.
struct Scorer {
  double gamma = 0.0;
  bool log_case = false;
  double inv_scale = 1.0; // 1/(1-gamma); 1 in the log case
  double neutral = 1.0;   // multiplicative or additive identity

  static Scorer make(double gamma) {
    Scorer s;
    s.gamma = gamma;
    s.log_case = gamma == 1.0;
    if (!s.log_case)
      s.inv_scale = 1.0 / (1.0 - gamma);
    s.neutral = s.log_case ? 0.0 : 1.0;
    return s;
  }

  double transform(double factor) const {
    if (!(factor > 0.0))
      throw NonPositiveWealth("non-positive per-quarter gross factor");
    return log_case ? std::log(factor) : std::pow(factor, 1.0 - gamma);
  }

  double accumulate(double state, double tf) const {
    return log_case ? state + tf : state * tf;
  }

  // Mean utility from the transformed state one step before the end and the
  // transformed factors of the final quarter.
  double score_final(const double *state, const double *tf_last,
                     std::size_t n) const {
    double s;
    if (log_case)
      s = lane_kahan_sum(n, [&](std::size_t i) { return state[i] + tf_last[i]; });
    else
      s = lane_kahan_sum(n, [&](std::size_t i) { return state[i] * tf_last[i]; });
    return s * inv_scale / static_cast<double>(n);
  }
};

std::uint64_t strategy_count(std::size_t grid_size, std::int32_t horizon) {
  std::uint64_t count = 1;
  for (std::int32_t t = 0; t < horizon; ++t) {
    if (count > std::numeric_limits<std::uint64_t>::max() / grid_size)
      return std::numeric_limits<std::uint64_t>::max();
    count *= grid_size;
  }
  return count;
}

void validate_grid(const std::vector<double> &grid) {
  if (grid.empty())
    throw InvalidParams("grid must be nonempty");
  for (const double g : grid)
    if (!(g >= 0.0 && g <= 1.0))
      throw InvalidParams("grid entries must lie in [0, 1]");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw InvalidParams("grid must be ascending");
  if (std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw InvalidParams("grid entries must be distinct");
}

// Transformed per-quarter portfolio factors for every grid allocation,
// time-major within each grid index.
std::vector<double> transformed_factors(const PathBatch &batch,
                                        const std::vector<double> &grid,
                                        double rf_quarterly,
                                        const Scorer &scorer) {
  const WealthFactors wf = wealth_factors(batch, rf_quarterly);
  const std::size_t n = static_cast<std::size_t>(batch.n_paths);
  std::vector<double> tf(grid.size() *
                         static_cast<std::size_t>(batch.horizon) * n);
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::int32_t t = 0; t < batch.horizon; ++t) {
      const double *gs = wf.gross_stock.data() + static_cast<std::size_t>(t) * n;
      double *out =
          tf.data() + (a * static_cast<std::size_t>(batch.horizon) + t) * n;
      for (std::size_t i = 0; i < n; ++i)
        out[i] =
            scorer.transform(portfolio_factor(grid[a], gs[i], wf.gross_rf));
    }
  return tf;
}

struct SubtreeBest {
  bool found = false;
  double utility = -std::numeric_limits<double>::infinity();
  std::vector<int> sequence;
  std::vector<std::vector<int>> ties;
};

// Depth-first traversal of the subtree below one first-quarter allocation.
// Level t of the scratch buffer holds the transformed wealth state after t
// chosen quarters; the final quarter is fused into the leaf score.
class SubtreeSearch {
public:
  SubtreeSearch(const std::vector<double> &tf, std::size_t grid_size,
                std::int32_t horizon, std::size_t n_paths, const Scorer &scorer)
      : tf_(tf), grid_size_(grid_size), horizon_(horizon), n_paths_(n_paths),
        scorer_(scorer),
        state_(static_cast<std::size_t>(horizon) * n_paths),
        sequence_(horizon) {}

  SubtreeBest run(int first_allocation) {
    std::fill_n(state_.begin(), n_paths_, scorer_.neutral);
    descend(0, first_allocation);
    return std::move(best_);
  }

private:
  const double *tf_row(int grid_index, std::int32_t t) const {
    return tf_.data() +
           (static_cast<std::size_t>(grid_index) * horizon_ + t) * n_paths_;
  }

  double *state_row(std::int32_t level) {
    return state_.data() + static_cast<std::size_t>(level) * n_paths_;
  }

  void descend(std::int32_t t, int grid_index) {
    sequence_[t] = grid_index;
    const double *cur = state_row(t);
    const double *tf = tf_row(grid_index, t);
    if (t + 1 == horizon_) {
      score_leaf(scorer_.score_final(cur, tf, n_paths_));
      return;
    }
    double *next = state_row(t + 1);
    if (scorer_.log_case)
      for (std::size_t i = 0; i < n_paths_; ++i)
        next[i] = cur[i] + tf[i];
    else
      for (std::size_t i = 0; i < n_paths_; ++i)
        next[i] = cur[i] * tf[i];
    for (std::size_t a = 0; a < grid_size_; ++a)
      descend(t + 1, static_cast<int>(a));
  }

  void score_leaf(double u) {
    if (!best_.found || u > best_.utility) {
      best_.found = true;
      best_.utility = u;
      best_.sequence = sequence_;
      best_.ties.clear();
    } else if (u == best_.utility) {
      best_.ties.push_back(sequence_);
    }
  }

  const std::vector<double> &tf_;
  std::size_t grid_size_;
  std::int32_t horizon_;
  std::size_t n_paths_;
  Scorer scorer_;
  std::vector<double> state_;
  std::vector<int> sequence_;
  SubtreeBest best_;
};

} // namespace

WealthFactors wealth_factors(const PathBatch &batch, double rf_quarterly) {
  WealthFactors f;
  f.n_paths = batch.n_paths;
  f.horizon = batch.horizon;
  f.gross_rf = std::exp(rf_quarterly);
  f.gross_stock.resize(batch.excess_log_returns.size());
  for (std::size_t k = 0; k < f.gross_stock.size(); ++k) {
    const double r = batch.excess_log_returns[k];
    if (!std::isfinite(r))
      throw InvalidParams("path batch contains non-finite returns");
    f.gross_stock[k] = std::exp(rf_quarterly + r);
  }
  return f;
}

double expected_crra_utility(const PathBatch &batch,
                             const GridStrategy &strategy, double gamma,
                             double rf_quarterly) {
  if (!(gamma > 0.0))
    throw InvalidParams("gamma must be positive");
  if (static_cast<std::int32_t>(strategy.sequence.size()) != batch.horizon)
    throw InvalidParams("strategy length must equal the batch horizon");

  const Scorer scorer = Scorer::make(gamma);
  const WealthFactors wf = wealth_factors(batch, rf_quarterly);
  const std::size_t n = static_cast<std::size_t>(batch.n_paths);

  std::vector<double> state(n, scorer.neutral);
  std::vector<double> tf(n);
  for (std::int32_t t = 0; t < batch.horizon; ++t) {
    const double alpha = strategy.sequence[t];
    const double *gs = wf.gross_stock.data() + static_cast<std::size_t>(t) * n;
    for (std::size_t i = 0; i < n; ++i)
      tf[i] = scorer.transform(portfolio_factor(alpha, gs[i], wf.gross_rf));
    if (t + 1 == batch.horizon)
      return scorer.score_final(state.data(), tf.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      state[i] = scorer.accumulate(state[i], tf[i]);
  }
  return 0.0; // unreachable: horizon >= 1
}

SearchResult exhaustive_search(const PathBatch &batch,
                               const std::vector<double> &grid, double gamma,
                               double rf_quarterly,
                               const SearchOptions &options) {
  validate_grid(grid);
  if (!(gamma > 0.0))
    throw InvalidParams("gamma must be positive");
  if (batch.n_paths < 1 || batch.horizon < 1)
    throw InvalidParams("batch must be nonempty");

  const std::uint64_t required = strategy_count(grid.size(), batch.horizon);
  const std::uint64_t allowed =
      options.budget == 0 ? SearchOptions{}.budget : options.budget;
  if (required > allowed)
    throw BudgetExceeded(required, allowed);

  const std::size_t n = static_cast<std::size_t>(batch.n_paths);
  const std::int32_t horizon = batch.horizon;
  const Scorer scorer = Scorer::make(gamma);
  const std::vector<double> tf =
      transformed_factors(batch, grid, rf_quarterly, scorer);

  int n_threads = options.n_threads;
  if (n_threads <= 0)
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
  const bool parallel = n_threads > 1 && grid.size() > 1;

  std::vector<SubtreeBest> subtree(grid.size());
  if (parallel) {
    std::vector<std::future<SubtreeBest>> futures;
    futures.reserve(grid.size());
    for (std::size_t a = 0; a < grid.size(); ++a)
      futures.push_back(std::async(std::launch::async, [&, a] {
        SubtreeSearch search(tf, grid.size(), horizon, n, scorer);
        return search.run(static_cast<int>(a));
      }));
    for (std::size_t a = 0; a < grid.size(); ++a)
      subtree[a] = futures[a].get();
  } else {
    for (std::size_t a = 0; a < grid.size(); ++a) {
      SubtreeSearch search(tf, grid.size(), horizon, n, scorer);
      subtree[a] = search.run(static_cast<int>(a));
    }
  }

  // Merge in first-allocation order; within a subtree the DFS already found
  // the lexicographically smallest co-optimal sequence first.
  SubtreeBest merged;
  for (const SubtreeBest &s : subtree) {
    if (!s.found)
      continue;
    if (!merged.found || s.utility > merged.utility) {
      merged = s;
    } else if (s.utility == merged.utility) {
      merged.ties.push_back(s.sequence);
      merged.ties.insert(merged.ties.end(), s.ties.begin(), s.ties.end());
    }
  }

  SearchResult result;
  result.n_strategies_evaluated = required;
  result.expected_utility = merged.utility;
  result.best.grid = grid;
  result.best.sequence.reserve(merged.sequence.size());
  for (const int idx : merged.sequence)
    result.best.sequence.push_back(grid[idx]);
  for (const auto &tie : merged.ties) {
    std::vector<double> seq;
    seq.reserve(tie.size());
    for (const int idx : tie)
      seq.push_back(grid[idx]);
    result.ties.push_back(std::move(seq));
  }
  return result;
}

} // namespace ltport
