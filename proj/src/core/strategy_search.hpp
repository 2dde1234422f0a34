#pragma once

#include <cstdint>
#include <vector>

#include "var_model.hpp"

namespace ltport {

// Open-loop strategy: one allocation per quarter, fixed in advance and
// identical across paths. Every entry must be a member of the (ascending)
// grid of allowed allocations in [0, 1].
struct GridStrategy {
  std::vector<double> grid;
  std::vector<double> sequence;
};

// Per-quarter gross returns entering the wealth recursion
//   W_{t+1} = W_t [ alpha_t R_stock,t + (1 - alpha_t) R_f ]
// with R_stock = exp(rf + excess log return) and R_f = exp(rf).
struct WealthFactors {
  std::int64_t n_paths = 0;
  std::int32_t horizon = 0;
  double gross_rf = 0.0;
  std::vector<double> gross_stock; // time-major: [t * n_paths + i]
};

WealthFactors wealth_factors(const PathBatch &batch, double rf_quarterly);

// Mean over paths of u(W_T) with W_0 = 1, u(W) = W^{1-gamma}/(1-gamma)
// (mean log terminal wealth at gamma = 1). Summation is compensated and
// runs in path-index order, so the result does not depend on threading.
double expected_crra_utility(const PathBatch &batch,
                             const GridStrategy &strategy, double gamma,
                             double rf_quarterly);

struct SearchOptions {
  std::uint64_t budget = 10'000'000; // cap on |grid|^horizon
  int n_threads = 0;                 // <= 0: hardware concurrency
};

struct SearchResult {
  GridStrategy best;
  double expected_utility = 0.0;
  std::uint64_t n_strategies_evaluated = 0;
  std::vector<std::vector<double>> ties; // co-optimal sequences besides best
};

// Evaluates every sequence in grid^horizon by depth-first traversal of the
// allocation tree, reusing partial wealth products across all sequences
// sharing a prefix. The traversal order makes the arithmetic of each leaf
// bit-identical to a straight-line evaluation of that sequence. Subtrees
// rooted at each first-quarter allocation run on separate workers; the merge
// keeps the lexicographically smallest of any co-optimal sequences.
SearchResult exhaustive_search(const PathBatch &batch,
                               const std::vector<double> &grid, double gamma,
                               double rf_quarterly,
                               const SearchOptions &options = {});

} // namespace ltport
