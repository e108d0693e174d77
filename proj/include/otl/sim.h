#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otl/market.h"
#include "otl/policies.h"

namespace otl {

struct SimConfig {
  int n_paths = 10000;
  int horizon = 10;
  std::uint64_t master_seed = 0;
  /// Worker threads; results do not depend on this.
  int threads = 1;
  /// Keep per-step records. Statistics never need them.
  bool keep_paths = true;
};

struct StepRecord {
  int t = 0;
  Move move = Move::Up;
  Action action;
  double reward = 0.0;
  double wealth_after = 0.0;
};

struct WealthPath {
  double initial_wealth = 0.0;
  std::vector<StepRecord> steps;

  double terminal() const { return steps.empty() ? initial_wealth : steps.back().wealth_after; }
};

/// Per-path quantities the statistics are built from.
struct PathOutcome {
  double terminal = 0.0;
  double max_drawdown = 0.0;
  bool ruined = false;
};

struct Stats {
  double mean_terminal = 0.0;
  /// Sample standard deviation (n-1); 0 for a single path.
  double std_terminal = 0.0;
  double q05 = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double q95 = 0.0;
  double mean_max_drawdown = 0.0;
  /// Fraction of paths whose wealth was <= 0 at any point.
  double ruin_fraction = 0.0;

  friend bool operator==(const Stats&, const Stats&) = default;
};

struct SimResult {
  std::string policy;
  std::vector<PathOutcome> outcomes;
  /// Empty unless SimConfig::keep_paths.
  std::vector<WealthPath> paths;
  Stats stats;
};

void validate(const SimConfig& cfg);

PathOutcome outcome_of(const WealthPath& path);
Stats summarize(const std::vector<WealthPath>& paths);
Stats summarize_outcomes(const std::vector<PathOutcome>& outcomes);

/// Plays `policy` along one market path. Beliefs are updated on every
/// observed move, also while flat.
WealthPath play(const Policy& policy, const MarketModel& model, const PricePath& market_path);

/// Path i is driven by derive_path_seed(cfg.master_seed, i).
SimResult run(const Policy& policy, const MarketModel& model, const SimConfig& cfg);

/// Paired difference of mean terminal wealth, row `first` minus row `second`.
struct MeanDifference {
  std::size_t first = 0;
  std::size_t second = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct ComparisonTable {
  std::vector<SimResult> rows;
  double confidence = 0.99;
  std::vector<MeanDifference> differences;
};

/// Runs every policy on the same path seeds (common random numbers).
ComparisonTable compare(const std::vector<Policy>& policies, const MarketModel& model,
                        const SimConfig& cfg, double confidence = 0.99);

}  // namespace otl
