#include "otl/sim.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "otl/errors.h"

namespace otl {

void validate(const SimConfig& cfg) {
  if (cfg.n_paths < 1) throw ValidationError("n_paths must be >= 1");
  if (cfg.horizon < 1) throw ValidationError("simulation horizon must be >= 1");
  if (cfg.threads < 1) throw ValidationError("threads must be >= 1");
}

PathOutcome outcome_of(const WealthPath& path) {
  PathOutcome outcome;
  double peak = path.initial_wealth;
  outcome.ruined = path.initial_wealth <= 0.0;
  for (const auto& step : path.steps) {
    peak = std::max(peak, step.wealth_after);
    outcome.max_drawdown = std::max(outcome.max_drawdown, peak - step.wealth_after);
    outcome.ruined = outcome.ruined || step.wealth_after <= 0.0;
  }
  outcome.terminal = path.terminal();
  return outcome;
}

namespace {

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile(const std::vector<double>& sorted, double level) {
  const double h = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Stats summarize_outcomes(const std::vector<PathOutcome>& outcomes) {
  if (outcomes.empty()) throw ValidationError("cannot summarize an empty set of paths");
  const auto n = static_cast<double>(outcomes.size());
  Stats stats;
  double sum = 0.0;
  double drawdown = 0.0;
  std::size_t ruined = 0;
  std::vector<double> terminals;
  terminals.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    sum += o.terminal;
    drawdown += o.max_drawdown;
    ruined += o.ruined ? 1 : 0;
    terminals.push_back(o.terminal);
  }
  stats.mean_terminal = sum / n;
  if (outcomes.size() > 1) {
    double squares = 0.0;
    for (const auto& o : outcomes) squares += (o.terminal - stats.mean_terminal) * (o.terminal - stats.mean_terminal);
    stats.std_terminal = std::sqrt(squares / (n - 1.0));
  }
  std::sort(terminals.begin(), terminals.end());
  stats.q05 = quantile(terminals, 0.05);
  stats.q25 = quantile(terminals, 0.25);
  stats.q50 = quantile(terminals, 0.50);
  stats.q75 = quantile(terminals, 0.75);
  stats.q95 = quantile(terminals, 0.95);
  stats.mean_max_drawdown = drawdown / n;
  stats.ruin_fraction = static_cast<double>(ruined) / n;
  return stats;
}

Stats summarize(const std::vector<WealthPath>& paths) {
  std::vector<PathOutcome> outcomes;
  outcomes.reserve(paths.size());
  for (const auto& path : paths) outcomes.push_back(outcome_of(path));
  return summarize_outcomes(outcomes);
}

WealthPath play(const Policy& policy, const MarketModel& model, const PricePath& market_path) {
  const Ticks ticks = model.ticks();
  WealthPath path;
  path.initial_wealth = model.initial_wealth;
  path.steps.reserve(market_path.moves.size());

  DecisionContext ctx;
  ctx.belief = policy.problem().initial_belief;
  ctx.wealth = model.initial_wealth;
  for (std::size_t i = 0; i < market_path.moves.size(); ++i) {
    ctx.t = static_cast<int>(i);
    const Action action = policy.decide(ctx);
    const Move move = market_path.moves[i];
    const double reward = step_reward(action, move, ticks);
    ctx.wealth += reward;
    path.steps.push_back(StepRecord{ctx.t, move, action, reward, ctx.wealth});

    if (action.direction() == Direction::Neutral) {
      ctx.losing_streak = 0;
    } else {
      const bool same_side = action.direction() == ctx.current_position.direction();
      const int streak = same_side ? ctx.losing_streak : 0;
      ctx.losing_streak = reward < 0.0 ? streak + 1 : 0;
    }
    ctx.current_position = action;
    ctx.belief = update(ctx.belief, move);
    ctx.last_move = move;
  }
  return path;
}

namespace {

void check_compatible(const Policy& policy, const MarketModel& model, const SimConfig& cfg) {
  if (!(policy.problem().ticks == model.ticks()))
    throw ConfigError("policy '" + policy.name() + "' was built for different ticks than the market");
  if (policy.kind() == PolicyKind::BellmanOptimal && policy.table()->horizon() != cfg.horizon) {
    throw ConfigError("bellman table horizon " + std::to_string(policy.table()->horizon()) +
                      " does not match the simulation horizon " + std::to_string(cfg.horizon));
  }
}

template <typename Body>
void for_each_path(const SimConfig& cfg, Body body) {
  const auto n = static_cast<std::size_t>(cfg.n_paths);
  const auto workers = std::min(static_cast<std::size_t>(cfg.threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w * n / workers; i < (w + 1) * n / workers; ++i) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

}  // namespace

SimResult run(const Policy& policy, const MarketModel& model, const SimConfig& cfg) {
  validate(cfg);
  validate(model);
  check_compatible(policy, model, cfg);

  SimResult result;
  result.policy = policy.name();
  result.outcomes.resize(static_cast<std::size_t>(cfg.n_paths));
  if (cfg.keep_paths) result.paths.resize(static_cast<std::size_t>(cfg.n_paths));

  for_each_path(cfg, [&](std::size_t i) {
    const PricePath market_path = sample_path(model, cfg.horizon, derive_path_seed(cfg.master_seed, i));
    WealthPath path = play(policy, model, market_path);
    result.outcomes[i] = outcome_of(path);
    if (cfg.keep_paths) result.paths[i] = std::move(path);
  });
  result.stats = summarize_outcomes(result.outcomes);
  return result;
}

ComparisonTable compare(const std::vector<Policy>& policies, const MarketModel& model, const SimConfig& cfg,
                        double confidence) {
  if (policies.empty()) throw ValidationError("compare needs at least one policy");
  if (!(confidence > 0.0 && confidence < 1.0)) throw ValidationError("confidence must lie in (0, 1)");

  ComparisonTable table;
  table.confidence = confidence;
  for (const auto& policy : policies) table.rows.push_back(run(policy, model, cfg));

  const boost::math::normal standard;
  const double z = boost::math::quantile(standard, 0.5 + confidence / 2.0);
  const auto n = static_cast<double>(cfg.n_paths);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = i + 1; j < table.rows.size(); ++j) {
      const auto& a = table.rows[i].outcomes;
      const auto& b = table.rows[j].outcomes;
      double sum = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) sum += a[k].terminal - b[k].terminal;
      MeanDifference diff{i, j, sum / n};
      if (a.size() > 1) {
        double squares = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
          const double e = a[k].terminal - b[k].terminal - diff.mean;
          squares += e * e;
        }
        diff.std_error = std::sqrt(squares / (n - 1.0)) / std::sqrt(n);
      }
      diff.lower = diff.mean - z * diff.std_error;
      diff.upper = diff.mean + z * diff.std_error;
      table.differences.push_back(diff);
    }
  }
  return table;
}

}  // namespace otl
