#include "otl/market.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "otl/csv.h"
#include "otl/errors.h"

namespace otl {

void validate(const MarketModel& model) {
  validate(model.ticks());
  if (!(model.p_up >= 0.0 && model.p_up <= 1.0))
    throw ValidationError("market p must lie in [0, 1], got " + format_number(model.p_up));
  if (!std::isfinite(model.initial_wealth)) throw ValidationError("initial wealth must be finite");
}

int max_enum_horizon() {
  constexpr int kDefault = 20;
  const char* env = std::getenv("OTL_MAX_ENUM_HORIZON");
  if (env == nullptr) return kDefault;
  int value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value < 0) return kDefault;
  return value;
}

std::uint64_t derive_path_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PricePath sample_path(const MarketModel& model, int horizon, std::uint64_t path_seed) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  MoveSampler sampler(path_seed);
  PricePath path;
  path.moves.reserve(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t) path.moves.push_back(sampler.next(model.p_up));
  return path;
}

namespace {

void check_enum_bound(int horizon) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  const int bound = max_enum_horizon();
  if (horizon > bound) {
    throw ResourceLimitError("horizon " + std::to_string(horizon) + " exceeds the enumeration bound " +
                             std::to_string(bound) + " (OTL_MAX_ENUM_HORIZON)");
  }
}

}  // namespace

std::vector<PricePath> enumerate_paths(const MarketModel& model, int horizon) {
  check_enum_bound(horizon);
  const std::size_t count = std::size_t{1} << horizon;
  std::vector<PricePath> paths(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto& path = paths[i];
    path.moves.resize(static_cast<std::size_t>(horizon));
    double probability = 1.0;
    for (int t = 0; t < horizon; ++t) {
      // Most significant bit first; a zero bit is an up move.
      const bool down = (i >> (horizon - 1 - t)) & 1U;
      path.moves[static_cast<std::size_t>(t)] = down ? Move::Down : Move::Up;
      probability *= down ? 1.0 - model.p_up : model.p_up;
    }
    path.probability = probability;
  }
  return paths;
}

double price_process(const MarketModel& model, const DividendSpec& div, int horizon) {
  validate(model);
  check_enum_bound(horizon);
  if (!div.terminal_payoff) throw ValidationError("dividend spec needs a terminal payoff");
  if (div.actions.empty()) throw ValidationError("dividend spec needs at least one action");

  // Recombining lattice: level after t steps with k downs is x0 + (t-k)u + kd.
  auto level = [&](int t, int downs) { return div.initial_level + (t - downs) * model.u + downs * model.d; };

  std::vector<double> prices(static_cast<std::size_t>(horizon) + 1);
  for (int k = 0; k <= horizon; ++k) prices[static_cast<std::size_t>(k)] = div.terminal_payoff(level(horizon, k));

  for (int t = horizon - 1; t >= 0; --t) {
    for (int k = 0; k <= t; ++k) {
      const double up_level = level(t + 1, k);
      const double down_level = level(t + 1, k + 1);
      double best = 0.0;
      for (std::size_t a = 0; a < div.actions.size(); ++a) {
        const Action& action = div.actions[a];
        double up_div = 0.0;
        double down_div = 0.0;
        if (div.per_step_dividend) {
          up_div = div.per_step_dividend(t + 1, action, up_level);
          down_div = div.per_step_dividend(t + 1, action, down_level);
        }
        const double candidate = model.p_up * (up_div + prices[static_cast<std::size_t>(k)]) +
                                 (1.0 - model.p_up) * (down_div + prices[static_cast<std::size_t>(k) + 1]);
        if (a == 0 || candidate > best) best = candidate;
      }
      prices[static_cast<std::size_t>(k)] = best;
    }
  }
  return prices[0];
}

}  // namespace otl
