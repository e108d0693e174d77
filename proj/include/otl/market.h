#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "otl/action.h"
#include "otl/beliefs.h"

namespace otl {

/// Exogenous binomial market: each step moves the stake's value by u or d.
struct MarketModel {
  double u = 10.0;
  double d = -10.0;
  /// True probability of an up move.
  double p_up = 0.5;
  double initial_wealth = 1000.0;
  /// Money committed per unit stake on every trade.
  double stake = 1000.0;

  Ticks ticks() const { return {u, d}; }

  friend bool operator==(const MarketModel&, const MarketModel&) = default;
};

void validate(const MarketModel& model);

struct PricePath {
  std::vector<Move> moves;
  /// Set only for enumerated paths.
  std::optional<double> probability;
};

/// Dividends for the risk-neutral price recursion. Levels move by the
/// model's ticks from initial_level.
struct DividendSpec {
  std::function<double(int t, const Action& action, double level)> per_step_dividend;
  std::function<double(double level)> terminal_payoff;
  double initial_level = 100.0;
  /// Actions the recursion maximizes over.
  std::vector<Action> actions = {Action::neutral()};
};

/// Default 20; overridden by OTL_MAX_ENUM_HORIZON when set to a valid integer.
int max_enum_horizon();

/// splitmix64 finalizer applied to master_seed + (index + 1) * golden gamma.
std::uint64_t derive_path_seed(std::uint64_t master_seed, std::uint64_t index);

/// Move stream of one path. mt19937_64's output sequence is fixed by the
/// standard, and the uniform conversion is done here, so paths are identical
/// across standard libraries.
class MoveSampler {
 public:
  explicit MoveSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  Move next(double p_up) { return uniform() < p_up ? Move::Up : Move::Down; }

 private:
  std::mt19937_64 engine_;
};

PricePath sample_path(const MarketModel& model, int horizon, std::uint64_t path_seed);

/// All 2^T paths in lexicographic order (Up before Down), with probabilities.
std::vector<PricePath> enumerate_paths(const MarketModel& model, int horizon);

/// p_0 of the risk-neutral price recursion
///   p_T(x) = terminal(x),
///   p_t(x) = max_a E^p[ div(t+1, a, X') + p_{t+1}(X') ].
double price_process(const MarketModel& model, const DividendSpec& div, int horizon);

}  // namespace otl
