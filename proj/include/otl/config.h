#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "otl/beliefs.h"
#include "otl/core_mdp.h"
#include "otl/market.h"
#include "otl/sim.h"

namespace otl {

/// Flat `key = value` run configuration. Defaults model a desk-scale trade:
/// $1000 stake, +/-$10 ticks, a trader who believes q = 0.6.
struct RunConfig {
  double market_u = 10.0;
  double market_d = -10.0;
  double market_p = 0.45;
  double market_initial_wealth = 1000.0;

  int problem_horizon = 10;
  std::vector<Action> problem_actions = {Action::neutral(), Action::long_(), Action::short_()};
  double problem_discount = 1.0;

  BeliefKind belief_kind = BeliefKind::Static;
  double belief_q0 = 0.6;
  double belief_confidence = 0.6;
  double belief_alpha = 3.0;
  double belief_beta = 2.0;

  int sim_paths = 10000;
  std::uint64_t sim_seed = 20230101;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  MarketModel market() const;
  Belief belief() const;
  DecisionProblem problem() const;
  SimConfig sim() const;
};

/// Error carrying the 1-based line of the offending config entry (0 when the
/// problem is not tied to one line).
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses config text; unknown keys and out-of-range values are errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Every documented key, one per line; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

/// Throws ConfigParseError (line 0) when a cross-field invariant fails.
void validate(const RunConfig& config);

std::vector<Action> parse_action_list(std::string_view text);

}  // namespace otl
