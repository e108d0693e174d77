#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otl/action.h"
#include "otl/beliefs.h"
#include "otl/core_mdp.h"

namespace otl {

/// What the trader knows when choosing the next action.
struct DecisionContext {
  int t = 0;
  Belief belief = StaticBelief{0.5};
  std::optional<Move> last_move;
  /// Consecutive losing steps in the current position; 0 when flat.
  int losing_streak = 0;
  Action current_position = Action::neutral();
  double wealth = 0.0;
};

void validate(const DecisionContext& ctx);

enum class PolicyKind { BellmanOptimal, CutLoss, AverageDown, BuyHold, AlwaysLong };

/// CLI names: bellman, cutloss, avgdown, buyhold, alwayslong.
std::string to_string(PolicyKind kind);
/// Throws ConfigError for an unknown name.
PolicyKind parse_policy_kind(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::BuyHold;
  /// BellmanOptimal only; solved from the problem when absent.
  std::shared_ptr<const QTable> table;
  /// AverageDown only: stakes run 1, 2, 4, ... 2^(max_rungs-1).
  int max_rungs = 7;
};

/// A decision rule bound to a DecisionProblem. Immutable; decide() is pure.
class Policy {
 public:
  PolicyKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }
  const DecisionProblem& problem() const { return problem_; }
  /// Non-null for BellmanOptimal.
  const QTable* table() const { return table_.get(); }
  int max_rungs() const { return max_rungs_; }

  Action decide(const DecisionContext& ctx) const;

 private:
  friend Policy make_policy(const PolicySpec& spec, const DecisionProblem& problem);

  PolicyKind kind_ = PolicyKind::BuyHold;
  DecisionProblem problem_;
  std::shared_ptr<const QTable> table_;
  int max_rungs_ = 7;
};

/// Throws ConfigError when the action set lacks an action the kind needs, or
/// when a supplied table was solved for a different problem.
Policy make_policy(const PolicySpec& spec, const DecisionProblem& problem);

inline Action decide(const Policy& policy, const DecisionContext& ctx) { return policy.decide(ctx); }

}  // namespace otl
