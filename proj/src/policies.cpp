#include "otl/policies.h"

#include <algorithm>

#include "otl/errors.h"

namespace otl {

void validate(const DecisionContext& ctx) {
  if (ctx.t < 0) throw ValidationError("decision time must be >= 0");
  if (ctx.losing_streak < 0) throw ValidationError("losing streak must be >= 0");
  if (ctx.current_position.direction() == Direction::Neutral && ctx.losing_streak != 0)
    throw ValidationError("a flat position cannot carry a losing streak");
  validate(ctx.belief);
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::BellmanOptimal: return "bellman";
    case PolicyKind::CutLoss: return "cutloss";
    case PolicyKind::AverageDown: return "avgdown";
    case PolicyKind::BuyHold: return "buyhold";
    case PolicyKind::AlwaysLong: return "alwayslong";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (auto kind : {PolicyKind::BellmanOptimal, PolicyKind::CutLoss, PolicyKind::AverageDown,
                    PolicyKind::BuyHold, PolicyKind::AlwaysLong}) {
    if (name == to_string(kind)) return kind;
  }
  throw ConfigError("unknown policy '" + std::string(name) +
                    "' (expected bellman, cutloss, avgdown, buyhold or alwayslong)");
}

Action Policy::decide(const DecisionContext& ctx) const {
  switch (kind_) {
    case PolicyKind::BellmanOptimal:
      if (!table_->contains(ctx.t, ctx.belief) || ctx.t >= table_->horizon()) {
        throw ConfigError("bellman policy has no decision for t=" + std::to_string(ctx.t) + ", " +
                          describe(ctx.belief));
      }
      return optimal_action(*table_, ctx.t, ctx.belief);
    case PolicyKind::CutLoss:
      return ctx.last_move == Move::Down ? Action::neutral() : Action::long_();
    case PolicyKind::AverageDown: {
      const int rung = std::min(ctx.losing_streak, max_rungs_ - 1);
      return Action::long_(1 << rung);
    }
    case PolicyKind::BuyHold:
    case PolicyKind::AlwaysLong:
      break;
  }
  return Action::long_();
}

namespace {

bool has_action(const DecisionProblem& problem, const Action& action) {
  return std::find(problem.action_set.begin(), problem.action_set.end(), action) != problem.action_set.end();
}

void require(const DecisionProblem& problem, const Action& action, PolicyKind kind) {
  if (!has_action(problem, action)) {
    throw ConfigError("policy '" + to_string(kind) + "' needs action '" + to_string(action) +
                      "' in the action set");
  }
}

}  // namespace

Policy make_policy(const PolicySpec& spec, const DecisionProblem& problem) {
  validate(problem);
  Policy policy;
  policy.kind_ = spec.kind;
  policy.problem_ = problem;
  switch (spec.kind) {
    case PolicyKind::BellmanOptimal:
      if (spec.table) {
        if (!(spec.table->problem() == problem))
          throw ConfigError("bellman policy table was solved for a different problem");
        policy.table_ = spec.table;
      } else {
        policy.table_ = std::make_shared<const QTable>(solve_q(problem));
      }
      break;
    case PolicyKind::CutLoss:
      require(problem, Action::long_(), spec.kind);
      require(problem, Action::neutral(), spec.kind);
      break;
    case PolicyKind::AverageDown:
      if (spec.max_rungs < 1 || spec.max_rungs > 30)
        throw ConfigError("average-down rung cap must lie in [1, 30]");
      require(problem, Action::long_(), spec.kind);
      policy.max_rungs_ = spec.max_rungs;
      break;
    case PolicyKind::BuyHold:
    case PolicyKind::AlwaysLong:
      require(problem, Action::long_(), spec.kind);
      break;
  }
  return policy;
}

}  // namespace otl
