#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "otl/action.h"
#include "otl/beliefs.h"

namespace otl {

/// Finite-horizon trading problem as seen by the trader.
///
/// The decision state is (t, belief). Wealth is carried for reporting only:
/// whether to be in or out of the market does not depend on the wealth level.
struct DecisionProblem {
  int horizon = 1;
  Ticks ticks;
  /// Candidate actions; the order is the argmax tie-break order.
  std::vector<Action> action_set = {Action::neutral(), Action::long_(), Action::short_()};
  Belief initial_belief = StaticBelief{0.5};
  double initial_wealth = 1000.0;
  /// Step t's reward is multiplied by per_step_discount^t.
  double per_step_discount = 1.0;

  friend bool operator==(const DecisionProblem&, const DecisionProblem&) = default;
};

void validate(const DecisionProblem& problem);

struct SolverLimits {
  int max_horizon = 100000;
  std::size_t max_belief_states = 5'000'000;
};

/// One reachable (t, belief) node of the solved lattice.
struct StageNode {
  Belief belief;
  std::string id;
  /// Stage t+1 indices reached on Up and Down; unused at the terminal stage.
  std::size_t next_up = 0;
  std::size_t next_down = 0;
  /// One entry per action, in action_set order.
  std::vector<double> q;
  double value = 0.0;
  std::size_t best = 0;
};

/// Solved subjective Q-values over the reachable (t, belief) lattice.
/// Immutable once built; concurrent queries are safe.
class QTable {
 public:
  const DecisionProblem& problem() const { return problem_; }
  int horizon() const { return problem_.horizon; }

  /// Nodes of stage t, t in [0, horizon].
  std::span<const StageNode> stage(int t) const;
  std::size_t state_count() const;

  /// Throws LookupError for an unreachable (t, belief).
  const StageNode& node(int t, const Belief& belief) const;
  bool contains(int t, const Belief& belief) const;

  double q(int t, const Belief& belief, const Action& action) const;
  std::size_t action_index(const Action& action) const;

 private:
  friend QTable solve_q(const DecisionProblem& problem, const SolverLimits& limits);

  DecisionProblem problem_;
  std::vector<std::vector<StageNode>> stages_;
  std::vector<std::unordered_map<std::string, std::size_t>> index_;
};

/// Backward induction of
///   Q(t,b,a) = E_b[ discount^t * reward(a, move) + V(t+1, update(b, move)) ],
///   V(T,.) = 0,
/// over beliefs reachable from the initial belief.
QTable solve_q(const DecisionProblem& problem, const SolverLimits& limits = {});

/// argmax_a Q(t, belief, a); ties go to the earliest action in action_set.
Action optimal_action(const QTable& table, int t, const Belief& belief);

/// max_a Q(t, belief, a).
double value(const QTable& table, int t, const Belief& belief);

/// One-step lookahead Q-value for any action, including actions outside the
/// problem's action set: E_b[discount^t * reward(a, move) + V(t+1, .)].
double lookahead_q(const QTable& table, int t, const Belief& belief, const Action& action);

}  // namespace otl
