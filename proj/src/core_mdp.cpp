#include "otl/core_mdp.h"

#include <algorithm>
#include <cmath>

#include "otl/csv.h"
#include "otl/errors.h"

namespace otl {

void validate(const DecisionProblem& problem) {
  if (problem.horizon < 0) throw ValidationError("horizon must be >= 0");
  validate(problem.ticks);
  if (problem.action_set.empty()) throw ValidationError("action set is empty");
  for (std::size_t i = 0; i < problem.action_set.size(); ++i) {
    for (std::size_t j = i + 1; j < problem.action_set.size(); ++j) {
      if (problem.action_set[i] == problem.action_set[j])
        throw ValidationError("duplicate action '" + to_string(problem.action_set[i]) + "'");
    }
  }
  validate(problem.initial_belief);
  if (!std::isfinite(problem.initial_wealth)) throw ValidationError("initial wealth must be finite");
  if (!(problem.per_step_discount > 0.0 && problem.per_step_discount <= 1.0))
    throw ValidationError("per-step discount must lie in (0, 1], got " +
                          format_number(problem.per_step_discount));
}

std::span<const StageNode> QTable::stage(int t) const {
  if (t < 0 || t > horizon()) throw LookupError("stage " + std::to_string(t) + " outside [0, horizon]");
  return stages_[static_cast<std::size_t>(t)];
}

std::size_t QTable::state_count() const {
  std::size_t n = 0;
  for (const auto& s : stages_) n += s.size();
  return n;
}

bool QTable::contains(int t, const Belief& belief) const {
  if (t < 0 || t > horizon()) return false;
  const auto& index = index_[static_cast<std::size_t>(t)];
  auto it = index.find(belief_id(belief));
  return it != index.end() && stages_[static_cast<std::size_t>(t)][it->second].belief == belief;
}

const StageNode& QTable::node(int t, const Belief& belief) const {
  if (!contains(t, belief)) {
    throw LookupError("(t=" + std::to_string(t) + ", " + describe(belief) +
                      ") is not a reachable stage state");
  }
  const auto& index = index_[static_cast<std::size_t>(t)];
  return stages_[static_cast<std::size_t>(t)][index.at(belief_id(belief))];
}

std::size_t QTable::action_index(const Action& action) const {
  const auto& actions = problem_.action_set;
  auto it = std::find(actions.begin(), actions.end(), action);
  if (it == actions.end()) throw LookupError("action '" + to_string(action) + "' not in the action set");
  return static_cast<std::size_t>(it - actions.begin());
}

double QTable::q(int t, const Belief& belief, const Action& action) const {
  return node(t, belief).q[action_index(action)];
}

QTable solve_q(const DecisionProblem& problem, const SolverLimits& limits) {
  validate(problem);
  if (problem.horizon > limits.max_horizon) {
    throw ResourceLimitError("horizon " + std::to_string(problem.horizon) + " exceeds the bound " +
                             std::to_string(limits.max_horizon));
  }

  QTable table;
  table.problem_ = problem;
  const auto horizon = static_cast<std::size_t>(problem.horizon);
  table.stages_.resize(horizon + 1);
  table.index_.resize(horizon + 1);

  // Forward closure of the belief lattice.
  std::size_t total = 1;
  {
    StageNode root;
    root.belief = problem.initial_belief;
    root.id = belief_id(root.belief);
    table.index_[0].emplace(root.id, 0);
    table.stages_[0].push_back(std::move(root));
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    auto& next = table.stages_[t + 1];
    auto& next_index = table.index_[t + 1];
    for (auto& node : table.stages_[t]) {
      for (Move move : {Move::Up, Move::Down}) {
        Belief child = update(node.belief, move);
        std::string id = belief_id(child);
        auto [it, inserted] = next_index.emplace(id, next.size());
        if (inserted) {
          if (++total > limits.max_belief_states) {
            throw ResourceLimitError("belief lattice exceeds " + std::to_string(limits.max_belief_states) +
                                     " states");
          }
          StageNode fresh;
          fresh.belief = std::move(child);
          fresh.id = std::move(id);
          next.push_back(std::move(fresh));
        }
        (move == Move::Up ? node.next_up : node.next_down) = it->second;
      }
    }
  }

  // Backward induction.
  const auto& actions = problem.action_set;
  for (auto& node : table.stages_[horizon]) {
    node.q.assign(actions.size(), 0.0);
    node.value = 0.0;
    node.best = 0;
  }
  for (std::size_t t = horizon; t-- > 0;) {
    const double weight = std::pow(problem.per_step_discount, static_cast<double>(t));
    const auto& next = table.stages_[t + 1];
    for (auto& node : table.stages_[t]) {
      const double q_up = predictive(node.belief);
      const double continuation = q_up * next[node.next_up].value + (1.0 - q_up) * next[node.next_down].value;
      node.q.resize(actions.size());
      node.best = 0;
      for (std::size_t a = 0; a < actions.size(); ++a) {
        node.q[a] = weight * expected_step_reward(node.belief, actions[a], problem.ticks) + continuation;
        if (node.q[a] > node.q[node.best]) node.best = a;
      }
      node.value = node.q[node.best];
    }
  }
  return table;
}

Action optimal_action(const QTable& table, int t, const Belief& belief) {
  return table.problem().action_set[table.node(t, belief).best];
}

double value(const QTable& table, int t, const Belief& belief) { return table.node(t, belief).value; }

double lookahead_q(const QTable& table, int t, const Belief& belief, const Action& action) {
  const StageNode& node = table.node(t, belief);
  if (t == table.horizon()) return 0.0;
  const auto& next = table.stage(t + 1);
  const double q_up = predictive(belief);
  const double weight = std::pow(table.problem().per_step_discount, static_cast<double>(t));
  return weight * expected_step_reward(belief, action, table.problem().ticks) +
         (q_up * next[node.next_up].value + (1.0 - q_up) * next[node.next_down].value);
}

}  // namespace otl
