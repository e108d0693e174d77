#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.h"
#include "otl/core_mdp.h"
#include "otl/errors.h"

using namespace otl;
using Catch::Approx;

namespace {

DecisionProblem problem_for(const Belief& belief, int horizon, Ticks ticks = {10.0, -10.0}) {
  DecisionProblem problem;
  problem.horizon = horizon;
  problem.ticks = ticks;
  problem.initial_belief = belief;
  return problem;
}

const Action kLong = Action::long_();
const Action kNeutral = Action::neutral();
const Action kShort = Action::short_();

}  // namespace

TEST_CASE("one-step static problem", "[core_mdp]") {
  const Belief b = StaticBelief{0.6};
  const QTable table = solve_q(problem_for(b, 1));
  CHECK(table.q(0, b, kLong) == Approx(2.0).margin(1e-12));
  CHECK(table.q(0, b, kNeutral) == 0.0);
  CHECK(table.q(0, b, kShort) == Approx(-2.0).margin(1e-12));
  CHECK(optimal_action(table, 0, b) == kLong);
  CHECK(value(table, 0, b) == Approx(2.0).margin(1e-12));
  CHECK(value(table, 1, b) == 0.0);
}

TEST_CASE("frozen multi-step values", "[core_mdp]") {
  struct Expected {
    Belief belief;
    int horizon;
    double q_long, q_neutral, q_short;
  };
  // Exact rational expectimax over the full move tree.
  const std::vector<Expected> cases = {
      {StaticBelief{0.6}, 3, 6.0, 4.0, 2.0},
      {MirrorBelief{0.6, Move::Up}, 2, 4.0, 2.0, 0.0},
      {MirrorBelief{0.7, Move::Up}, 4, 16.0, 12.0, 8.0},
      {BetaBelief{3.0, 2.0}, 2, 4.0, 2.0, 0.0},
      {BetaBelief{3.0, 2.0}, 3, 46.0 / 7.0, 32.0 / 7.0, 18.0 / 7.0},
      {BetaBelief{3.0, 2.0}, 4, 64.0 / 7.0, 50.0 / 7.0, 36.0 / 7.0},
      {BetaBelief{6.0, 4.0}, 4, 1164.0 / 143.0, 878.0 / 143.0, 592.0 / 143.0},
  };
  for (const auto& c : cases) {
    CAPTURE(describe(c.belief), c.horizon);
    const QTable table = solve_q(problem_for(c.belief, c.horizon));
    CHECK(table.q(0, c.belief, kLong) == Approx(c.q_long).margin(1e-9));
    CHECK(table.q(0, c.belief, kNeutral) == Approx(c.q_neutral).margin(1e-9));
    CHECK(table.q(0, c.belief, kShort) == Approx(c.q_short).margin(1e-9));
  }
}

TEST_CASE("argmax ties follow action-set order", "[core_mdp]") {
  DecisionProblem problem = problem_for(StaticBelief{0.5}, 5);
  problem.action_set = {kNeutral, kLong, kShort};
  const QTable table = solve_q(problem);
  CHECK(optimal_action(table, 0, StaticBelief{0.5}) == kNeutral);
  CHECK(value(table, 0, StaticBelief{0.5}) == 0.0);
  CHECK(table.q(0, StaticBelief{0.5}, kLong) == table.q(0, StaticBelief{0.5}, kShort));

  problem.action_set = {kShort, kLong, kNeutral};
  CHECK(optimal_action(solve_q(problem), 0, StaticBelief{0.5}) == kShort);
}

TEST_CASE("bearish belief shorts", "[core_mdp]") {
  const QTable table = solve_q(problem_for(StaticBelief{0.3}, 1));
  CHECK(optimal_action(table, 0, StaticBelief{0.3}) == kShort);
}

TEST_CASE("lattice sizes", "[core_mdp]") {
  const int horizon = 9;
  const QTable st = solve_q(problem_for(StaticBelief{0.6}, horizon));
  const QTable mi = solve_q(problem_for(MirrorBelief{0.6, Move::Up}, horizon));
  const QTable be = solve_q(problem_for(BetaBelief{3.0, 2.0}, horizon));
  for (int t = 0; t <= horizon; ++t) {
    CHECK(st.stage(t).size() == 1);
    CHECK(mi.stage(t).size() <= 2);
    CHECK(be.stage(t).size() == static_cast<std::size_t>(t + 1));
  }
}

TEST_CASE("unreachable states and bad problems", "[core_mdp]") {
  const QTable table = solve_q(problem_for(MirrorBelief{0.6, Move::Up}, 2));
  CHECK_THROWS_AS(optimal_action(table, 0, MirrorBelief{0.6, Move::Down}), LookupError);
  CHECK_THROWS_AS(value(table, 3, MirrorBelief{0.6, Move::Up}), LookupError);
  CHECK_THROWS_AS(value(table, 0, StaticBelief{0.6}), LookupError);

  const QTable beta = solve_q(problem_for(BetaBelief{3.0, 2.0}, 2));
  // Same count offsets, different prior.
  CHECK_THROWS_AS(value(beta, 0, BetaBelief{1.0, 1.0}), LookupError);

  DecisionProblem bad = problem_for(StaticBelief{0.6}, 1);
  bad.action_set = {kLong, kLong};
  CHECK_THROWS_AS(solve_q(bad), ValidationError);
  bad.action_set = {};
  CHECK_THROWS_AS(solve_q(bad), ValidationError);
  CHECK_THROWS_AS(solve_q(problem_for(StaticBelief{0.6}, -1)), ValidationError);
  CHECK_THROWS_AS(solve_q(problem_for(StaticBelief{0.6}, 1, {10.0, 5.0})), ValidationError);

  SolverLimits limits;
  limits.max_horizon = 10;
  CHECK_THROWS_AS(solve_q(problem_for(StaticBelief{0.6}, 11), limits), ResourceLimitError);
  limits.max_horizon = 1000;
  limits.max_belief_states = 50;
  CHECK_THROWS_AS(solve_q(problem_for(BetaBelief{1.0, 1.0}, 20), limits), ResourceLimitError);
}

TEST_CASE("solver agrees with full-tree expectimax", "[core_mdp][property]") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::uniform_int_distribution<int> horizons(0, 7);
  std::uniform_real_distribution<double> tick(1.0, 30.0);
  std::uniform_real_distribution<double> disc(0.8, 1.0);

  const std::vector<Action> actions = {kNeutral, kLong, kShort, Action::long_(3)};
  for (int trial = 0; trial < 60; ++trial) {
    const Ticks ticks{tick(rng), -tick(rng)};
    const int horizon = horizons(rng);
    const double discount = trial % 2 ? 1.0 : disc(rng);
    const std::vector<Belief> beliefs = {StaticBelief{unit(rng)}, MirrorBelief{0.5 + unit(rng) / 2.0, Move::Down},
                                         BetaBelief{1.0 + 5 * unit(rng), 1.0 + 5 * unit(rng)}};
    for (const Belief& b : beliefs) {
      DecisionProblem problem = problem_for(b, horizon, ticks);
      problem.action_set = actions;
      problem.per_step_discount = discount;
      const QTable table = solve_q(problem);
      for (const Action& a : actions) {
        CHECK(table.q(0, b, a) ==
              Approx(testing::tree_q(b, a, horizon, 0, ticks, actions, discount)).margin(1e-9));
      }
      // Bellman consistency at every reachable node.
      for (int t = 0; t <= horizon; ++t) {
        for (const auto& node : table.stage(t)) {
          CHECK(node.value == *std::max_element(node.q.begin(), node.q.end()));
          CHECK(node.value == node.q[node.best]);
        }
      }
    }
  }
}

TEST_CASE("scaling ticks scales Q and keeps the policy", "[core_mdp][property]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::uniform_real_distribution<double> scale(0.1, 50.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double lambda = scale(rng);
    const Belief b = trial % 3 == 0 ? Belief{StaticBelief{unit(rng)}}
                     : trial % 3 == 1 ? Belief{MirrorBelief{0.5 + unit(rng) / 2.0}}
                                      : Belief{BetaBelief{2.0 * unit(rng) + 0.1, 3.0 * unit(rng) + 0.1}};
    const QTable base = solve_q(problem_for(b, 6, {10.0, -7.0}));
    const QTable scaled = solve_q(problem_for(b, 6, {10.0 * lambda, -7.0 * lambda}));
    for (int t = 0; t < 6; ++t) {
      const auto nodes = base.stage(t);
      const auto other = scaled.stage(t);
      REQUIRE(nodes.size() == other.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t a = 0; a < nodes[i].q.size(); ++a)
          CHECK(other[i].q[a] == Approx(lambda * nodes[i].q[a]).margin(1e-9 * lambda));
        CHECK(optimal_action(base, t, nodes[i].belief) == optimal_action(scaled, t, nodes[i].belief));
      }
    }
  }
}

TEST_CASE("q to 1-q swaps long and short", "[core_mdp][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (int trial = 0; trial < 40; ++trial) {
    const double q = unit(rng);
    const int horizon = 1 + trial % 6;
    const QTable up = solve_q(problem_for(StaticBelief{q}, horizon));
    const QTable down = solve_q(problem_for(StaticBelief{1.0 - q}, horizon));
    for (int t = 0; t < horizon; ++t) {
      CHECK(std::abs(up.q(t, StaticBelief{q}, kLong) - down.q(t, StaticBelief{1.0 - q}, kShort)) <= 1e-12);
      CHECK(std::abs(up.q(t, StaticBelief{q}, kShort) - down.q(t, StaticBelief{1.0 - q}, kLong)) <= 1e-12);
      CHECK(std::abs(up.q(t, StaticBelief{q}, kNeutral) - down.q(t, StaticBelief{1.0 - q}, kNeutral)) <= 1e-12);
    }
  }
}

TEST_CASE("one-step long value increases with q", "[core_mdp][property]") {
  double previous = -1e9;
  for (int i = 1; i < 100; ++i) {
    const double q = i / 100.0;
    const double current = solve_q(problem_for(StaticBelief{q}, 1)).q(0, StaticBelief{q}, kLong);
    CHECK(current > previous);
    previous = current;
  }
}

TEST_CASE("discount multiplies step t by discount^t", "[core_mdp]") {
  DecisionProblem problem = problem_for(StaticBelief{0.6}, 3);
  problem.per_step_discount = 0.5;
  const QTable table = solve_q(problem);
  // 2 + 0.5 * 2 + 0.25 * 2
  CHECK(table.q(0, StaticBelief{0.6}, kLong) == Approx(3.5).margin(1e-12));
  CHECK(value(table, 2, StaticBelief{0.6}) == Approx(0.5).margin(1e-12));
}

TEST_CASE("lookahead matches stored entries", "[core_mdp]") {
  const Belief b = BetaBelief{2.0, 5.0};
  const QTable table = solve_q(problem_for(b, 4));
  for (const Action& a : table.problem().action_set)
    CHECK(lookahead_q(table, 0, b, a) == Approx(table.q(0, b, a)).margin(1e-12));
  Belief last = b;
  for (int i = 0; i < 4; ++i) last = update(last, Move::Up);
  CHECK(lookahead_q(table, 4, last, kLong) == 0.0);
}
