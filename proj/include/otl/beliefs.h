#pragma once

#include <string>
#include <variant>

#include "otl/action.h"

namespace otl {

enum class Move { Up, Down };

std::string to_string(Move move);

/// Price ticks in money per unit stake. Valid when up > 0 > down.
struct Ticks {
  double up = 10.0;
  double down = -10.0;

  friend bool operator==(const Ticks&, const Ticks&) = default;
};

void validate(const Ticks& ticks);

/// Fixed subjective probability of an up move; never learns.
struct StaticBelief {
  double q_up = 0.5;

  friend bool operator==(const StaticBelief&, const StaticBelief&) = default;
};

/// Believes the next move repeats the last observed one with probability
/// `confidence`.
struct MirrorBelief {
  double confidence = 0.5;
  Move favored = Move::Up;

  friend bool operator==(const MirrorBelief&, const MirrorBelief&) = default;
};

/// Beta prior over the up probability plus the observed move counts.
/// Keeping the counts as integers gives lattice states an exact identity.
struct BetaBelief {
  double prior_alpha = 1.0;
  double prior_beta = 1.0;
  int ups = 0;
  int downs = 0;

  double alpha() const { return prior_alpha + ups; }
  double beta() const { return prior_beta + downs; }

  friend bool operator==(const BetaBelief&, const BetaBelief&) = default;
};

using Belief = std::variant<StaticBelief, MirrorBelief, BetaBelief>;

enum class BeliefKind { Static, Mirror, BetaBernoulli };

BeliefKind kind_of(const Belief& belief);

/// Throws ValidationError unless the belief's parameters are in range.
void validate(const Belief& belief);

/// Subjective probability that the next move is Up.
double predictive(const Belief& belief);

/// The belief after observing `observed`.
Belief update(const Belief& belief, Move observed);

/// Expected one-step profit of holding `action` for one move under `belief`.
double expected_step_reward(const Belief& belief, const Action& action, const Ticks& ticks);

/// Realized one-step profit of `action` when the market moves `move`.
double step_reward(const Action& action, Move move, const Ticks& ticks);

/// Stable textual identity, CSV-safe (no commas):
///   static:0.6, mirror:0.6:up, beta:+3:+1 (count offsets from the prior).
std::string belief_id(const Belief& belief);

/// Human-readable description including the full parameters.
std::string describe(const Belief& belief);

}  // namespace otl
