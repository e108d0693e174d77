#include "otl/beliefs.h"

#include <cmath>
#include <type_traits>

#include "otl/csv.h"
#include "otl/errors.h"

namespace otl {

std::string to_string(Move move) { return move == Move::Up ? "up" : "down"; }

void validate(const Ticks& ticks) {
  if (!(std::isfinite(ticks.up) && std::isfinite(ticks.down) && ticks.up > 0.0 && ticks.down < 0.0)) {
    throw ValidationError("ticks must satisfy u > 0 > d, got u=" + format_number(ticks.up) +
                          " d=" + format_number(ticks.down));
  }
}

BeliefKind kind_of(const Belief& belief) {
  return static_cast<BeliefKind>(belief.index());
}

void validate(const Belief& belief) {
  std::visit(
      [](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, StaticBelief>) {
          if (!(b.q_up > 0.0 && b.q_up < 1.0))
            throw ValidationError("static belief needs 0 < q < 1, got " + format_number(b.q_up));
        } else if constexpr (std::is_same_v<T, MirrorBelief>) {
          if (!(b.confidence >= 0.5 && b.confidence < 1.0))
            throw ValidationError("mirror belief needs 0.5 <= confidence < 1, got " +
                                  format_number(b.confidence));
        } else {
          if (!(b.prior_alpha > 0.0 && b.prior_beta > 0.0 && std::isfinite(b.prior_alpha) &&
                std::isfinite(b.prior_beta)))
            throw ValidationError("beta belief needs alpha > 0 and beta > 0");
          if (b.ups < 0 || b.downs < 0) throw ValidationError("beta belief counts must be non-negative");
        }
      },
      belief);
}

double predictive(const Belief& belief) {
  return std::visit(
      [](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, StaticBelief>) {
          return b.q_up;
        } else if constexpr (std::is_same_v<T, MirrorBelief>) {
          return b.favored == Move::Up ? b.confidence : 1.0 - b.confidence;
        } else {
          return b.alpha() / (b.alpha() + b.beta());
        }
      },
      belief);
}

Belief update(const Belief& belief, Move observed) {
  return std::visit(
      [observed](auto b) -> Belief {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, MirrorBelief>) {
          b.favored = observed;
        } else if constexpr (std::is_same_v<T, BetaBelief>) {
          (observed == Move::Up ? b.ups : b.downs) += 1;
        }
        return b;
      },
      belief);
}

double expected_step_reward(const Belief& belief, const Action& action, const Ticks& ticks) {
  if (action.direction() == Direction::Neutral) return 0.0;
  const double q = predictive(belief);
  return action.signed_size() * (q * ticks.up + (1.0 - q) * ticks.down);
}

double step_reward(const Action& action, Move move, const Ticks& ticks) {
  if (action.direction() == Direction::Neutral) return 0.0;
  return action.signed_size() * (move == Move::Up ? ticks.up : ticks.down);
}

std::string belief_id(const Belief& belief) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, StaticBelief>) {
          return "static:" + format_number(b.q_up);
        } else if constexpr (std::is_same_v<T, MirrorBelief>) {
          return "mirror:" + format_number(b.confidence) + ":" + to_string(b.favored);
        } else {
          return "beta:+" + std::to_string(b.ups) + ":+" + std::to_string(b.downs);
        }
      },
      belief);
}

std::string describe(const Belief& belief) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, StaticBelief>) {
          return "Static(q=" + format_number(b.q_up) + ")";
        } else if constexpr (std::is_same_v<T, MirrorBelief>) {
          return "Mirror(confidence=" + format_number(b.confidence) + ", favored " +
                 to_string(b.favored) + ")";
        } else {
          return "Beta(" + format_number(b.alpha()) + ", " + format_number(b.beta()) + ")";
        }
      },
      belief);
}

}  // namespace otl
