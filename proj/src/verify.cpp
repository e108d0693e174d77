#include "otl/verify.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "otl/core_mdp.h"
#include "otl/csv.h"
#include "otl/errors.h"
#include "otl/market.h"

namespace otl::verify {

std::string to_string(Status status) {
  switch (status) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Info: return "info";
  }
  return "?";
}

bool Report::overall() const {
  return std::none_of(cases.begin(), cases.end(), [](const Case& c) { return c.status == Status::Fail; });
}

void Report::add(std::string description, bool passed, std::vector<std::pair<std::string, double>> measured) {
  cases.push_back(Case{std::move(description), passed ? Status::Pass : Status::Fail, std::move(measured)});
}

void Report::info(std::string description, std::vector<std::pair<std::string, double>> measured) {
  cases.push_back(Case{std::move(description), Status::Info, std::move(measured)});
}

namespace {

const std::vector<Action>& default_actions() {
  static const std::vector<Action> actions = {Action::neutral(), Action::long_(), Action::short_()};
  return actions;
}

Action greedy_action(const Belief& belief, const std::vector<Action>& actions, const Ticks& ticks) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < actions.size(); ++a) {
    if (expected_step_reward(belief, actions[a], ticks) > expected_step_reward(belief, actions[best], ticks))
      best = a;
  }
  return actions[best];
}

DecisionProblem make_problem(const Belief& belief, int horizon, const Ticks& ticks,
                             std::vector<Action> actions = default_actions()) {
  DecisionProblem problem;
  problem.horizon = horizon;
  problem.ticks = ticks;
  problem.action_set = std::move(actions);
  problem.initial_belief = belief;
  return problem;
}

void require_open_unit_half(const std::vector<double>& q_grid) {
  for (double q : q_grid) {
    if (!(q > 0.5 && q < 1.0)) throw ValidationError("q grid values must lie in (0.5, 1), got " + format_number(q));
  }
}

std::string label(const char* name, double value) { return std::string(name) + "=" + format_number(value); }

}  // namespace

double enumerate_q0(const Belief& initial, const Action& first, const Ticks& ticks, int horizon,
                    const std::vector<Action>& actions, double discount) {
  if (horizon == 0) return 0.0;
  // Only the move sequences are used; probabilities come from the belief.
  const MarketModel sequences{ticks.up, ticks.down, 0.5};
  double q0 = 0.0;
  for (const auto& path : enumerate_paths(sequences, horizon)) {
    Belief belief = initial;
    double probability = 1.0;
    double total = 0.0;
    double weight = 1.0;
    for (std::size_t t = 0; t < path.moves.size(); ++t) {
      const Move move = path.moves[t];
      const Action action = t == 0 ? first : greedy_action(belief, actions, ticks);
      const double up = predictive(belief);
      probability *= move == Move::Up ? up : 1.0 - up;
      total += weight * step_reward(action, move, ticks);
      weight *= discount;
      belief = update(belief, move);
    }
    q0 += probability * total;
  }
  return q0;
}

Report check_bellman(int max_horizon) {
  if (max_horizon < 0 || max_horizon > 8) throw ValidationError("check_bellman needs 0 <= max_horizon <= 8");
  Report report{"bellman", {}};
  const Ticks ticks{10.0, -10.0};
  const std::vector<Belief> beliefs = {StaticBelief{0.6}, MirrorBelief{0.6, Move::Up}, BetaBelief{3.0, 2.0}};
  for (const Belief& belief : beliefs) {
    for (int horizon = 0; horizon <= max_horizon; ++horizon) {
      const QTable table = solve_q(make_problem(belief, horizon, ticks));
      double deviation = 0.0;
      std::vector<std::pair<std::string, double>> measured;
      for (const Action& action : default_actions()) {
        const double solver = table.q(0, belief, action);
        const double oracle = enumerate_q0(belief, action, ticks, horizon, default_actions());
        deviation = std::max(deviation, std::abs(solver - oracle));
        measured.emplace_back("Q0(" + to_string(action) + ")", solver);
      }
      measured.emplace_back("max_abs_deviation", deviation);
      report.add(describe(belief) + ", T=" + std::to_string(horizon) + ": solver matches path enumeration",
                 deviation <= kOracleTolerance, std::move(measured));

      bool consistent = true;
      for (int t = 0; t <= horizon; ++t) {
        for (const auto& node : table.stage(t)) {
          consistent = consistent && node.value == *std::max_element(node.q.begin(), node.q.end());
        }
        if (t == horizon) {
          for (const auto& node : table.stage(t)) consistent = consistent && node.value == 0.0;
        }
      }
      report.add(describe(belief) + ", T=" + std::to_string(horizon) + ": V = max_a Q everywhere, V(T) = 0",
                 consistent, {{"states", static_cast<double>(table.state_count())}});
    }
  }
  return report;
}

Report check_example21(const std::vector<double>& q_grid) {
  require_open_unit_half(q_grid);
  Report report{"example21", {}};
  const Ticks ticks{10.0, -10.0};
  for (double q : q_grid) {
    for (int horizon = 1; horizon <= 5; ++horizon) {
      const Belief belief = StaticBelief{q};
      const QTable table = solve_q(make_problem(belief, horizon, ticks));
      const double q_long = table.q(0, belief, Action::long_());
      const double q_neutral = table.q(0, belief, Action::neutral());
      const double q_short = table.q(0, belief, Action::short_());
      const bool chain = q_long - q_neutral > kStrictMargin && q_neutral - q_short > kStrictMargin;
      report.add(label("q", q) + ", T=" + std::to_string(horizon) + ": Q(Long) > Q(Neutral) > Q(Short)", chain,
                 {{"Q(long)", q_long}, {"Q(neutral)", q_neutral}, {"Q(short)", q_short}});
    }
  }
  return report;
}

Report check_no_averaging(const std::vector<double>& q_grid, const std::vector<double>& tick_scales,
                          int max_remaining_horizon) {
  require_open_unit_half(q_grid);
  if (max_remaining_horizon < 1) throw ValidationError("max_remaining_horizon must be >= 1");
  Report report{"averaging", {}};
  const Action doubled = Action::long_(2);

  for (double q : q_grid) {
    for (double scale : tick_scales) {
      if (!(scale > 0.0)) throw ValidationError("tick scales must be positive");
      const Ticks ticks{10.0 * scale, -10.0 * scale};
      for (int remaining = 1; remaining <= max_remaining_horizon; ++remaining) {
        const Belief before = MirrorBelief{q, Move::Up};
        const QTable table = solve_q(make_problem(before, remaining + 1, ticks));

        // The premise: long is optimal and adding to it looks attractive under q.
        const bool premise = optimal_action(table, 0, before) == Action::long_() &&
                             lookahead_q(table, 0, before, doubled) > table.q(0, before, Action::neutral());

        // One losing step later, the belief has absorbed the down move.
        const Belief after = update(before, Move::Down);
        const double q_neutral = table.q(1, after, Action::neutral());
        const double q_hold = table.q(1, after, Action::long_());
        const double q_double = lookahead_q(table, 1, after, doubled);
        const double margin = 10.0 * scale * (2.0 * q - 1.0);
        const double tolerance = kOracleTolerance * std::max(1.0, 2.0 * margin);

        const bool flips = q_neutral - q_hold > kStrictMargin && q_neutral - q_double > kStrictMargin;
        const bool linear = std::abs((q_neutral - q_hold) - margin) <= tolerance &&
                            std::abs((q_neutral - q_double) - 2.0 * margin) <= tolerance;
        report.add(label("q", q) + ", " + label("scale", scale) + ", remaining T=" + std::to_string(remaining) +
                       ": after a loss Q(Neutral) > Q(Long) and Q(Neutral) > Q(Long x2)",
                   premise && flips && linear,
                   {{"Q(neutral)", q_neutral},
                    {"Q(long)", q_hold},
                    {"Q(longx2)", q_double},
                    {"gap_long", q_neutral - q_hold},
                    {"gap_longx2", q_neutral - q_double},
                    {"expected_gap_long", margin}});
      }
    }
  }

  // Without learning from the move the trader is tempted to stay long.
  {
    const double q = 0.6;
    const Belief unchanged = StaticBelief{q};
    const QTable table = solve_q(make_problem(unchanged, 2, {10.0, -10.0}));
    report.info("unchanged Static(q=0.6) after a loss: Long still preferred (no update, no flip)",
                {{"Q(neutral)", table.q(1, unchanged, Action::neutral())},
                 {"Q(long)", table.q(1, unchanged, Action::long_())}});
  }
  // Conjugate updating may need more than one loss before it flips.
  {
    const Belief prior = BetaBelief{6.0, 4.0};
    const Belief posterior = update(prior, Move::Down);
    const QTable table = solve_q(make_problem(prior, 2, {10.0, -10.0}));
    const bool still_long = optimal_action(table, 1, posterior) == Action::long_();
    report.info(std::string("Beta(6,4) after a loss: ") + (still_long ? "Bayes does not flip" : "Bayes flips"),
                {{"predictive", predictive(posterior)},
                 {"Q(neutral)", table.q(1, posterior, Action::neutral())},
                 {"Q(long)", table.q(1, posterior, Action::long_())}});
  }
  return report;
}

namespace {

double enumerate_price(const MarketModel& model, const DividendSpec& div, int horizon) {
  double price = 0.0;
  for (const auto& path : enumerate_paths(model, horizon)) {
    double level = div.initial_level;
    double total = 0.0;
    for (std::size_t t = 0; t < path.moves.size(); ++t) {
      level += path.moves[t] == Move::Up ? model.u : model.d;
      if (div.per_step_dividend) total += div.per_step_dividend(static_cast<int>(t) + 1, div.actions.front(), level);
    }
    total += div.terminal_payoff(level);
    price += *path.probability * total;
  }
  return price;
}

}  // namespace

Report check_price(int max_horizon) {
  if (max_horizon < 0 || max_horizon > 12) throw ValidationError("check_price needs 0 <= max_horizon <= 12");
  Report report{"price", {}};
  auto model_with = [](double p) { return MarketModel{1.0, -1.0, p, 100.0}; };

  DividendSpec identity;
  identity.terminal_payoff = [](double level) { return level; };
  identity.initial_level = 100.0;

  for (int horizon = 0; horizon <= max_horizon; ++horizon) {
    const double price = price_process(model_with(0.5), identity, horizon);
    report.add("p=0.5, identity payoff, T=" + std::to_string(horizon) + ": price equals the initial level",
               price == 100.0, {{"price", price}});
  }
  {
    const double price = price_process(model_with(0.6), identity, 1);
    report.add("p=0.6, identity payoff, T=1: price 100.2", std::abs(price - 100.2) <= 1e-12, {{"price", price}});
  }

  DividendSpec dividends = identity;
  dividends.per_step_dividend = [](int t, const Action&, double level) {
    return 0.01 * level * std::pow(0.99, t);
  };
  for (double p : {0.3, 0.5, 0.6}) {
    for (int horizon = 0; horizon <= max_horizon; ++horizon) {
      const double backward = price_process(model_with(p), dividends, horizon);
      const double oracle = enumerate_price(model_with(p), dividends, horizon);
      report.add(label("p", p) + ", discounted level dividends, T=" + std::to_string(horizon) +
                     ": backward induction matches enumeration",
                 std::abs(backward - oracle) <= kOracleTolerance,
                 {{"backward", backward}, {"enumeration", oracle}, {"abs_deviation", std::abs(backward - oracle)}});
    }
  }

  DividendSpec nothing;
  nothing.terminal_payoff = [](double) { return 0.0; };
  nothing.per_step_dividend = [](int, const Action&, double) { return 0.0; };
  {
    const double price = price_process(model_with(0.6), nothing, max_horizon);
    report.add("zero dividends and payoff: price 0", price == 0.0, {{"price", price}});
  }

  // With action-dependent dividends the max is no longer vacuous.
  DividendSpec choice = identity;
  choice.actions = {Action::neutral(), Action::long_()};
  choice.per_step_dividend = [](int, const Action& a, double level) {
    return a.direction() == Direction::Long ? 0.1 * (level - 100.0) : 0.0;
  };
  {
    const int horizon = std::min(max_horizon, 4);
    report.info("p=0.6, dividend paid only when long: max over actions",
                {{"price", price_process(model_with(0.6), choice, horizon)},
                 {"price_without_dividend", price_process(model_with(0.6), identity, horizon)}});
  }
  return report;
}

std::vector<double> default_q_grid() {
  std::vector<double> grid;
  for (int k = 11; k <= 19; ++k) grid.push_back(k / 20.0);
  return grid;
}

std::vector<double> default_tick_scales() { return {1.0, 10.0, 100.0}; }

std::vector<Report> run_suite(const std::string& name) {
  std::vector<Report> reports;
  const bool all = name == "all";
  if (all || name == "bellman") reports.push_back(check_bellman(8));
  if (all || name == "example21") reports.push_back(check_example21(default_q_grid()));
  if (all || name == "averaging") reports.push_back(check_no_averaging(default_q_grid(), default_tick_scales(), 5));
  if (all || name == "price") reports.push_back(check_price(12));
  if (reports.empty()) {
    throw ConfigError("unknown verify suite '" + name + "' (expected all, bellman, example21, averaging or price)");
  }
  return reports;
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << "== " << report.suite << " ==\n";
  for (const auto& c : report.cases) {
    std::string tag = to_string(c.status);
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    out << "[" << tag << "] " << c.description;
    if (!c.measured.empty()) {
      out << "  (";
      for (std::size_t i = 0; i < c.measured.size(); ++i) {
        out << (i ? ", " : "") << c.measured[i].first << "=" << format_number(c.measured[i].second);
      }
      out << ")";
    }
    out << '\n';
  }
  out << report.suite << ": " << (report.overall() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string render_json(const std::vector<Report>& reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& report : reports) {
    nlohmann::ordered_json suite;
    suite["suite"] = report.suite;
    suite["cases"] = nlohmann::ordered_json::array();
    for (const auto& c : report.cases) {
      nlohmann::ordered_json measured = nlohmann::ordered_json::object();
      for (const auto& [key, value] : c.measured) measured[key] = value;
      suite["cases"].push_back({{"description", c.description}, {"status", to_string(c.status)}, {"measured", measured}});
    }
    suite["overall"] = report.overall();
    doc.push_back(std::move(suite));
  }
  return doc.dump(2) + "\n";
}

}  // namespace otl::verify
