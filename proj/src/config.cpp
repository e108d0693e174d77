#include "otl/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "otl/csv.h"
#include "otl/errors.h"

namespace otl {

ConfigParseError::ConfigParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

MarketModel RunConfig::market() const {
  MarketModel model;
  model.u = market_u;
  model.d = market_d;
  model.p_up = market_p;
  model.initial_wealth = market_initial_wealth;
  return model;
}

Belief RunConfig::belief() const {
  switch (belief_kind) {
    case BeliefKind::Static: return StaticBelief{belief_q0};
    case BeliefKind::Mirror: return MirrorBelief{belief_confidence, Move::Up};
    case BeliefKind::BetaBernoulli: return BetaBelief{belief_alpha, belief_beta};
  }
  return StaticBelief{belief_q0};
}

DecisionProblem RunConfig::problem() const {
  DecisionProblem problem;
  problem.horizon = problem_horizon;
  problem.ticks = {market_u, market_d};
  problem.action_set = problem_actions;
  problem.initial_belief = belief();
  problem.initial_wealth = market_initial_wealth;
  problem.per_step_discount = problem_discount;
  return problem;
}

SimConfig RunConfig::sim() const {
  SimConfig cfg;
  cfg.n_paths = sim_paths;
  cfg.horizon = problem_horizon;
  cfg.master_seed = sim_seed;
  return cfg;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_integer(std::string_view text) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ValidationError("not an integer: '" + std::string(text) + "'");
  return value;
}

BeliefKind parse_belief_kind(std::string_view text) {
  if (text == "static") return BeliefKind::Static;
  if (text == "mirror") return BeliefKind::Mirror;
  if (text == "beta") return BeliefKind::BetaBernoulli;
  throw ValidationError("belief.kind must be static, mirror or beta, got '" + std::string(text) + "'");
}

std::string to_key_value(BeliefKind kind) {
  switch (kind) {
    case BeliefKind::Static: return "static";
    case BeliefKind::Mirror: return "mirror";
    case BeliefKind::BetaBernoulli: return "beta";
  }
  return "static";
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"market.u", [](RunConfig& c, std::string_view v) { c.market_u = parse_number(v); }},
      {"market.d", [](RunConfig& c, std::string_view v) { c.market_d = parse_number(v); }},
      {"market.p", [](RunConfig& c, std::string_view v) { c.market_p = parse_number(v); }},
      {"market.initial_wealth", [](RunConfig& c, std::string_view v) { c.market_initial_wealth = parse_number(v); }},
      {"problem.horizon", [](RunConfig& c, std::string_view v) { c.problem_horizon = parse_integer<int>(v); }},
      {"problem.actions", [](RunConfig& c, std::string_view v) { c.problem_actions = parse_action_list(v); }},
      {"problem.discount", [](RunConfig& c, std::string_view v) { c.problem_discount = parse_number(v); }},
      {"belief.kind", [](RunConfig& c, std::string_view v) { c.belief_kind = parse_belief_kind(v); }},
      {"belief.q0", [](RunConfig& c, std::string_view v) { c.belief_q0 = parse_number(v); }},
      {"belief.confidence", [](RunConfig& c, std::string_view v) { c.belief_confidence = parse_number(v); }},
      {"belief.alpha", [](RunConfig& c, std::string_view v) { c.belief_alpha = parse_number(v); }},
      {"belief.beta", [](RunConfig& c, std::string_view v) { c.belief_beta = parse_number(v); }},
      {"sim.paths", [](RunConfig& c, std::string_view v) { c.sim_paths = parse_integer<int>(v); }},
      {"sim.seed", [](RunConfig& c, std::string_view v) { c.sim_seed = parse_integer<std::uint64_t>(v); }},
  };
  return table;
}

// Range checks tied to a single key, so errors can point at its line.
void check_key(const RunConfig& c, std::string_view key) {
  if (key == "market.u" && !(c.market_u > 0.0)) throw ValidationError("market.u must be > 0");
  if (key == "market.d" && !(c.market_d < 0.0)) throw ValidationError("market.d must be < 0");
  if (key == "market.p" && !(c.market_p >= 0.0 && c.market_p <= 1.0))
    throw ValidationError("market.p must lie in [0, 1]");
  if (key == "problem.horizon" && c.problem_horizon < 0) throw ValidationError("problem.horizon must be >= 0");
  if (key == "problem.discount" && !(c.problem_discount > 0.0 && c.problem_discount <= 1.0))
    throw ValidationError("problem.discount must lie in (0, 1]");
  if (key == "belief.q0") validate(Belief{StaticBelief{c.belief_q0}});
  if (key == "belief.confidence") validate(Belief{MirrorBelief{c.belief_confidence}});
  if (key == "belief.alpha" && !(c.belief_alpha > 0.0)) throw ValidationError("belief.alpha must be > 0");
  if (key == "belief.beta" && !(c.belief_beta > 0.0)) throw ValidationError("belief.beta must be > 0");
  if (key == "sim.paths" && c.sim_paths < 1) throw ValidationError("sim.paths must be >= 1");
}

}  // namespace

std::vector<Action> parse_action_list(std::string_view text) {
  std::vector<Action> actions;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    Action action;
    if (item == "long") {
      action = Action::long_();
    } else if (item == "neutral") {
      action = Action::neutral();
    } else if (item == "short") {
      action = Action::short_();
    } else {
      throw ValidationError("unknown action '" + std::string(item) + "' (expected long, neutral or short)");
    }
    for (const auto& existing : actions) {
      if (existing == action) throw ValidationError("duplicate action '" + std::string(item) + "'");
    }
    actions.push_back(action);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return actions;
}

void validate(const RunConfig& config) {
  try {
    validate(config.market());
    validate(config.problem());
  } catch (const ValidationError& e) {
    throw ConfigParseError(0, e.what());
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  int line_number = 0;
  while (!text.empty()) {
    ++line_number;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigParseError(line_number, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigParseError(line_number, "unknown key '" + std::string(key) + "'");
    if (!seen.emplace(key).second) throw ConfigParseError(line_number, "duplicate key '" + std::string(key) + "'");
    try {
      it->second(config, value);
      check_key(config, key);
    } catch (const ValidationError& e) {
      throw ConfigParseError(line_number, std::string(key) + ": " + e.what());
    }
  }
  validate(config);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigParseError(0, "cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string dump_config(const RunConfig& c) {
  std::string actions;
  for (const auto& action : c.problem_actions) actions += (actions.empty() ? "" : ",") + to_string(action);
  std::ostringstream out;
  out << "market.u = " << format_number(c.market_u) << '\n'
      << "market.d = " << format_number(c.market_d) << '\n'
      << "market.p = " << format_number(c.market_p) << '\n'
      << "market.initial_wealth = " << format_number(c.market_initial_wealth) << '\n'
      << "problem.horizon = " << c.problem_horizon << '\n'
      << "problem.actions = " << actions << '\n'
      << "problem.discount = " << format_number(c.problem_discount) << '\n'
      << "belief.kind = " << to_key_value(c.belief_kind) << '\n'
      << "belief.q0 = " << format_number(c.belief_q0) << '\n'
      << "belief.confidence = " << format_number(c.belief_confidence) << '\n'
      << "belief.alpha = " << format_number(c.belief_alpha) << '\n'
      << "belief.beta = " << format_number(c.belief_beta) << '\n'
      << "sim.paths = " << c.sim_paths << '\n'
      << "sim.seed = " << c.sim_seed << '\n';
  return out.str();
}

}  // namespace otl
