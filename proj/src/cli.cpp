#include "otl/cli.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otl/config.h"
#include "otl/core_mdp.h"
#include "otl/csv.h"
#include "otl/errors.h"
#include "otl/policies.h"
#include "otl/sim.h"
#include "otl/verify.h"

namespace otl::cli {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

RunConfig read_config(const std::string& path) {
  try {
    return load_config(path);
  } catch (const ConfigParseError& e) {
    // Re-label with the file name so the message reads file:line: ...
    if (e.line() > 0) {
      std::string message = e.what();
      message = message.substr(message.find(": ") + 2);
      throw ConfigParseError(e.line(), path + ":" + std::to_string(e.line()) + ": " + message);
    }
    throw;
  }
}

void print_solution(std::ostream& out, const QTable& table) {
  const auto& actions = table.problem().action_set;
  out << "Q-table for " << describe(table.problem().initial_belief) << ", T=" << table.horizon() << '\n';
  for (int t = 0; t < table.horizon(); ++t) {
    for (const auto& node : table.stage(t)) {
      for (std::size_t a = 0; a < actions.size(); ++a) {
        out << "t=" << t << ", " << display_name(actions[a]) << ", " << format_display(node.q[a]) << "  ["
            << node.id << "]" << (a == node.best ? " *" : "") << '\n';
      }
    }
  }
  out << "optimal policy\n";
  for (int t = 0; t < table.horizon(); ++t) {
    for (const auto& node : table.stage(t)) {
      out << "t=" << t << " → " << display_name(actions[node.best]) << "  [" << node.id << "]\n";
    }
  }
  out << "V(0) = " << format_display(table.stage(0).front().value) << '\n';
}

std::vector<Policy> build_policies(const RunConfig& config, const std::vector<std::string>& names) {
  const DecisionProblem problem = config.problem();
  std::shared_ptr<const QTable> table;
  std::vector<Policy> policies;
  for (const auto& name : names) {
    PolicySpec spec;
    spec.kind = parse_policy_kind(name);
    if (spec.kind == PolicyKind::BellmanOptimal) {
      if (!table) table = std::make_shared<const QTable>(solve_q(problem));
      spec.table = table;
    }
    policies.push_back(make_policy(spec, problem));
  }
  return policies;
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> names;
  std::stringstream stream(list);
  std::string name;
  while (std::getline(stream, name, ',')) {
    if (!name.empty()) names.push_back(name);
  }
  if (names.empty()) throw ConfigError("no policies given");
  return names;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bellman-optimal trading lab: subjective-belief solver, binomial market simulator, verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  bool dump = false;
  auto* solve = app.add_subcommand("solve", "solve the Q-table and print the optimal policy per stage");
  solve->add_option("--config", config_path, "config file")->required();
  solve->add_option("--out", out_path, "write the Q-table as CSV");
  solve->add_flag("--dump-config", dump, "print the effective configuration and exit");

  std::string policy_name;
  std::string stats_path;
  int threads = 1;
  auto* simulate = app.add_subcommand("simulate", "run one policy and emit per-path CSV plus summary statistics");
  simulate->add_option("--config", config_path, "config file")->required();
  simulate->add_option("--policy", policy_name, "bellman, cutloss, avgdown, buyhold or alwayslong")->required();
  simulate->add_option("--out", out_path, "per-path CSV")->required();
  simulate->add_option("--stats", stats_path, "also write the statistics CSV here");
  simulate->add_option("--threads", threads, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);

  std::string policy_list;
  std::string diff_path;
  auto* comparison = app.add_subcommand("compare", "compare policies on common random numbers");
  comparison->add_option("--config", config_path, "config file")->required();
  comparison->add_option("--policies", policy_list, "comma-separated policy names")->required();
  comparison->add_option("--out", out_path, "statistics CSV, one row per policy")->required();
  comparison->add_option("--diff", diff_path, "also write the pairwise mean differences CSV here");
  comparison->add_option("--threads", threads, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);

  std::string suite = "all";
  std::string json_path;
  auto* verify_cmd = app.add_subcommand("verify", "run the verification checkers");
  verify_cmd->add_option("--suite", suite, "all, bellman, example21, averaging or price")
      ->check(CLI::IsMember({"all", "bellman", "example21", "averaging", "price"}));
  verify_cmd->add_option("--json", json_path, "write the reports as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (*solve) {
      const RunConfig config = read_config(config_path);
      if (dump) {
        out << dump_config(config);
        return kSuccess;
      }
      const QTable table = solve_q(config.problem());
      print_solution(out, table);
      if (!out_path.empty()) {
        auto file = open_output(out_path);
        write_qtable_csv(file, table);
      }
      return kSuccess;
    }

    if (*simulate) {
      const RunConfig config = read_config(config_path);
      const Policy policy = build_policies(config, {policy_name}).front();
      SimConfig cfg = config.sim();
      cfg.threads = threads;
      const SimResult result = run(policy, config.market(), cfg);
      {
        auto file = open_output(out_path);
        write_paths_csv(file, result.paths);
      }
      write_stats_csv(out, {result});
      if (!stats_path.empty()) {
        auto file = open_output(stats_path);
        write_stats_csv(file, {result});
      }
      return kSuccess;
    }

    if (*comparison) {
      const RunConfig config = read_config(config_path);
      const auto policies = build_policies(config, split_names(policy_list));
      SimConfig cfg = config.sim();
      cfg.threads = threads;
      cfg.keep_paths = false;
      const ComparisonTable table = compare(policies, config.market(), cfg);
      {
        auto file = open_output(out_path);
        write_stats_csv(file, table.rows);
      }
      write_stats_csv(out, table.rows);
      write_differences_csv(out, table);
      if (!diff_path.empty()) {
        auto file = open_output(diff_path);
        write_differences_csv(file, table);
      }
      return kSuccess;
    }

    const auto reports = verify::run_suite(suite);
    bool overall = true;
    for (const auto& report : reports) {
      out << verify::render_text(report);
      overall = overall && report.overall();
    }
    out << "overall: " << (overall ? "PASS" : "FAIL") << '\n';
    if (!json_path.empty()) {
      auto file = open_output(json_path);
      file << verify::render_json(reports);
    }
    return overall ? kSuccess : kVerificationFailure;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const ConfigParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace otl::cli
