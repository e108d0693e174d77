#pragma once

#include <string>
#include <utility>
#include <vector>

#include "otl/beliefs.h"

namespace otl::verify {

enum class Status { Pass, Fail, Info };

std::string to_string(Status status);

struct Case {
  std::string description;
  Status status = Status::Pass;
  std::vector<std::pair<std::string, double>> measured;
};

struct Report {
  std::string suite;
  std::vector<Case> cases;

  /// True iff no case failed. Info cases never fail a report.
  bool overall() const;
  void add(std::string description, bool passed,
           std::vector<std::pair<std::string, double>> measured = {});
  void info(std::string description, std::vector<std::pair<std::string, double>> measured = {});
};

/// Strict inequalities must clear this margin.
inline constexpr double kStrictMargin = 1e-9;
inline constexpr double kOracleTolerance = 1e-9;

/// Q(0, b0, a) of the solver against a 2^T path-enumeration oracle.
///
/// Because the market does not react to the trader, the belief trajectory is
/// a function of the path alone and the continuation is optimized by the
/// greedy action at every later step. The oracle weights each path by its
/// subjective probability and sums realized rewards along it.
double enumerate_q0(const Belief& initial, const Action& first, const Ticks& ticks, int horizon,
                    const std::vector<Action>& actions, double discount = 1.0);

/// Solver vs. enumeration for Static(0.6), Mirror(0.6), Beta(3,2) and every
/// T in [0, max_horizon].
Report check_bellman(int max_horizon = 8);

/// Q0(Long) > Q0(Neutral) > Q0(Short) under Static(q), T = 1..5.
Report check_example21(const std::vector<double>& q_grid);

/// After a losing Long step under the Mirror update, staying in (or adding
/// to) the position is worse than going flat.
Report check_no_averaging(const std::vector<double>& q_grid, const std::vector<double>& tick_scales,
                          int max_remaining_horizon = 5);

/// Backward-induced price against enumeration, for T in [0, max_horizon].
Report check_price(int max_horizon = 12);

/// q in {0.55, 0.60, ..., 0.95}.
std::vector<double> default_q_grid();
std::vector<double> default_tick_scales();

std::vector<Report> run_suite(const std::string& name);

std::string render_text(const Report& report);
/// {"suite": ..., "cases": [{"description", "status", "measured"}], "overall": bool}
std::string render_json(const std::vector<Report>& reports);

}  // namespace otl::verify
