#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "otl/core_mdp.h"
#include "otl/sim.h"

namespace otl {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Throws ValidationError unless `text` is entirely a finite number.
double parse_number(std::string_view text);

/// Like format_number, but always shows a decimal point ("2.0").
std::string format_display(double value);

inline constexpr std::string_view kQTableHeader = "t,belief_id,action,q_value,is_optimal";
inline constexpr std::string_view kPathHeader = "path_id,t,move,action,size,reward,wealth";
inline constexpr std::string_view kStatsHeader =
    "policy,mean_terminal,std_terminal,q05,q25,q50,q75,q95,mean_max_drawdown,ruin_fraction";
inline constexpr std::string_view kDifferenceHeader =
    "first,second,mean_difference,std_error,confidence,lower,upper";

void write_qtable_csv(std::ostream& out, const QTable& table);
void write_paths_csv(std::ostream& out, const std::vector<WealthPath>& paths);
void write_stats_row(std::ostream& out, const std::string& policy, const Stats& stats);
void write_stats_csv(std::ostream& out, const std::vector<SimResult>& rows);
void write_differences_csv(std::ostream& out, const ComparisonTable& table);

}  // namespace otl
