#include "otl/csv.h"

#include <charconv>
#include <cmath>
#include <system_error>

#include "otl/errors.h"

namespace otl {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw ValidationError("cannot format number");
  return std::string(buffer, end);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(value)) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_display(double value) {
  std::string text = format_number(value);
  if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
  return text;
}

void write_qtable_csv(std::ostream& out, const QTable& table) {
  out << kQTableHeader << '\n';
  const auto& actions = table.problem().action_set;
  for (int t = 0; t <= table.horizon(); ++t) {
    for (const auto& node : table.stage(t)) {
      for (std::size_t a = 0; a < actions.size(); ++a) {
        out << t << ',' << node.id << ',' << to_string(actions[a]) << ',' << format_number(node.q[a])
            << ',' << (a == node.best ? 1 : 0) << '\n';
      }
    }
  }
}

void write_paths_csv(std::ostream& out, const std::vector<WealthPath>& paths) {
  out << kPathHeader << '\n';
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (const auto& step : paths[i].steps) {
      out << i << ',' << step.t << ',' << to_string(step.move) << ','
          << to_string(step.action.direction()) << ',' << step.action.size() << ','
          << format_number(step.reward) << ',' << format_number(step.wealth_after) << '\n';
    }
  }
}

void write_stats_row(std::ostream& out, const std::string& policy, const Stats& s) {
  out << policy << ',' << format_number(s.mean_terminal) << ',' << format_number(s.std_terminal) << ','
      << format_number(s.q05) << ',' << format_number(s.q25) << ',' << format_number(s.q50) << ','
      << format_number(s.q75) << ',' << format_number(s.q95) << ',' << format_number(s.mean_max_drawdown)
      << ',' << format_number(s.ruin_fraction) << '\n';
}

void write_stats_csv(std::ostream& out, const std::vector<SimResult>& rows) {
  out << kStatsHeader << '\n';
  for (const auto& row : rows) write_stats_row(out, row.policy, row.stats);
}

void write_differences_csv(std::ostream& out, const ComparisonTable& table) {
  out << kDifferenceHeader << '\n';
  for (const auto& diff : table.differences) {
    out << table.rows[diff.first].policy << ',' << table.rows[diff.second].policy << ','
        << format_number(diff.mean) << ',' << format_number(diff.std_error) << ','
        << format_number(table.confidence) << ',' << format_number(diff.lower) << ','
        << format_number(diff.upper) << '\n';
  }
}

}  // namespace otl
