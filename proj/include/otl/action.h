#pragma once

#include <string>

namespace otl {

enum class Direction { Long, Neutral, Short };

/// A market position. Neutral is always normalized to size 1.
class Action {
 public:
  Action() = default;
  Action(Direction direction, int size = 1);

  static Action long_(int size = 1) { return Action(Direction::Long, size); }
  static Action neutral() { return Action(Direction::Neutral); }
  static Action short_(int size = 1) { return Action(Direction::Short, size); }

  Direction direction() const { return direction_; }
  int size() const { return size_; }

  /// +size for Long, -size for Short, 0 for Neutral.
  int signed_size() const;

  friend bool operator==(const Action&, const Action&) = default;

 private:
  Direction direction_ = Direction::Neutral;
  int size_ = 1;
};

/// "long", "neutral", "short"; sizes other than 1 render as "longx2".
std::string to_string(const Action& action);
std::string to_string(Direction direction);
/// "Long", "Neutral", "Short" (with "x2" suffix for larger stakes).
std::string display_name(const Action& action);

}  // namespace otl
