#include "otl/action.h"

#include "otl/errors.h"

namespace otl {

Action::Action(Direction direction, int size) : direction_(direction), size_(size) {
  if (direction_ == Direction::Neutral) {
    size_ = 1;
  } else if (size_ < 1) {
    throw ValidationError("action size must be >= 1, got " + std::to_string(size));
  }
}

int Action::signed_size() const {
  switch (direction_) {
    case Direction::Long: return size_;
    case Direction::Short: return -size_;
    case Direction::Neutral: break;
  }
  return 0;
}

std::string to_string(Direction direction) {
  switch (direction) {
    case Direction::Long: return "long";
    case Direction::Neutral: return "neutral";
    case Direction::Short: return "short";
  }
  return "?";
}

std::string to_string(const Action& action) {
  std::string name = to_string(action.direction());
  if (action.size() != 1) name += "x" + std::to_string(action.size());
  return name;
}

std::string display_name(const Action& action) {
  std::string name = to_string(action);
  name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

}  // namespace otl
