#include "chartlab/card.hpp"

#include <limits>

#include "chartlab/error.hpp"

namespace chartlab {

Card operator+(Card a, Card b) {
  if (a.infinite_ || b.infinite_) return Card::omega();
  if (a.value_ > std::numeric_limits<std::uint64_t>::max() - b.value_)
    throw ResourceError("cardinal overflow in addition");
  return Card(a.value_ + b.value_);
}

Card operator*(Card a, Card b) {
  if ((a.is_finite() && a.value_ == 0) || (b.is_finite() && b.value_ == 0))
    return Card(0);
  if (a.infinite_ || b.infinite_) return Card::omega();
  if (a.value_ > std::numeric_limits<std::uint64_t>::max() / b.value_)
    throw ResourceError("cardinal overflow in multiplication");
  return Card(a.value_ * b.value_);
}

std::string Card::to_string(const char* infinite_name) const {
  return infinite_ ? std::string(infinite_name) : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, Card c) { return os << c.to_string(); }

}  // namespace chartlab
