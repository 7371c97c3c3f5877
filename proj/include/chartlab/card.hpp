#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace chartlab {

/// A cardinal in N ∪ {ω}. Addition and multiplication saturate at ω;
/// there is deliberately no subtraction.
class Card {
 public:
  constexpr Card() = default;
  constexpr Card(std::uint64_t n) : value_(n) {}  // NOLINT(implicit)

  static constexpr Card omega() {
    Card c;
    c.infinite_ = true;
    return c;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Only meaningful when finite.
  constexpr std::uint64_t value() const { return value_; }

  friend Card operator+(Card a, Card b);
  friend Card operator*(Card a, Card b);
  Card& operator+=(Card b) { return *this = *this + b; }

  friend constexpr bool operator==(Card a, Card b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Card a, Card b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  /// "omega" for the infinite value, decimal otherwise.
  std::string to_string(const char* infinite_name = "omega") const;

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// Cardinal bookkeeping for subsets of ω uses the same arithmetic.
using ExtCount = Card;

std::ostream& operator<<(std::ostream& os, Card c);

}  // namespace chartlab
