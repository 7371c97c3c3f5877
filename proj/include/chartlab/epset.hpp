#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chartlab/card.hpp"

namespace chartlab {

using Nat = std::int64_t;

inline constexpr Nat kPeriodCap = 1'000'000;

/// An eventually periodic subset of ω: below `threshold` the members are
/// listed in `low`; from `threshold` on, x is a member iff x mod `period`
/// lies in `residues`. Values are always kept in canonical form (least
/// period, then least threshold), so == is set equality.
class EPSet {
 public:
  EPSet() = default;
  /// Throws RangeError on out-of-range data, ResourceError past kPeriodCap.
  EPSet(Nat threshold, Nat period, std::vector<Nat> residues, std::vector<Nat> low);

  static EPSet empty() { return {}; }
  static EPSet all() { return EPSet(0, 1, {0}, {}); }
  static EPSet finite(std::vector<Nat> points);
  /// {start + k·step : k ≥ 0}
  static EPSet progression(Nat start, Nat step);

  Nat threshold() const { return threshold_; }
  Nat period() const { return period_; }
  const std::vector<Nat>& residues() const { return residues_; }
  const std::vector<Nat>& low() const { return low_; }

  bool contains(Nat x) const;
  bool is_empty() const { return residues_.empty() && low_.empty(); }
  bool is_finite() const { return residues_.empty(); }
  Card cardinality() const;
  std::optional<Nat> min() const;
  /// Members below `limit`, ascending.
  std::vector<Nat> elements_below(Nat limit) const;
  bool subset_of(const EPSet& other) const;

  EPSet complement() const;
  EPSet unite(const EPSet& other) const;
  EPSet intersect(const EPSet& other) const;
  EPSet difference(const EPSet& other) const;

  friend bool operator==(const EPSet&, const EPSet&) = default;

 private:
  void canonicalize();

  Nat threshold_ = 0;
  Nat period_ = 1;
  std::vector<Nat> residues_;
  std::vector<Nat> low_;
};

/// lcm with the period cap enforced.
Nat capped_lcm(Nat a, Nat b);

}  // namespace chartlab
