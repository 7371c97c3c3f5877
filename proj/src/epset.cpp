#include "chartlab/epset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "chartlab/error.hpp"

namespace chartlab {

Nat capped_lcm(Nat a, Nat b) {
  const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > kPeriodCap)
    throw ResourceError("period lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                        ") exceeds cap " + std::to_string(kPeriodCap));
  return static_cast<Nat>(l);
}

EPSet::EPSet(Nat threshold, Nat period, std::vector<Nat> residues, std::vector<Nat> low)
    : threshold_(threshold), period_(period), residues_(std::move(residues)), low_(std::move(low)) {
  if (threshold_ < 0) throw RangeError("threshold must be non-negative");
  if (period_ < 1) throw RangeError("period must be positive");
  if (period_ > kPeriodCap) throw ResourceError("period exceeds cap");
  for (Nat r : residues_)
    if (r < 0 || r >= period_) throw RangeError("residue " + std::to_string(r) + " out of range");
  for (Nat x : low_)
    if (x < 0 || x >= threshold_)
      throw RangeError("low element " + std::to_string(x) + " not below threshold");
  std::sort(residues_.begin(), residues_.end());
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
  std::sort(low_.begin(), low_.end());
  low_.erase(std::unique(low_.begin(), low_.end()), low_.end());
  canonicalize();
}

EPSet EPSet::finite(std::vector<Nat> points) {
  Nat top = 0;
  for (Nat x : points) {
    if (x < 0) throw RangeError("negative point");
    top = std::max(top, x + 1);
  }
  return EPSet(top, 1, {}, std::move(points));
}

EPSet EPSet::progression(Nat start, Nat step) {
  if (start < 0 || step < 1) throw RangeError("invalid progression");
  return EPSet(start, step, {start % step}, {});
}

void EPSet::canonicalize() {
  std::vector<bool> tail(static_cast<std::size_t>(period_));
  for (Nat r : residues_) tail[static_cast<std::size_t>(((r - threshold_) % period_ + period_) % period_)] = true;
  // tail[i] describes threshold + i.
  Nat best = period_;
  for (Nat d = 1; d < period_; ++d) {
    if (period_ % d != 0) continue;
    bool ok = true;
    for (Nat i = 0; i + d < period_ && ok; ++i)
      ok = tail[static_cast<std::size_t>(i)] == tail[static_cast<std::size_t>(i + d)];
    if (ok) {
      best = d;
      break;
    }
  }
  if (best != period_) {
    std::vector<Nat> reduced;
    for (Nat i = 0; i < best; ++i)
      if (tail[static_cast<std::size_t>(i)]) reduced.push_back((threshold_ + i) % best);
    std::sort(reduced.begin(), reduced.end());
    residues_ = std::move(reduced);
    period_ = best;
  }
  auto periodic = [&](Nat x) {
    return std::binary_search(residues_.begin(), residues_.end(), x % period_);
  };
  while (threshold_ > 0) {
    const Nat x = threshold_ - 1;
    const bool listed = !low_.empty() && low_.back() == x;
    if (listed != periodic(x)) break;
    if (listed) low_.pop_back();
    --threshold_;
  }
}

bool EPSet::contains(Nat x) const {
  if (x < 0) return false;
  if (x < threshold_) return std::binary_search(low_.begin(), low_.end(), x);
  return std::binary_search(residues_.begin(), residues_.end(), x % period_);
}

Card EPSet::cardinality() const {
  if (!residues_.empty()) return Card::omega();
  return Card(low_.size());
}

std::optional<Nat> EPSet::min() const {
  if (!low_.empty()) return low_.front();
  if (residues_.empty()) return std::nullopt;
  for (Nat x = threshold_;; ++x)
    if (contains(x)) return x;
}

std::vector<Nat> EPSet::elements_below(Nat limit) const {
  std::vector<Nat> out;
  for (Nat x = 0; x < limit; ++x)
    if (contains(x)) out.push_back(x);
  return out;
}

namespace {

EPSet combine(const EPSet& a, const EPSet& b, const std::function<bool(bool, bool)>& op) {
  const Nat threshold = std::max(a.threshold(), b.threshold());
  const Nat period = capped_lcm(a.period(), b.period());
  std::vector<Nat> low, residues;
  for (Nat x = 0; x < threshold; ++x)
    if (op(a.contains(x), b.contains(x))) low.push_back(x);
  for (Nat x = threshold; x < threshold + period; ++x)
    if (op(a.contains(x), b.contains(x))) residues.push_back(x % period);
  return EPSet(threshold, period, std::move(residues), std::move(low));
}

}  // namespace

bool EPSet::subset_of(const EPSet& other) const { return difference(other).is_empty(); }

EPSet EPSet::complement() const {
  return combine(*this, *this, [](bool x, bool) { return !x; });
}

EPSet EPSet::unite(const EPSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x || y; });
}

EPSet EPSet::intersect(const EPSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && y; });
}

EPSet EPSet::difference(const EPSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && !y; });
}

}  // namespace chartlab
