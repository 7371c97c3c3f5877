#include "chartlab/perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "chartlab/error.hpp"

namespace chartlab {

FinSuppPerm::FinSuppPerm(const std::vector<std::pair<Nat, Nat>>& table) {
  std::set<Nat> sources, targets;
  for (const auto& [x, y] : table) {
    if (x < 0 || y < 0) throw RangeError("permutation points must be natural numbers");
    if (!sources.insert(x).second) throw RangeError("point " + std::to_string(x) + " listed twice");
    if (!targets.insert(y).second)
      throw RangeError("image " + std::to_string(y) + " listed twice");
    if (x != y) moved_.emplace(x, y);
  }
  if (sources != targets) throw RangeError("table is not a bijection of its own points");
}

FinSuppPerm FinSuppPerm::from_images(const std::vector<Nat>& images) {
  std::vector<std::pair<Nat, Nat>> table;
  for (std::size_t x = 0; x < images.size(); ++x) table.emplace_back(static_cast<Nat>(x), images[x]);
  return FinSuppPerm(table);
}

FinSuppPerm FinSuppPerm::from_cycles(const std::vector<std::vector<Nat>>& cycles) {
  std::vector<std::pair<Nat, Nat>> table;
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) table.emplace_back(c[i], c[(i + 1) % c.size()]);
  return FinSuppPerm(table);
}

Nat FinSuppPerm::operator()(Nat x) const {
  auto it = moved_.find(x);
  return it == moved_.end() ? x : it->second;
}

bool FinSuppPerm::is_involution() const {
  return std::all_of(moved_.begin(), moved_.end(),
                     [&](const auto& e) { return (*this)(e.second) == e.first; });
}

std::vector<std::vector<Nat>> FinSuppPerm::cycles() const {
  std::vector<std::vector<Nat>> out;
  std::set<Nat> seen;
  for (const auto& [x, y] : moved_) {
    if (seen.contains(x)) continue;
    std::vector<Nat> cycle;
    for (Nat z = x; !seen.contains(z); z = (*this)(z)) {
      seen.insert(z);
      cycle.push_back(z);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

FinSuppPerm operator*(const FinSuppPerm& p, const FinSuppPerm& q) {
  std::set<Nat> points;
  for (const auto& e : p.moved()) points.insert(e.first);
  for (const auto& e : q.moved()) points.insert(e.first);
  std::vector<std::pair<Nat, Nat>> table;
  for (Nat x : points) table.emplace_back(x, q(p(x)));
  return FinSuppPerm(table);
}

FinSuppPerm inverse(const FinSuppPerm& p) {
  std::vector<std::pair<Nat, Nat>> table;
  for (const auto& [x, y] : p.moved()) table.emplace_back(y, x);
  return FinSuppPerm(table);
}

bool preserves_segment(const FinSuppPerm& p, Nat j) {
  // A bijection maps [0, j) onto itself iff it maps it into itself.
  for (auto it = p.moved().begin(); it != p.moved().end() && it->first < j; ++it)
    if (it->second >= j) return false;
  return true;
}

LocalCertificate is_local(const FinSuppPerm& p) {
  LocalCertificate out;
  out.tail_from = p.support_bound();
  for (Nat j = 0; j < out.tail_from; ++j)
    if (preserves_segment(p, j)) out.cuts.push_back(j);
  return out;
}

std::pair<FinSuppPerm, FinSuppPerm> two_involutions(const FinSuppPerm& p) {
  // Two reflections of each cycle c_0 → c_1 → … → c_{k−1}:
  // c_j ↦ c_{1−j} followed by c_j ↦ c_{2−j} is c_j ↦ c_{j+1}.
  std::vector<std::pair<Nat, Nat>> first, second;
  for (const auto& c : p.cycles()) {
    const Nat k = static_cast<Nat>(c.size());
    for (Nat j = 0; j < k; ++j) {
      first.emplace_back(c[j], c[((1 - j) % k + k) % k]);
      second.emplace_back(c[j], c[((2 - j) % k + k) % k]);
    }
  }
  return {FinSuppPerm(first), FinSuppPerm(second)};
}

LocalFactors involution_to_locals(const FinSuppPerm& v) {
  if (!v.is_involution()) throw PreconditionError("expected an involution");
  LocalFactors out;
  const Nat bound = v.support_bound();
  out.cuts.push_back(0);
  // Least a past the previous cut whose initial segment absorbs the image of
  // the previous segment.
  while (out.cuts.back() < bound) {
    const Nat prev = out.cuts.back();
    Nat next = prev + 1;
    for (auto it = v.moved().begin(); it != v.moved().end() && it->first < prev; ++it)
      next = std::max(next, it->second + 1);
    out.cuts.push_back(next);
  }
  auto block_of = [&](Nat x) {
    return static_cast<std::size_t>(std::upper_bound(out.cuts.begin(), out.cuts.end(), x) -
                                    out.cuts.begin()) -
           1;
  };
  std::vector<std::pair<Nat, Nat>> cross;
  for (const auto& [x, y] : v.moved()) {
    const std::size_t bx = block_of(x), by = block_of(y);
    if (std::min(bx, by) % 2 == 0 && std::max(bx, by) == std::min(bx, by) + 1) cross.emplace_back(x, y);
  }
  out.g = FinSuppPerm(cross);
  out.h = inverse(out.g) * v;
  return out;
}

std::vector<FinSuppPerm> four_locals(const FinSuppPerm& p) {
  if (p.is_identity()) return {};
  const auto [i1, i2] = two_involutions(p);
  const auto a = involution_to_locals(i1);
  const auto b = involution_to_locals(i2);
  return {a.g, a.h, b.g, b.h};
}

FinSuppPerm random_finsupp_perm(std::mt19937_64& rng, std::size_t max_support) {
  std::vector<Nat> pool(2 * max_support);
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t size = std::uniform_int_distribution<std::size_t>(0, max_support)(rng);
  std::vector<Nat> points(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
  std::vector<Nat> images = points;
  std::shuffle(images.begin(), images.end(), rng);
  std::vector<std::pair<Nat, Nat>> table;
  for (std::size_t i = 0; i < size; ++i) table.emplace_back(points[i], images[i]);
  return FinSuppPerm(table);
}

}  // namespace chartlab
