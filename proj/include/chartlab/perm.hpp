#pragma once

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "chartlab/epset.hpp"

namespace chartlab {

/// A permutation of ω moving finitely many points. Only moved points are
/// stored.
class FinSuppPerm {
 public:
  FinSuppPerm() = default;
  /// Table entries (x, y) with x = y are allowed and dropped. Throws
  /// RangeError unless the table is a bijection of its own point set.
  explicit FinSuppPerm(const std::vector<std::pair<Nat, Nat>>& table);

  static FinSuppPerm from_images(const std::vector<Nat>& images);
  static FinSuppPerm from_cycles(const std::vector<std::vector<Nat>>& cycles);

  Nat operator()(Nat x) const;
  const std::map<Nat, Nat>& moved() const { return moved_; }
  std::vector<std::pair<Nat, Nat>> table() const { return {moved_.begin(), moved_.end()}; }
  /// One more than the largest moved point; 0 for the identity.
  Nat support_bound() const { return moved_.empty() ? 0 : moved_.rbegin()->first + 1; }
  bool is_identity() const { return moved_.empty(); }
  bool is_involution() const;
  /// Cycles of length ≥ 2, each starting at its least point, ordered by it.
  std::vector<std::vector<Nat>> cycles() const;

  friend bool operator==(const FinSuppPerm&, const FinSuppPerm&) = default;

 private:
  std::map<Nat, Nat> moved_;
};

/// Left-to-right: x(pq) = (xp)q.
FinSuppPerm operator*(const FinSuppPerm& p, const FinSuppPerm& q);
FinSuppPerm inverse(const FinSuppPerm& p);

/// Cuts j with {0,…,j−1}p = {0,…,j−1}: those below `tail_from` are listed,
/// every j ≥ tail_from is a cut.
struct LocalCertificate {
  bool local = true;
  std::vector<Nat> cuts;
  Nat tail_from = 0;
};
LocalCertificate is_local(const FinSuppPerm& p);
bool preserves_segment(const FinSuppPerm& p, Nat j);

/// i1·i1 = i2·i2 = id and i1·i2 = p.
std::pair<FinSuppPerm, FinSuppPerm> two_involutions(const FinSuppPerm& p);

struct LocalFactors {
  FinSuppPerm g;
  FinSuppPerm h;
  /// Cut points a_0 = 0 < a_1 < … ; block i is [a_i, a_{i+1}). The last cut
  /// is at or past the support.
  std::vector<Nat> cuts;
};
/// g·h = v; g preserves every [0, a_{2i}), h every [0, a_{2i+1}).
/// Throws PreconditionError unless v is an involution.
LocalFactors involution_to_locals(const FinSuppPerm& v);

/// Four local permutations whose product is p; empty for the identity.
std::vector<FinSuppPerm> four_locals(const FinSuppPerm& p);

/// A uniformly random permutation of a random set of at most `max_support`
/// points drawn from {0,…,2·max_support−1}.
FinSuppPerm random_finsupp_perm(std::mt19937_64& rng, std::size_t max_support);

}  // namespace chartlab
