#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chartlab/chart.hpp"
#include "chartlab/semigroup.hpp"

namespace chartlab {

/// E_n: all partial identities, 2^n of them, in canonical order.
FiniteSemigroup idempotents(std::size_t n, std::size_t cap = kEnumerateCap);

struct SemigroupPredicates {
  bool inverse_closed = false;
  /// Contains every partial identity of I_n.
  bool full = false;
  /// Every f with dom f = im f is a partial identity (all subgroups trivial).
  bool subgroups_trivial = false;
};
SemigroupPredicates predicates(const FiniteSemigroup& s);

/// Orbits xS of an inverse-closed semigroup. Points outside every domain are
/// not covered. Throws PreconditionError for a non-inverse input.
std::vector<std::vector<Point>> orbits(const FiniteSemigroup& s);

struct GenerationReport {
  bool succeeded = false;
  /// For each target element that was reached: its word over S ∪ U
  /// (indices into the generator list S followed by U).
  std::vector<std::pair<Chart, Word>> witness_words;
  std::vector<std::size_t> frontier_sizes;
  /// First target element (canonical order) missed, when not succeeded.
  std::optional<Chart> missing;
};

/// Decides <S ∪ U> ⊇ target.
GenerationReport relative_generates(std::span<const Chart> s, std::span<const Chart> u,
                                    const FiniteSemigroup& target,
                                    bool record_words = false);

/// Relative rank search: the least k <= bound such that some U ⊆ target with
/// |U| = k gives <S ∪ U> ⊇ target. Candidate sets are taken from the target
/// in canonical order and the first success wins. nullopt when no k <= bound
/// works.
struct RelativeRankResult {
  std::size_t rank = 0;
  std::vector<Chart> witness;
};
inline constexpr std::size_t kRelativeRankBoundCap = 3;
std::optional<RelativeRankResult> relative_rank(std::span<const Chart> s,
                                                const FiniteSemigroup& target,
                                                std::size_t bound);

/// Right-regular (Wagner-Preston) representation of an inverse semigroup M:
/// element m becomes the chart on |M| points with domain M m^{-1} sending
/// x to xm. Entry i represents M.elements()[i]. Throws PreconditionError for
/// non-inverse M and InternalError if the result is not an injective
/// homomorphism.
std::vector<Chart> wagner_preston(const FiniteSemigroup& m);

/// Exhaustive check that `rep` is an injective homomorphism of `m`.
bool is_injective_homomorphism(const FiniteSemigroup& m, std::span<const Chart> rep);

/// Maximal proper subgroups of Sym(n), found from the full subgroup lattice.
/// Each subgroup is a sorted list of permutations. n <= 5.
inline constexpr std::size_t kSubgroupLatticeCap = 5;
std::vector<std::vector<Chart>> maximal_subgroups_sym(std::size_t n);
/// All subgroups of Sym(n) (n <= 5), for tests and reporting.
std::vector<std::vector<Chart>> all_subgroups_sym(std::size_t n);

/// The classified maximal subsemigroups of I_n: first Sym(n) ∪ F(n, n-1),
/// then G ∪ F(n, n) for each maximal subgroup G. 1 <= n <= 5.
struct FamilyMember {
  std::string name;
  FiniteSemigroup semigroup;
};
std::vector<FamilyMember> xiuliang_family(std::size_t n);

struct VerificationCheck {
  std::string name;
  bool passed = false;
  std::string witness;  // concrete counterexample, or a note
};

struct XiuliangReport {
  std::size_t n = 0;
  std::vector<VerificationCheck> checks;
  std::size_t family_size = 0;
  std::size_t rank_deficient_generators_checked = 0;  // rank n-1 charts in (d)
  /// Present for n <= 2: maximal subsemigroups found by brute force.
  std::optional<std::size_t> brute_force_maximal;
  /// Same count when the empty set is not regarded as a subsemigroup.
  std::optional<std::size_t> brute_force_maximal_nonempty;
  std::vector<std::string> notes;
  bool passed() const;
};
XiuliangReport verify_xiuliang(std::size_t n);

/// Maximal proper subsemigroups of I_n by exhaustion over all 2^|I_n|
/// subsets (n <= 2). `include_empty` decides whether ∅ counts as a
/// subsemigroup.
std::vector<std::vector<Chart>> brute_force_maximal_subsemigroups(std::size_t n,
                                                                  bool include_empty);

/// Partwise stabiliser of a partition of {0..n-1}: permutations fixing every
/// block setwise.
FiniteSemigroup partwise_stabiliser(std::size_t n, const std::vector<std::vector<Point>>& blocks);

/// A small generating subset of a finite semigroup, chosen greedily in
/// descending canonical order.
std::vector<Chart> greedy_generators(const FiniteSemigroup& s);

}  // namespace chartlab
