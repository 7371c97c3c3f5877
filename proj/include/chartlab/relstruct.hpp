#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "chartlab/chart.hpp"
#include "chartlab/semigroup.hpp"

namespace chartlab {

using Tuple = std::vector<Point>;

struct Relation {
  std::string name;
  std::size_t arity = 1;
  std::set<Tuple> tuples;
};

/// A finite ground set {0..n-1} with finitely many named finitary relations.
class RelStructure {
 public:
  RelStructure() = default;
  /// Validates arities, coordinates and name uniqueness (ParseError).
  RelStructure(std::size_t n, std::vector<Relation> relations);

  std::size_t ground_size() const { return n_; }
  const std::vector<Relation>& relations() const { return relations_; }

  /// Simple undirected graph as one symmetric binary relation "E".
  static RelStructure graph(std::size_t n, const std::vector<std::pair<Point, Point>>& edges);
  /// Binary relation x <= y (or x < y when strict) on {0..n-1}.
  static RelStructure chain(std::size_t n, bool strict);

 private:
  std::size_t n_ = 0;
  std::vector<Relation> relations_;
};

inline constexpr std::size_t kRelStructCap = 6;

/// f preserves every relation on its domain: α ∈ R ⟹ αf ∈ R for tuples α
/// over dom f.
bool preserves(const RelStructure& r, const Chart& f);
/// f is an isomorphism between induced substructures: α ∈ R ⟺ αf ∈ R for
/// every tuple α over dom f. Checked by enumerating all tuples over dom f.
bool is_partial_automorphism(const RelStructure& r, const Chart& f);

/// Injective partial endomorphisms, by parallel filter over I_n (n <= cap).
/// Elements in canonical order.
FiniteSemigroup ip_end(const RelStructure& r, std::size_t cap = kRelStructCap);
/// Partial automorphisms, by parallel filter over I_n (n <= cap).
FiniteSemigroup p_aut(const RelStructure& r, std::size_t cap = kRelStructCap);

/// Serial filters over I_n, the reference for the parallel kernels.
FiniteSemigroup ip_end_reference(const RelStructure& r, std::size_t cap = kRelStructCap);
FiniteSemigroup p_aut_reference(const RelStructure& r, std::size_t cap = kRelStructCap);

enum class MorphismKind { kIpEnd, kPAut };
/// Counts members by depth-first extension of partial charts, pruning as
/// soon as a fully-assigned tuple violates the condition. Independent of the
/// filter; usable at n = 7. Cap defaults to 8.
std::size_t count_by_extension(const RelStructure& r, MorphismKind kind, std::size_t cap = 8);

/// For a full submonoid S of I_n: one relation R_α per distinct-entry tuple
/// α of length k <= n, with R_α = {αf : f ∈ S, α over dom f}. Throws
/// PreconditionError if S is not a full submonoid.
RelStructure canonical_structure(const FiniteSemigroup& s);

struct CorrespondenceReport {
  bool roundtrip = false;          // S = ip_end(canonical_structure(S))
  bool paut_is_intersection = false;  // p_aut = ip_end ∩ ip_end^{-1}
  bool passed() const { return roundtrip && paut_is_intersection; }
};
inline constexpr std::size_t kCorrespondenceCap = 4;
/// n <= 4.
CorrespondenceReport verify_correspondence(const FiniteSemigroup& s);

/// Elements f of `s` with f^{-1} also in `s`.
std::vector<Chart> inverse_intersection(const FiniteSemigroup& s);

}  // namespace chartlab
