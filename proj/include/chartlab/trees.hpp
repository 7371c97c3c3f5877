#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chartlab/card.hpp"
#include "chartlab/semigroup.hpp"

namespace chartlab {

/// An edge of a finite-state tree presentation. A vertex of the source state
/// gets `mult` children; each child heads a unary chain of `delay` vertices
/// (one child each) that ends in a vertex of `child`. An absent delay means
/// "all delays": one such child for every delay 0, 1, 2, ...
struct TreeEdge {
  std::optional<std::uint64_t> delay;
  std::size_t child = 0;
  Card mult = 1;

  bool all_delays() const { return !delay.has_value(); }
  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

/// A finite-state presentation of a (possibly infinite) rooted tree.
/// Construction drops states unreachable from the root, keeping the relative
/// order of the rest.
class TreeSpec {
 public:
  TreeSpec() : TreeSpec({"root"}, 0, {{}}) {}
  TreeSpec(std::vector<std::string> states, std::size_t root,
           std::vector<std::vector<TreeEdge>> edges);

  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }
  std::size_t root() const { return root_; }
  const std::vector<TreeEdge>& edges(std::size_t state) const { return edges_[state]; }
  const std::vector<std::vector<TreeEdge>>& all_edges() const { return edges_; }
  std::size_t edge_count() const;
  std::optional<std::size_t> state_index(const std::string& name) const;

  /// Children of one vertex of `state`; ω when infinite.
  Card child_count(std::size_t state) const;
  /// The root has no children.
  bool is_trivial() const { return edges_[root_].empty(); }

  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;

 private:
  std::vector<std::string> states_;
  std::size_t root_ = 0;
  std::vector<std::vector<TreeEdge>> edges_;
};

TreeSpec builtin_trivial();
TreeSpec builtin_unary();
/// Every vertex has k children (k may be ω).
TreeSpec builtin_regular(Card k);
/// One state R with an all-delays self edge of multiplicity 1.
TreeSpec builtin_recursive();
/// kind: "trivial" | "unary" | "regular" | "recursive"; `k` is used by regular.
TreeSpec builtin(const std::string& kind, Card k = 2);

/// Disjoint union of `base` and the parts; `at_state` of base gains a
/// delay-0 edge of the given multiplicity to each part's root.
TreeSpec graft(const TreeSpec& base, std::size_t at_state,
               const std::vector<std::pair<TreeSpec, Card>>& parts);

enum class PruneMode { kWeak, kStrong };

struct PruneResult {
  TreeSpec tree;
  /// Rounds that deleted at least one edge.
  std::size_t steps = 0;
};

/// Iterates the pruning step to its fixed point. A step deletes every edge
/// into a state s all of whose reachable states (s included) have at most one
/// child (weak) or finitely many children (strong).
PruneResult prune_fixpoint(const TreeSpec& tree, PruneMode mode);

enum class TreeClass { kBottom = 0, kMid = 1, kTop = 2 };
std::string to_string(TreeClass c);

/// Top if the strong fixpoint is nontrivial, else Mid if the weak fixpoint is
/// nontrivial, else Bottom. Throws InternalError if the fixpoint fails its
/// dichotomy self-check.
TreeClass classify(const TreeSpec& tree);

/// True iff the tree has uncountably many infinite rooted paths: some
/// strongly connected component of the state graph contains a state with at
/// least two edge copies (counting multiplicity) back into that component.
bool uncountable_paths(const TreeSpec& tree);

struct LevelProfile {
  Card finite_degree;
  Card infinite_degree;
  friend bool operator==(const LevelProfile&, const LevelProfile&) = default;
};
inline constexpr std::size_t kLevelDepthCap = 62;
/// Vertex counts at level k split by degree, in N ∪ {ω}.
LevelProfile level_profile(const TreeSpec& tree, std::size_t k,
                           std::size_t cap = kLevelDepthCap);

/// A finite rooted tree; vertex 0 is the root.
struct FiniteTree {
  std::vector<std::int64_t> parent;  // -1 for the root
  std::vector<std::size_t> level;
  /// Set when an ω multiplicity or all-delays family was cut to `width`.
  bool truncated = false;

  std::size_t size() const { return parent.size(); }
  /// Vertices on the path from the root to v, root first.
  std::vector<std::size_t> rooted_path(std::size_t v) const;
  bool is_ancestor(std::size_t a, std::size_t d) const;
  /// Number of vertices on each level.
  std::vector<std::size_t> level_sizes() const;

  static FiniteTree from_parents(std::vector<std::int64_t> parent);
};

inline constexpr std::size_t kMaterializeCap = 100'000;
/// Expands levels 0..depth, cutting ω multiplicities and all-delays families
/// to `width` children.
FiniteTree materialize(const TreeSpec& tree, std::size_t depth, std::size_t width,
                       std::size_t cap = kMaterializeCap);

inline constexpr std::size_t kPathSemigroupCap = 64;
/// Level-preserving bijections between rooted paths, as charts on the vertex
/// set. Throws PreconditionError for truncated trees.
FiniteSemigroup path_semigroup(const FiniteTree& tree, std::size_t cap = kPathSemigroupCap);

/// Finds a map of `pattern` into `host` that preserves ancestry both ways
/// and sends each pattern level to a single host level (strictly increasing).
std::optional<std::vector<std::size_t>> find_quasi_subtree(const FiniteTree& host,
                                                           const FiniteTree& pattern);

/// Up to `max_states` states with 0-3 edges each; about one edge in ten has
/// all delays and about one in seven has multiplicity ω.
TreeSpec random_tree_spec(std::mt19937_64& rng, std::size_t max_states = 6);
/// A uniformly random recursive tree on 1..max_vertices vertices.
FiniteTree random_finite_tree(std::mt19937_64& rng, std::size_t max_vertices);

}  // namespace chartlab
