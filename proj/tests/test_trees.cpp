#include <random>

#include "chartlab/engine.hpp"
#include "chartlab/error.hpp"
#include "chartlab/trees.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chartlab;

namespace {

// Greatest set of live states: a state stays while it can reach, through
// live states, a state with enough edge copies into live states. States are
// removed one at a time.
bool oracle_survives(const TreeSpec& t, PruneMode mode) {
  const std::size_t n = t.state_count();
  std::vector<bool> live(n, true);
  auto copies_into_live = [&](std::size_t s) {
    Card c = 0;
    for (const auto& e : t.edges(s))
      if (live[e.child]) c += e.all_delays() ? Card::omega() : e.mult;
    return c;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < n && !changed; ++s) {
      if (!live[s]) continue;
      std::vector<bool> seen(n, false);
      std::vector<std::size_t> stack{s};
      seen[s] = true;
      bool found = false;
      while (!stack.empty() && !found) {
        std::size_t u = stack.back();
        stack.pop_back();
        Card c = copies_into_live(u);
        found = mode == PruneMode::kWeak ? c > Card(1) : c.is_infinite();
        for (const auto& e : t.edges(u))
          if (live[e.child] && !seen[e.child]) {
            seen[e.child] = true;
            stack.push_back(e.child);
          }
      }
      if (!found) {
        live[s] = false;
        changed = true;
      }
    }
  }
  for (const auto& e : t.edges(t.root()))
    if (live[e.child]) return true;
  return false;
}

// Exhaustive filter: charts whose domain and image are rooted paths and
// which send each vertex to the vertex at the same depth.
std::size_t oracle_path_bijections(const FiniteTree& t) {
  const int n = static_cast<int>(t.size());
  auto is_rooted_path = [&](const std::vector<int>& pts) {
    if (pts.empty()) return false;
    int deepest = pts[0];
    for (int p : pts)
      if (t.level[p] > t.level[deepest]) deepest = p;
    auto path = t.rooted_path(deepest);
    if (path.size() != pts.size()) return false;
    for (auto v : path)
      if (std::find(pts.begin(), pts.end(), static_cast<int>(v)) == pts.end()) return false;
    return true;
  };
  std::size_t count = 0;
  for (const auto& img : oracle::all_image_vectors(n)) {
    std::vector<int> dom, im;
    bool levels = true;
    for (int x = 0; x < n; ++x) {
      if (img[x] < 0) continue;
      dom.push_back(x);
      im.push_back(img[x]);
      levels = levels && t.level[x] == t.level[img[x]];
    }
    if (levels && is_rooted_path(dom) && is_rooted_path(im)) ++count;
  }
  return count;
}

std::size_t idempotents_of(const FiniteSemigroup& s) {
  std::size_t count = 0;
  for (const auto& f : s.elements())
    if (oracle::compose(oracle::relation_of(f), oracle::relation_of(f)) == oracle::relation_of(f))
      ++count;
  return count;
}

}  // namespace

TEST_CASE("builtin tree presentations") {
  CHECK(builtin_trivial().edge_count() == 0);
  CHECK(builtin_trivial().is_trivial());
  auto binary = builtin_regular(2);
  REQUIRE(binary.state_count() == 1);
  CHECK(binary.edges(0)[0].mult == Card(2));
  CHECK(binary.edges(0)[0].delay == 0u);
  CHECK(builtin_unary().edges(0)[0].mult == Card(1));
  auto rec = builtin_recursive();
  CHECK(rec.edges(0)[0].all_delays());
  CHECK(rec.child_count(0).is_infinite());
  CHECK(builtin("regular", Card::omega()).child_count(0).is_infinite());
  CHECK_THROWS_AS(builtin("bushy"), ParameterError);
}

TEST_CASE("construction validates and drops unreachable states") {
  TreeSpec t({"a", "b", "c"}, 0, {{TreeEdge{0, 2, 1}}, {TreeEdge{0, 0, 1}}, {}});
  CHECK(t.state_count() == 2);
  CHECK(t.states() == std::vector<std::string>{"a", "c"});
  CHECK(t.edges(0)[0].child == 1);
  CHECK_THROWS_AS(TreeSpec({"a"}, 0, {{TreeEdge{0, 1, 1}}}), RangeError);
  CHECK_THROWS_AS(TreeSpec({"a"}, 0, {{TreeEdge{0, 0, 0}}}), RangeError);
  CHECK_THROWS_AS(TreeSpec({"a"}, 0, {}), ParseError);
}

TEST_CASE("graft") {
  auto base = builtin_unary();
  CHECK(graft(base, 0, {}) == base);
  auto g = graft(base, 0, {{builtin_regular(2), 1}});
  CHECK(g.state_count() == 2);
  CHECK(g.edges(0).size() == 2);
  CHECK(classify(g) == TreeClass::kMid);

  auto chains = graft(builtin_trivial(), 0, {{builtin_unary(), Card::omega()}});
  CHECK(classify(chains) == TreeClass::kBottom);
  CHECK_FALSE(uncountable_paths(chains));
  CHECK_THROWS_AS(graft(base, 3, {}), RangeError);
}

TEST_CASE("pruning examples") {
  auto weak_unary = prune_fixpoint(builtin_unary(), PruneMode::kWeak);
  CHECK(weak_unary.tree.is_trivial());
  CHECK(weak_unary.steps == 1);

  auto strong_binary = prune_fixpoint(builtin_regular(2), PruneMode::kStrong);
  CHECK(strong_binary.tree.is_trivial());
  CHECK(strong_binary.steps == 1);

  auto weak_binary = prune_fixpoint(builtin_regular(2), PruneMode::kWeak);
  CHECK(weak_binary.tree == builtin_regular(2));
  CHECK(weak_binary.steps == 0);

  auto strong_rec = prune_fixpoint(builtin_recursive(), PruneMode::kStrong);
  CHECK(strong_rec.tree == builtin_recursive());

  // Root with ω leaves: the leaves go first, then nothing is left to prune.
  auto star = graft(builtin_trivial(), 0, {{builtin_trivial(), Card::omega()}});
  auto s = prune_fixpoint(star, PruneMode::kStrong);
  CHECK(s.tree.is_trivial());
  CHECK(s.steps == 1);
}

TEST_CASE("classification of builtins") {
  CHECK(classify(builtin_trivial()) == TreeClass::kBottom);
  CHECK(classify(builtin_unary()) == TreeClass::kBottom);
  for (std::uint64_t k : {2, 3, 4}) CHECK(classify(builtin_regular(k)) == TreeClass::kMid);
  CHECK(classify(builtin_regular(Card::omega())) == TreeClass::kTop);
  CHECK(classify(builtin_recursive()) == TreeClass::kTop);
  CHECK(to_string(TreeClass::kMid) == "Mid");
  CHECK(TreeClass::kBottom < TreeClass::kMid);
}

TEST_CASE("uncountable paths") {
  CHECK_FALSE(uncountable_paths(builtin_unary()));
  CHECK(uncountable_paths(builtin_regular(2)));
  CHECK(uncountable_paths(builtin_recursive()));
  CHECK_FALSE(uncountable_paths(builtin_trivial()));
  // A self loop that also feeds a unary chain still has countably many paths.
  TreeSpec t({"s", "u"}, 0, {{TreeEdge{0, 0, 1}, TreeEdge{0, 1, 1}}, {TreeEdge{0, 1, 1}}});
  CHECK_FALSE(uncountable_paths(t));
  CHECK(classify(t) == TreeClass::kBottom);
  // Two states alternating, each with one edge back: still a single path.
  TreeSpec cyc({"a", "b"}, 0, {{TreeEdge{1, 1, 1}}, {TreeEdge{0, 0, 1}}});
  CHECK_FALSE(uncountable_paths(cyc));
  TreeSpec cyc2({"a", "b"}, 0, {{TreeEdge{1, 1, 1}}, {TreeEdge{0, 0, 2}}});
  CHECK(uncountable_paths(cyc2));
}

TEST_CASE("random specs: class agreement, oracle fixpoints, step bound") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const TreeSpec t = random_tree_spec(rng);
    const auto weak = prune_fixpoint(t, PruneMode::kWeak);
    const auto strong = prune_fixpoint(t, PruneMode::kStrong);
    CHECK(weak.steps <= t.edge_count());
    CHECK(strong.steps <= t.edge_count());
    CHECK(weak.tree.edge_count() <= t.edge_count());
    CHECK(!weak.tree.is_trivial() == oracle_survives(t, PruneMode::kWeak));
    CHECK(!strong.tree.is_trivial() == oracle_survives(t, PruneMode::kStrong));
    const TreeClass c = classify(t);
    CHECK((c == TreeClass::kBottom) == !uncountable_paths(t));
    // Pruning again changes nothing.
    CHECK(prune_fixpoint(weak.tree, PruneMode::kWeak).steps == 0);
  }
}

TEST_CASE("finite presentations classify Bottom") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> states(1, 6), mult(1, 4);
    const std::size_t n = states(rng);
    std::vector<std::string> names;
    std::vector<std::vector<TreeEdge>> edges(n);
    for (std::size_t s = 0; s < n; ++s) {
      names.push_back("s" + std::to_string(s));
      for (std::size_t c = s + 1; c < n; ++c)
        if (rng() % 2) edges[s].push_back(TreeEdge{rng() % 3, c, Card(mult(rng))});
    }
    CHECK(classify(TreeSpec(names, 0, edges)) == TreeClass::kBottom);
  }
}

TEST_CASE("level profiles") {
  for (std::size_t k = 1; k <= 10; ++k) {
    auto p = level_profile(builtin_recursive(), k);
    CHECK(p.infinite_degree == Card(std::uint64_t{1} << (k - 1)));
    CHECK(p.finite_degree.is_infinite());
  }
  CHECK(level_profile(builtin_regular(2), 3) == LevelProfile{8, 0});
  CHECK(level_profile(builtin_regular(2), 0) == LevelProfile{1, 0});
  CHECK(level_profile(builtin_regular(Card::omega()), 2) ==
        LevelProfile{0, Card::omega()});
  CHECK(level_profile(builtin_trivial(), 3) == LevelProfile{0, 0});
  // Delay 2 edge: two chain vertices then the child.
  TreeSpec d({"a", "b"}, 0, {{TreeEdge{2, 1, 3}}, {}});
  CHECK(level_profile(d, 1) == LevelProfile{3, 0});
  CHECK(level_profile(d, 3) == LevelProfile{3, 0});
  CHECK(level_profile(d, 4) == LevelProfile{0, 0});
  CHECK_THROWS_AS(level_profile(builtin_regular(2), 100), ResourceError);
  CHECK_THROWS_AS(level_profile(builtin_regular(2), 63), ResourceError);
}

TEST_CASE("level profile agrees with materialized level sizes") {
  std::mt19937_64 rng(77);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const TreeSpec t = random_tree_spec(rng);
    bool finite_width = true;
    for (const auto& list : t.all_edges())
      for (const auto& e : list) finite_width = finite_width && e.mult.is_finite() && !e.all_delays();
    if (!finite_width) continue;
    FiniteTree m;
    try {
      m = materialize(t, 4, 1, 5000);
    } catch (const ResourceError&) {
      continue;
    }
    const auto sizes = m.level_sizes();
    for (std::size_t k = 0; k <= 4; ++k) {
      auto p = level_profile(t, k);
      const std::uint64_t expected = k < sizes.size() ? sizes[k] : 0;
      CHECK(p.infinite_degree == Card(0));
      CHECK(p.finite_degree == Card(expected));
    }
    ++compared;
  }
  CHECK(compared > 20);
}

TEST_CASE("materialize") {
  auto binary = materialize(builtin_regular(2), 2, 5);
  CHECK(binary.size() == 7);
  CHECK_FALSE(binary.truncated);
  auto star = materialize(builtin_regular(Card::omega()), 1, 3);
  CHECK(star.size() == 4);
  CHECK(star.truncated);
  CHECK(materialize(builtin_trivial(), 10, 10).size() == 1);
  auto rec = materialize(builtin_recursive(), 2, 2);
  // Root: R (delay 0) and a chain vertex (delay 1); level 2: two R-children
  // of the level-1 R plus the chain's R.
  CHECK(rec.level_sizes() == std::vector<std::size_t>{1, 2, 3});
  CHECK(rec.truncated);
  CHECK_THROWS_AS(materialize(builtin_regular(3), 20, 3, 1000), ResourceError);
  CHECK(materialize(builtin_regular(Card::omega()), 0, 3).size() == 1);
  CHECK_FALSE(materialize(builtin_regular(Card::omega()), 0, 3).truncated);
}

TEST_CASE("path semigroup of the depth-2 binary tree") {
  auto t = materialize(builtin_regular(2), 2, 2);
  auto s = path_semigroup(t);
  CHECK(s.order() == 21);
  CHECK(s.order() == oracle_path_bijections(t));
  CHECK(idempotents_of(s) == 7);
  CHECK(predicates(s).inverse_closed);
  CHECK(predicates(s).subgroups_trivial);
  CHECK(is_product_closed(s.elements()));
}

TEST_CASE("path semigroups of random finite trees") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const FiniteTree t = random_finite_tree(rng, trial < 10 ? 7 : 12);
    const auto s = path_semigroup(t);
    std::size_t expected = 0;
    for (auto n : t.level_sizes()) expected += n * n;
    CHECK(s.order() == expected);
    if (t.size() <= 7) CHECK(s.order() == oracle_path_bijections(t));
    CHECK(idempotents_of(s) == t.size());
    CHECK(predicates(s).inverse_closed);
    CHECK(is_product_closed(s.elements()));
    for (const auto& f : s.elements()) {
      CHECK_FALSE(f.empty());
      if (f.domain() == f.image()) CHECK(f.is_partial_identity());
    }
  }
  auto truncated = materialize(builtin_regular(Card::omega()), 1, 2);
  CHECK_THROWS_AS(path_semigroup(truncated), PreconditionError);
  CHECK_THROWS_AS(path_semigroup(materialize(builtin_regular(2), 6, 2)), ResourceError);
}

TEST_CASE("quasi-subtree witnesses respect the class order") {
  struct Pair {
    TreeSpec host;
    std::size_t host_depth, host_width;
    TreeSpec pattern;
    std::size_t pattern_depth;
  };
  const std::vector<Pair> pairs = {
      {builtin_recursive(), 4, 3, builtin_regular(2), 2},
      {builtin_regular(2), 3, 1, builtin_unary(), 3},
      {builtin_regular(3), 2, 1, builtin_regular(2), 2},
      {builtin_regular(Card::omega()), 2, 3, builtin_regular(3), 2},
      {builtin_unary(), 1, 1, builtin_trivial(), 0},
      {graft(builtin_unary(), 0, {{builtin_regular(2), 1}}), 4, 1, builtin_regular(2), 2},
  };
  for (const auto& p : pairs) {
    const auto host = materialize(p.host, p.host_depth, p.host_width);
    const auto pattern = materialize(p.pattern, p.pattern_depth, 1);
    const auto witness = find_quasi_subtree(host, pattern);
    REQUIRE(witness.has_value());
    for (std::size_t x = 0; x < pattern.size(); ++x)
      for (std::size_t y = 0; y < pattern.size(); ++y)
        CHECK(pattern.is_ancestor(x, y) == host.is_ancestor((*witness)[x], (*witness)[y]));
    CHECK(classify(p.host) >= classify(p.pattern));
  }
  // The binary tree does not fit into a unary chain.
  CHECK_FALSE(find_quasi_subtree(materialize(builtin_unary(), 5, 1),
                                 materialize(builtin_regular(2), 1, 1)));
}
