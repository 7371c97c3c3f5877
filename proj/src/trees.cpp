#include "chartlab/trees.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "chartlab/engine.hpp"
#include "chartlab/error.hpp"

namespace chartlab {

namespace {

using Adjacency = std::vector<std::vector<TreeEdge>>;

Card edge_copies(const TreeEdge& e) {
  return e.all_delays() ? Card::omega() : e.mult;
}

Card children_of(const std::vector<TreeEdge>& edges) {
  Card total = 0;
  for (const auto& e : edges) total += edge_copies(e);
  return total;
}

// reach[s][t]: t is reachable from s by a path of length >= 1.
std::vector<std::vector<bool>> strict_reach(const Adjacency& edges) {
  const std::size_t n = edges.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack;
    for (const auto& e : edges[s]) stack.push_back(e.child);
    while (!stack.empty()) {
      std::size_t t = stack.back();
      stack.pop_back();
      if (reach[s][t]) continue;
      reach[s][t] = true;
      for (const auto& e : edges[t]) stack.push_back(e.child);
    }
  }
  return reach;
}

// States from which some state satisfying `bad` is reachable (itself included).
std::vector<bool> reaches(const Adjacency& edges, const std::vector<bool>& bad) {
  const std::size_t n = edges.size();
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& e : edges[s]) reverse[e.child].push_back(s);
  std::vector<bool> seen(bad);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s)
    if (bad[s]) stack.push_back(s);
  while (!stack.empty()) {
    std::size_t t = stack.back();
    stack.pop_back();
    for (std::size_t s : reverse[t]) {
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    }
  }
  return seen;
}

bool violates(PruneMode mode, Card children) {
  return mode == PruneMode::kWeak ? children > Card(1) : children.is_infinite();
}

}  // namespace

TreeSpec::TreeSpec(std::vector<std::string> states, std::size_t root,
                   std::vector<std::vector<TreeEdge>> edges) {
  if (states.empty()) throw ParseError("tree needs at least one state");
  if (edges.size() != states.size())
    throw ParseError("tree has " + std::to_string(states.size()) + " states but " +
                     std::to_string(edges.size()) + " edge lists");
  if (root >= states.size()) throw RangeError("root state out of range");
  for (const auto& list : edges) {
    for (const auto& e : list) {
      if (e.child >= states.size()) throw RangeError("edge child state out of range");
      if (e.mult == Card(0)) throw RangeError("edge multiplicity must be positive");
    }
  }

  std::vector<bool> reachable(states.size(), false);
  reachable[root] = true;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    std::size_t s = stack.back();
    stack.pop_back();
    for (const auto& e : edges[s]) {
      if (!reachable[e.child]) {
        reachable[e.child] = true;
        stack.push_back(e.child);
      }
    }
  }

  std::vector<std::size_t> renumber(states.size(), 0);
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!reachable[s]) continue;
    renumber[s] = states_.size();
    states_.push_back(std::move(states[s]));
  }
  edges_.resize(states_.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!reachable[s]) continue;
    for (auto e : edges[s]) {
      e.child = renumber[e.child];
      edges_[renumber[s]].push_back(e);
    }
  }
  root_ = renumber[root];
}

std::size_t TreeSpec::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : edges_) total += list.size();
  return total;
}

std::optional<std::size_t> TreeSpec::state_index(const std::string& name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

Card TreeSpec::child_count(std::size_t state) const { return children_of(edges_.at(state)); }

TreeSpec builtin_trivial() { return TreeSpec({"root"}, 0, {{}}); }

TreeSpec builtin_unary() { return builtin_regular(1); }

TreeSpec builtin_regular(Card k) {
  if (k == Card(0)) return builtin_trivial();
  return TreeSpec({"V"}, 0, {{TreeEdge{0, 0, k}}});
}

TreeSpec builtin_recursive() {
  return TreeSpec({"R"}, 0, {{TreeEdge{std::nullopt, 0, 1}}});
}

TreeSpec builtin(const std::string& kind, Card k) {
  if (kind == "trivial") return builtin_trivial();
  if (kind == "unary") return builtin_unary();
  if (kind == "regular") return builtin_regular(k);
  if (kind == "recursive") return builtin_recursive();
  throw ParameterError("unknown builtin tree '" + kind + "'");
}

TreeSpec graft(const TreeSpec& base, std::size_t at_state,
               const std::vector<std::pair<TreeSpec, Card>>& parts) {
  if (at_state >= base.state_count()) throw RangeError("graft state out of range");
  if (parts.empty()) return base;
  std::vector<std::string> states = base.states();
  Adjacency edges = base.all_edges();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& [part, mult] = parts[i];
    const std::size_t offset = states.size();
    for (std::size_t s = 0; s < part.state_count(); ++s) {
      states.push_back("g" + std::to_string(i) + "/" + part.states()[s]);
      edges.emplace_back();
      for (auto e : part.edges(s)) {
        e.child += offset;
        edges.back().push_back(e);
      }
    }
    edges[at_state].push_back(TreeEdge{0, offset + part.root(), mult});
  }
  return TreeSpec(std::move(states), base.root(), std::move(edges));
}

PruneResult prune_fixpoint(const TreeSpec& tree, PruneMode mode) {
  Adjacency edges = tree.all_edges();
  const std::size_t n = edges.size();
  std::size_t steps = 0;
  for (;;) {
    std::vector<bool> bad(n);
    for (std::size_t s = 0; s < n; ++s) bad[s] = violates(mode, children_of(edges[s]));
    const std::vector<bool> keep = reaches(edges, bad);
    bool deleted = false;
    for (auto& list : edges) {
      auto it = std::remove_if(list.begin(), list.end(),
                               [&](const TreeEdge& e) { return !keep[e.child]; });
      if (it != list.end()) {
        deleted = true;
        list.erase(it, list.end());
      }
    }
    if (!deleted) break;
    ++steps;
  }
  return PruneResult{TreeSpec(tree.states(), tree.root(), std::move(edges)), steps};
}

std::string to_string(TreeClass c) {
  switch (c) {
    case TreeClass::kBottom:
      return "Bottom";
    case TreeClass::kMid:
      return "Mid";
    case TreeClass::kTop:
      return "Top";
  }
  return "?";
}

namespace {

void check_dichotomy(const TreeSpec& fixpoint, PruneMode mode) {
  const std::size_t n = fixpoint.state_count();
  std::vector<bool> bad(n);
  for (std::size_t s = 0; s < n; ++s) bad[s] = violates(mode, fixpoint.child_count(s));
  const std::vector<bool> ok = reaches(fixpoint.all_edges(), bad);
  for (std::size_t s = 0; s < n; ++s) {
    if (!ok[s])
      throw InternalError("pruning fixpoint state '" + fixpoint.states()[s] +
                          "' fails the dichotomy check");
  }
}

}  // namespace

TreeClass classify(const TreeSpec& tree) {
  const PruneResult strong = prune_fixpoint(tree, PruneMode::kStrong);
  if (!strong.tree.is_trivial()) {
    check_dichotomy(strong.tree, PruneMode::kStrong);
    return TreeClass::kTop;
  }
  const PruneResult weak = prune_fixpoint(tree, PruneMode::kWeak);
  if (!weak.tree.is_trivial()) {
    check_dichotomy(weak.tree, PruneMode::kWeak);
    return TreeClass::kMid;
  }
  return TreeClass::kBottom;
}

bool uncountable_paths(const TreeSpec& tree) {
  const auto reach = strict_reach(tree.all_edges());
  for (std::size_t s = 0; s < tree.state_count(); ++s) {
    if (!reach[s][s]) continue;
    Card inside = 0;
    for (const auto& e : tree.edges(s))
      if (reach[e.child][s]) inside += edge_copies(e);
    if (inside > Card(1)) return true;
  }
  return false;
}

LevelProfile level_profile(const TreeSpec& tree, std::size_t k, std::size_t cap) {
  if (k > cap)
    throw ResourceError("level " + std::to_string(k) + " exceeds depth cap " +
                        std::to_string(cap));
  const std::size_t n = tree.state_count();
  // at[L][s]: vertices at relative level L below one vertex of state s.
  std::vector<std::vector<LevelProfile>> at(k + 1, std::vector<LevelProfile>(n));
  for (std::size_t s = 0; s < n; ++s) {
    if (tree.child_count(s).is_infinite())
      at[0][s] = {0, 1};
    else
      at[0][s] = {1, 0};
  }
  for (std::size_t level = 1; level <= k; ++level) {
    for (std::size_t s = 0; s < n; ++s) {
      LevelProfile total{0, 0};
      for (const auto& e : tree.edges(s)) {
        if (e.all_delays()) {
          // Chains of every delay >= level pass through this level.
          total.finite_degree += Card::omega() * e.mult;
          for (std::size_t j = 0; j < level; ++j) {
            total.finite_degree += e.mult * at[j][e.child].finite_degree;
            total.infinite_degree += e.mult * at[j][e.child].infinite_degree;
          }
        } else if (*e.delay >= level) {
          total.finite_degree += e.mult;
        } else {
          const auto& below = at[level - 1 - *e.delay][e.child];
          total.finite_degree += e.mult * below.finite_degree;
          total.infinite_degree += e.mult * below.infinite_degree;
        }
      }
      at[level][s] = total;
    }
  }
  return at[k][tree.root()];
}

std::vector<std::size_t> FiniteTree::rooted_path(std::size_t v) const {
  std::vector<std::size_t> path;
  for (std::int64_t u = static_cast<std::int64_t>(v); u >= 0; u = parent[static_cast<std::size_t>(u)])
    path.push_back(static_cast<std::size_t>(u));
  std::reverse(path.begin(), path.end());
  return path;
}

bool FiniteTree::is_ancestor(std::size_t a, std::size_t d) const {
  for (std::int64_t u = static_cast<std::int64_t>(d); u >= 0; u = parent[static_cast<std::size_t>(u)])
    if (static_cast<std::size_t>(u) == a) return true;
  return false;
}

std::vector<std::size_t> FiniteTree::level_sizes() const {
  std::vector<std::size_t> sizes;
  for (std::size_t l : level) {
    if (l >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  return sizes;
}

FiniteTree FiniteTree::from_parents(std::vector<std::int64_t> parent) {
  if (parent.empty() || parent[0] != -1) throw ParseError("vertex 0 must be the root");
  FiniteTree t;
  t.level.assign(parent.size(), 0);
  for (std::size_t v = 1; v < parent.size(); ++v) {
    if (parent[v] < 0 || static_cast<std::size_t>(parent[v]) >= v)
      throw ParseError("parent of vertex " + std::to_string(v) +
                       " must be an earlier vertex");
    t.level[v] = t.level[static_cast<std::size_t>(parent[v])] + 1;
  }
  t.parent = std::move(parent);
  return t;
}

FiniteTree materialize(const TreeSpec& tree, std::size_t depth, std::size_t width,
                       std::size_t cap) {
  struct Pending {
    std::size_t vertex;
    std::size_t state;        // terminal state of the chain, or the vertex state
    std::uint64_t chain = 0;  // chain vertices still to come after this one
    bool in_chain = false;
  };
  FiniteTree out;
  out.parent.push_back(-1);
  out.level.push_back(0);
  std::deque<Pending> queue{{0, tree.root(), 0, false}};

  auto add = [&](std::size_t parent, std::size_t state, std::uint64_t delay) {
    if (out.size() >= cap)
      throw ResourceError("materialized tree exceeds " + std::to_string(cap) + " vertices",
                          out.size());
    const std::size_t v = out.size();
    out.parent.push_back(static_cast<std::int64_t>(parent));
    out.level.push_back(out.level[parent] + 1);
    if (delay == 0)
      queue.push_back({v, state, 0, false});
    else
      queue.push_back({v, state, delay - 1, true});
  };

  while (!queue.empty()) {
    const Pending p = queue.front();
    queue.pop_front();
    if (out.level[p.vertex] >= depth) continue;
    if (p.in_chain) {
      add(p.vertex, p.state, p.chain);
      continue;
    }
    for (const auto& e : tree.edges(p.state)) {
      std::uint64_t copies = e.mult.is_infinite() ? width : e.mult.value();
      if (e.mult.is_infinite()) out.truncated = true;
      if (e.all_delays()) {
        out.truncated = true;
        for (std::uint64_t c = 0; c < copies; ++c)
          for (std::uint64_t d = 0; d < width; ++d) add(p.vertex, e.child, d);
      } else {
        for (std::uint64_t c = 0; c < copies; ++c) add(p.vertex, e.child, *e.delay);
      }
    }
  }
  return out;
}

FiniteSemigroup path_semigroup(const FiniteTree& tree, std::size_t cap) {
  if (tree.truncated)
    throw PreconditionError("path semigroup of a truncated tree is not defined");
  if (tree.size() > cap)
    throw ResourceError("tree has " + std::to_string(tree.size()) + " vertices, cap is " +
                            std::to_string(cap),
                        tree.size());
  std::vector<std::vector<std::size_t>> by_level;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (tree.level[v] >= by_level.size()) by_level.resize(tree.level[v] + 1);
    by_level[tree.level[v]].push_back(v);
  }
  std::vector<Chart> elements;
  std::vector<PointPair> pairs;
  for (const auto& level : by_level) {
    for (std::size_t v : level) {
      const auto from = tree.rooted_path(v);
      for (std::size_t w : level) {
        const auto to = tree.rooted_path(w);
        pairs.clear();
        for (std::size_t i = 0; i < from.size(); ++i)
          pairs.emplace_back(static_cast<Point>(from[i]), static_cast<Point>(to[i]));
        std::sort(pairs.begin(), pairs.end());
        elements.push_back(Chart::from_pairs(tree.size(), pairs));
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  FiniteSemigroup s(tree.size(), elements, elements);
  if (!predicates(s).inverse_closed)
    throw InternalError("path-bijection set is not inverse-closed");
  return s;
}

std::optional<std::vector<std::size_t>> find_quasi_subtree(const FiniteTree& host,
                                                           const FiniteTree& pattern) {
  std::vector<std::size_t> order(pattern.size());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pattern.level[a] < pattern.level[b];
  });
  const std::size_t levels = pattern.level_sizes().size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level_map(levels, kUnset);
  std::vector<std::size_t> image(pattern.size(), kUnset);
  std::vector<bool> used(host.size(), false);

  level_map[0] = 0;
  image[0] = 0;
  used[0] = true;

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == order.size()) return true;
    const std::size_t y = order[i];
    const std::size_t ly = pattern.level[y];
    const std::size_t anchor = image[static_cast<std::size_t>(pattern.parent[y])];
    const bool fresh_level = level_map[ly] == kUnset;
    for (std::size_t h = 0; h < host.size(); ++h) {
      if (used[h]) continue;
      if (fresh_level ? host.level[h] <= level_map[ly - 1] : host.level[h] != level_map[ly])
        continue;
      if (!host.is_ancestor(anchor, h)) continue;
      bool consistent = true;
      for (std::size_t j = 0; j < i && consistent; ++j) {
        const std::size_t x = order[j];
        consistent = pattern.is_ancestor(x, y) == host.is_ancestor(image[x], h);
      }
      if (!consistent) continue;
      if (fresh_level) level_map[ly] = host.level[h];
      image[y] = h;
      used[h] = true;
      if (place(i + 1)) return true;
      used[h] = false;
      image[y] = kUnset;
      if (fresh_level) level_map[ly] = kUnset;
    }
    return false;
  };

  if (pattern.size() == 0 || host.size() == 0) return std::nullopt;
  if (!place(1)) return std::nullopt;
  return image;
}

TreeSpec random_tree_spec(std::mt19937_64& rng, std::size_t max_states) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
  std::uniform_int_distribution<std::size_t> state(0, n - 1), edges(0, 3), delay(0, 2),
      mult(1, 3), percent(0, 99);
  std::vector<std::string> names;
  std::vector<std::vector<TreeEdge>> all(n);
  for (std::size_t s = 0; s < n; ++s) {
    names.push_back("s" + std::to_string(s));
    const std::size_t k = edges(rng);
    for (std::size_t i = 0; i < k; ++i) {
      TreeEdge e;
      if (percent(rng) >= 10) e.delay = delay(rng);
      e.child = state(rng);
      e.mult = percent(rng) < 15 ? Card::omega() : Card(mult(rng));
      all[s].push_back(e);
    }
  }
  return TreeSpec(names, 0, all);
}

FiniteTree random_finite_tree(std::mt19937_64& rng, std::size_t max_vertices) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_vertices)(rng);
  std::vector<std::int64_t> parent{-1};
  for (std::size_t v = 1; v < n; ++v)
    parent.push_back(static_cast<std::int64_t>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng)));
  return FiniteTree::from_parents(std::move(parent));
}

}  // namespace chartlab
