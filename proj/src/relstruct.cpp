#include "chartlab/relstruct.hpp"

#include <algorithm>
#include <unordered_set>

#include "chartlab/engine.hpp"
#include "chartlab/error.hpp"

namespace chartlab {

RelStructure::RelStructure(std::size_t n, std::vector<Relation> relations)
    : n_(n), relations_(std::move(relations)) {
  std::set<std::string> names;
  for (const auto& rel : relations_) {
    if (!names.insert(rel.name).second) throw ParseError("duplicate relation name '" + rel.name + "'");
    if (rel.arity < 1) throw ParseError("relation '" + rel.name + "' has arity 0");
    for (const auto& t : rel.tuples) {
      if (t.size() != rel.arity)
        throw ParseError("tuple of wrong length in relation '" + rel.name + "'");
      for (Point x : t)
        if (x < 0 || static_cast<std::size_t>(x) >= n_)
          throw ParseError("tuple coordinate " + std::to_string(x) + " out of range in '" +
                           rel.name + "'");
    }
  }
}

RelStructure RelStructure::graph(std::size_t n, const std::vector<std::pair<Point, Point>>& edges) {
  Relation e{"E", 2, {}};
  for (auto [a, b] : edges) {
    e.tuples.insert({a, b});
    e.tuples.insert({b, a});
  }
  return RelStructure(n, {e});
}

RelStructure RelStructure::chain(std::size_t n, bool strict) {
  Relation le{strict ? "lt" : "le", 2, {}};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + (strict ? 1 : 0); y < n; ++y)
      le.tuples.insert({static_cast<Point>(x), static_cast<Point>(y)});
  return RelStructure(n, {le});
}

namespace {

bool tuple_over_domain(const Tuple& t, const Chart& f) {
  return std::all_of(t.begin(), t.end(), [&](Point x) { return f.defined_at(x); });
}

Tuple image_of(const Tuple& t, const Chart& f) {
  Tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = f[t[i]];
  return out;
}

void check_cap(const RelStructure& r, std::size_t cap) {
  if (r.ground_size() > cap)
    throw ResourceError("relational structure on " + std::to_string(r.ground_size()) +
                        " points exceeds cap " + std::to_string(cap));
}

template <typename Pred>
FiniteSemigroup parallel_filter(std::size_t n, Pred keep) {
  auto all = enumerate_all(n, n);
  std::vector<char> flag(all.size(), 0);
  const long long count = static_cast<long long>(all.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) flag[i] = keep(all[static_cast<std::size_t>(i)]);
  std::vector<Chart> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (flag[i]) out.push_back(std::move(all[i]));
  auto gens = out;
  return FiniteSemigroup(n, std::move(out), std::move(gens));
}

template <typename Pred>
FiniteSemigroup serial_filter(std::size_t n, Pred keep) {
  std::vector<Chart> out;
  for (auto& f : enumerate_all(n, n))
    if (keep(f)) out.push_back(std::move(f));
  auto gens = out;
  return FiniteSemigroup(n, std::move(out), std::move(gens));
}

}  // namespace

bool preserves(const RelStructure& r, const Chart& f) {
  for (const auto& rel : r.relations())
    for (const auto& t : rel.tuples)
      if (tuple_over_domain(t, f) && !rel.tuples.contains(image_of(t, f))) return false;
  return true;
}

bool is_partial_automorphism(const RelStructure& r, const Chart& f) {
  const auto dom = f.domain();
  for (const auto& rel : r.relations()) {
    if (dom.empty()) break;
    // Odometer over dom^arity.
    std::vector<std::size_t> idx(rel.arity, 0);
    Tuple t(rel.arity);
    while (true) {
      for (std::size_t i = 0; i < rel.arity; ++i) t[i] = dom[idx[i]];
      if (rel.tuples.contains(t) != rel.tuples.contains(image_of(t, f))) return false;
      std::size_t i = 0;
      while (i < rel.arity && ++idx[i] == dom.size()) idx[i++] = 0;
      if (i == rel.arity) break;
    }
  }
  return true;
}

FiniteSemigroup ip_end(const RelStructure& r, std::size_t cap) {
  check_cap(r, cap);
  return parallel_filter(r.ground_size(), [&](const Chart& f) { return preserves(r, f); });
}

FiniteSemigroup p_aut(const RelStructure& r, std::size_t cap) {
  check_cap(r, cap);
  return parallel_filter(r.ground_size(),
                         [&](const Chart& f) { return is_partial_automorphism(r, f); });
}

FiniteSemigroup ip_end_reference(const RelStructure& r, std::size_t cap) {
  check_cap(r, cap);
  return serial_filter(r.ground_size(), [&](const Chart& f) { return preserves(r, f); });
}

FiniteSemigroup p_aut_reference(const RelStructure& r, std::size_t cap) {
  check_cap(r, cap);
  return serial_filter(r.ground_size(),
                       [&](const Chart& f) { return is_partial_automorphism(r, f); });
}

std::size_t count_by_extension(const RelStructure& r, MorphismKind kind, std::size_t cap) {
  check_cap(r, cap);
  const std::size_t n = r.ground_size();
  // Tuples indexed by their largest coordinate: a tuple is checked once every
  // coordinate has been decided, i.e. when its maximum is assigned.
  struct Entry {
    const Relation* rel;
    Tuple tuple;
  };
  std::vector<std::vector<Entry>> by_max(n);
  for (const auto& rel : r.relations()) {
    if (kind == MorphismKind::kIpEnd) {
      for (const auto& t : rel.tuples) by_max[*std::max_element(t.begin(), t.end())].push_back({&rel, t});
    } else {
      // Every tuple over {0..n-1} matters for two-way preservation.
      Tuple t(rel.arity, 0);
      while (true) {
        by_max[*std::max_element(t.begin(), t.end())].push_back({&rel, t});
        std::size_t i = 0;
        while (i < rel.arity && ++t[i] == static_cast<Point>(n)) t[i++] = 0;
        if (i == rel.arity) break;
      }
    }
  }
  std::vector<Point> img(n, Chart::kUndefined);
  std::vector<bool> used(n, false);
  std::size_t count = 0;
  auto consistent = [&](std::size_t x) {
    for (const auto& e : by_max[x]) {
      Tuple image(e.tuple.size());
      bool defined = true;
      for (std::size_t i = 0; i < e.tuple.size() && defined; ++i) {
        image[i] = img[e.tuple[i]];
        defined = image[i] != Chart::kUndefined;
      }
      if (!defined) continue;
      const bool in = e.rel->tuples.contains(e.tuple);
      const bool out = e.rel->tuples.contains(image);
      if (kind == MorphismKind::kIpEnd ? (in && !out) : (in != out)) return false;
    }
    return true;
  };
  auto extend = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      ++count;
      return;
    }
    img[x] = Chart::kUndefined;
    self(self, x + 1);
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y]) continue;
      used[y] = true;
      img[x] = static_cast<Point>(y);
      if (consistent(x)) self(self, x + 1);
      used[y] = false;
    }
    img[x] = Chart::kUndefined;
  };
  extend(extend, 0);
  return count;
}

RelStructure canonical_structure(const FiniteSemigroup& s) {
  const std::size_t n = s.ground_size();
  auto pred = predicates(s);
  if (!pred.full || !s.contains(Chart::identity(n)))
    throw PreconditionError("canonical_structure: input is not a full submonoid");
  std::vector<Relation> rels;
  // Distinct-entry tuples of every length 1..n, in lexicographic order.
  std::vector<Tuple> tuples;
  Tuple cur;
  std::vector<bool> used(n, false);
  auto grow = [&](auto&& self) -> void {
    if (!cur.empty()) tuples.push_back(cur);
    if (cur.size() == n) return;
    for (std::size_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      used[x] = true;
      cur.push_back(static_cast<Point>(x));
      self(self);
      cur.pop_back();
      used[x] = false;
    }
  };
  grow(grow);
  std::sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& alpha : tuples) {
    Relation rel;
    rel.name = "R";
    for (Point x : alpha) rel.name += "_" + std::to_string(x);
    rel.arity = alpha.size();
    for (const auto& f : s.elements())
      if (tuple_over_domain(alpha, f)) rel.tuples.insert(image_of(alpha, f));
    rels.push_back(std::move(rel));
  }
  return RelStructure(n, std::move(rels));
}

std::vector<Chart> inverse_intersection(const FiniteSemigroup& s) {
  std::vector<Chart> out;
  for (const auto& f : s.elements())
    if (s.contains(invert(f))) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

CorrespondenceReport verify_correspondence(const FiniteSemigroup& s) {
  if (s.ground_size() > kCorrespondenceCap)
    throw ResourceError("verify_correspondence: n exceeds 4");
  auto structure = canonical_structure(s);
  auto end = ip_end(structure);
  CorrespondenceReport report;
  report.roundtrip = end.same_elements(s);
  report.paut_is_intersection = p_aut(structure).sorted_elements() == inverse_intersection(end);
  return report;
}

}  // namespace chartlab
