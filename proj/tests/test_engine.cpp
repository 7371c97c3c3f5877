#include <random>

#include "chartlab/engine.hpp"
#include "chartlab/error.hpp"
#include "chartlab/semigroup.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chartlab;

namespace {

Chart cycle3() { return Chart::from_pairs(3, {{0, 1}, {1, 2}, {2, 0}}); }
Chart swap01(std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
  std::swap(img[0], img[1]);
  return Chart::from_images(img);
}

std::set<oracle::Relation> relations_of(const FiniteSemigroup& s) {
  std::set<oracle::Relation> out;
  for (const auto& f : s.elements()) out.insert(oracle::relation_of(f));
  return out;
}

}  // namespace

TEST_CASE("closure of Sym(3) generators") {
  std::vector<Chart> gens{cycle3(), swap01(3)};
  auto s = closure(gens, 3);
  CHECK(oracle::perm_group_order({{1, 2, 0}, {1, 0, 2}}) == 6);
  CHECK(s.order() == 6);
  CHECK(closure(std::vector<Chart>{}, 3).order() == 0);
}

TEST_CASE("Sym(3) with a rank-2 partial identity generates I_3") {
  auto gens = symmetric_group(3);
  std::vector<Point> pts{0, 1};
  gens.push_back(Chart::partial_identity(3, pts));
  auto s = closure(gens, 3);
  CHECK(s.order() == 34);
  CHECK(s.order() == enumerate_all(3).size());
}

TEST_CASE("closure agrees with the reference and the relational oracle") {
  std::mt19937_64 rng(5);
  auto all = enumerate_all(3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Chart> gens;
    std::vector<oracle::Relation> rels;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      gens.push_back(all[rng() % all.size()]);
      rels.push_back(oracle::relation_of(gens.back()));
    }
    auto fast = closure(gens, 3);
    auto ref = closure_reference(gens, 3);
    CHECK(fast.same_elements(ref));
    CHECK(relations_of(fast) == oracle::relation_closure(rels));
    // Idempotence of closure.
    CHECK(closure(fast.elements(), 3).same_elements(fast));
  }
}

TEST_CASE("closure is deterministic and records valid words") {
  std::vector<Chart> gens{Chart::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}}), swap01(4),
                          Chart::from_pairs(4, {{3, 0}})};
  ClosureOptions opt;
  opt.record_words = true;
  auto a = closure_report(gens, 4, opt);
  auto b = closure_report(gens, 4, opt);
  CHECK(a.semigroup.elements() == b.semigroup.elements());
  CHECK(a.frontier_sizes == b.frontier_sizes);
  std::size_t total = 0;
  for (auto s : a.frontier_sizes) total += s;
  CHECK(total == a.semigroup.order());
  for (std::size_t id = 0; id < a.semigroup.order(); ++id)
    CHECK(evaluate_word(a.words[id], a.semigroup.generators()) == a.semigroup.elements()[id]);
}

TEST_CASE("closure cap raises a resource error with a partial count") {
  auto gens = symmetric_group_generators(4);
  gens.push_back(Chart::from_pairs(4, {{0, 0}, {1, 1}, {2, 2}}));
  try {
    closure(gens, 4, 50);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.partial() > 50);
  }
  CHECK_THROWS_AS(closure_reference(gens, 4, 50), ResourceError);
}

TEST_CASE("idempotents") {
  auto e3 = idempotents(3);
  CHECK(e3.order() == 8);
  std::size_t filtered = 0;
  for (const auto& f : enumerate_all(3))
    if (f * f == f) ++filtered;
  CHECK(filtered == 8);
  CHECK(idempotents(0).order() == 1);
  for (const auto& e : e3.elements()) CHECK(invert(e) == e);
}

TEST_CASE("predicates") {
  auto i3 = closure(enumerate_all(3), 3);
  auto p = predicates(i3);
  CHECK(p.inverse_closed);
  CHECK(p.full);
  CHECK_FALSE(p.subgroups_trivial);

  auto q = predicates(idempotents(3));
  CHECK(q.inverse_closed);
  CHECK(q.full);
  CHECK(q.subgroups_trivial);

  std::vector<Chart> one{Chart::from_pairs(2, {{0, 1}})};
  auto s = closure(one, 2);
  CHECK(relations_of(s) == oracle::relation_closure({oracle::relation_of(one[0])}));
  CHECK(s.order() == 2);
  CHECK_FALSE(predicates(s).inverse_closed);
}

TEST_CASE("orbits") {
  std::vector<Chart> sw{Chart::from_pairs(3, {{0, 1}, {1, 0}})};
  auto blocks = orbits(closure(sw, 3));
  CHECK(blocks == std::vector<std::vector<Point>>{{0, 1}});

  std::vector<Chart> id{Chart::identity(3)};
  CHECK(orbits(closure(id, 3)) == std::vector<std::vector<Point>>{{0}, {1}, {2}});
  CHECK(orbits(closure(enumerate_all(3), 3)) == std::vector<std::vector<Point>>{{0, 1, 2}});

  std::vector<Chart> oneway{Chart::from_pairs(2, {{0, 1}})};
  CHECK_THROWS_AS(orbits(closure(oneway, 2)), PreconditionError);
}

TEST_CASE("relative_generates") {
  auto i4 = closure(enumerate_all(4), 4);
  auto sym4 = symmetric_group(4);
  std::vector<Chart> u{Chart::from_pairs(4, {{0, 3}, {1, 0}, {2, 1}})};
  auto r = relative_generates(sym4, u, i4, true);
  CHECK(r.succeeded);
  CHECK(r.witness_words.size() == 209);
  std::vector<Chart> gens = sym4;
  gens.insert(gens.end(), u.begin(), u.end());
  for (const auto& [chart, word] : r.witness_words) CHECK(evaluate_word(word, gens) == chart);

  auto sym3 = closure(symmetric_group(3), 3);
  auto fail = relative_generates(idempotents(3).elements(), {}, sym3);
  CHECK_FALSE(fail.succeeded);
  CHECK(fail.missing.has_value());

  auto same = relative_generates(i4.elements(), {}, i4);
  CHECK(same.succeeded);
}

TEST_CASE("relative_rank") {
  auto i3 = closure(enumerate_all(3), 3);
  auto r = relative_rank(symmetric_group(3), i3, 3);
  REQUIRE(r);
  CHECK(r->rank == 1);
  CHECK(r->witness.front().rank() == 2);
  CHECK(closure(symmetric_group(3), 3).order() != 34);

  auto zero = relative_rank(i3.elements(), i3, 3);
  REQUIRE(zero);
  CHECK(zero->rank == 0);

  // Exhaustive subset search: E_2 needs both rank-1 idempotents and the
  // identity; the empty chart is their product.
  auto e2 = idempotents(2);
  std::size_t best = 99;
  const auto& el = e2.elements();
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<Chart> u;
    for (unsigned i = 0; i < 4; ++i)
      if (mask >> i & 1U) u.push_back(el[i]);
    if (closure(u, 2).order() == 4) best = std::min<std::size_t>(best, u.size());
  }
  CHECK(best == 3);
  auto re = relative_rank({}, e2, 3);
  REQUIRE(re);
  CHECK(re->rank == best);
  CHECK_FALSE(relative_rank({}, e2, 2).has_value());
  CHECK_THROWS_AS(relative_rank({}, e2, 4), ParameterError);
}

TEST_CASE("wagner_preston") {
  std::vector<Chart> sw{swap01(2)};
  auto z2 = closure(sw, 2);
  REQUIRE(z2.order() == 2);
  auto rep = wagner_preston(z2);
  CHECK(rep.size() == 2);
  for (const auto& c : rep) {
    CHECK(c.ground_size() == 2);
    CHECK(c.is_permutation());
  }
  std::vector<Chart> e{Chart::identity(1)};
  auto triv = wagner_preston(closure(e, 1));
  CHECK(triv == std::vector<Chart>{Chart::identity(1)});

  auto e2 = idempotents(2);
  auto rep2 = wagner_preston(e2);
  CHECK(rep2.size() == 4);
  CHECK(std::set<Chart>(rep2.begin(), rep2.end()).size() == 4);
  CHECK(is_injective_homomorphism(e2, rep2));

  std::vector<Chart> oneway{Chart::from_pairs(2, {{0, 1}})};
  CHECK_THROWS_AS(wagner_preston(closure(oneway, 2)), PreconditionError);
}

TEST_CASE("maximal subgroups of Sym(n)") {
  // Orders frozen from an independent subgroup-lattice enumeration.
  CHECK(maximal_subgroups_sym(2).size() == 1);
  CHECK(maximal_subgroups_sym(2)[0].size() == 1);
  auto m3 = maximal_subgroups_sym(3);
  REQUIRE(m3.size() == 4);
  CHECK(m3[0].size() == 3);
  for (int i = 1; i < 4; ++i) CHECK(m3[i].size() == 2);
  auto m4 = maximal_subgroups_sym(4);
  CHECK(m4.size() == 8);
  std::vector<std::size_t> orders;
  for (const auto& g : m4) orders.push_back(g.size());
  CHECK(orders == std::vector<std::size_t>{12, 8, 8, 8, 6, 6, 6, 6});
  CHECK(all_subgroups_sym(4).size() == 30);
  CHECK(maximal_subgroups_sym(5).size() == 22);
  CHECK(all_subgroups_sym(5).size() == 156);
  CHECK(maximal_subgroups_sym(1).empty());
  CHECK_THROWS_AS(maximal_subgroups_sym(6), ResourceError);
}

TEST_CASE("xiuliang family") {
  auto f2 = xiuliang_family(2);
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].semigroup.order() == 3);
  CHECK(f2[1].semigroup.order() == 6);
  auto f3 = xiuliang_family(3);
  CHECK(f3.size() == 1 + maximal_subgroups_sym(3).size());
  for (const auto& m : f3) CHECK(is_product_closed(m.semigroup.elements()));
  CHECK_THROWS_AS(xiuliang_family(0), ParameterError);
}

TEST_CASE("verify_xiuliang") {
  auto r2 = verify_xiuliang(2);
  CHECK(r2.passed());
  CHECK(r2.brute_force_maximal == 2);
  CHECK(r2.brute_force_maximal_nonempty == 2);

  auto r3 = verify_xiuliang(3);
  CHECK(r3.passed());
  CHECK(r3.rank_deficient_generators_checked == 18);

  auto r1 = verify_xiuliang(1);
  CHECK(r1.passed());
  CHECK(r1.family_size == 1);
  CHECK(r1.brute_force_maximal == 2);
}

TEST_CASE("partwise_stabiliser") {
  CHECK(partwise_stabiliser(4, {{0, 1}, {2, 3}}).order() == 4);
  CHECK(partwise_stabiliser(3, {{0}, {1}, {2}}).order() == 1);
  auto whole = partwise_stabiliser(3, {{0, 1, 2}});
  CHECK(whole.same_elements(closure(symmetric_group(3), 3)));
  CHECK_THROWS_AS(partwise_stabiliser(3, {{0, 1}}), PreconditionError);
  CHECK_THROWS_AS(partwise_stabiliser(3, {{0, 1}, {1, 2}}), PreconditionError);
}

TEST_CASE("finite gap: order reversal is not generated by I_<= and I_>= on a 2-chain") {
  std::vector<Chart> monotone;
  for (const auto& f : enumerate_all(2)) {
    bool down = true, up = true;
    for (auto [x, y] : f.pairs()) {
      down = down && y <= x;
      up = up && y >= x;
    }
    if (down || up) monotone.push_back(f);
  }
  auto s = closure(monotone, 2);
  CHECK_FALSE(s.contains(swap01(2)));
  for (const auto& f : s.elements())
    if (f.rank() == 2) CHECK(f == Chart::identity(2));
}
