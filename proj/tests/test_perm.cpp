#include <algorithm>
#include <numeric>
#include <random>

#include "chartlab/error.hpp"
#include "chartlab/perm.hpp"
#include "doctest.h"

using namespace chartlab;

namespace {

// Product by direct pointwise evaluation over a window covering the supports.
bool oracle_product_is(const std::vector<FinSuppPerm>& factors, const FinSuppPerm& p, Nat window) {
  for (Nat x = 0; x < window; ++x) {
    Nat y = x;
    for (const auto& f : factors) y = f(y);
    if (y != p(x)) return false;
  }
  return true;
}

bool oracle_preserves(const FinSuppPerm& p, Nat j) {
  for (Nat x = 0; x < j; ++x)
    if (p(x) >= j) return false;
  return true;
}

void check_locals(const FinSuppPerm& v, const LocalFactors& f) {
  const Nat window = v.support_bound() + 2;
  CHECK(f.g * f.h == v);
  CHECK(oracle_product_is({f.g, f.h}, v, window));
  CHECK(std::is_sorted(f.cuts.begin(), f.cuts.end()));
  CHECK(std::adjacent_find(f.cuts.begin(), f.cuts.end()) == f.cuts.end());
  CHECK(f.cuts.front() == 0);
  CHECK(f.cuts.back() >= v.support_bound());
  for (std::size_t i = 0; i < f.cuts.size(); ++i) {
    if (i % 2 == 0)
      CHECK(oracle_preserves(f.g, f.cuts[i]));
    else
      CHECK(oracle_preserves(f.h, f.cuts[i]));
  }
  // Beyond the last cut both factors are the identity.
  for (Nat x = f.cuts.back(); x < window; ++x) {
    CHECK(f.g(x) == x);
    CHECK(f.h(x) == x);
  }
  // v moves points of each block only to neighbouring blocks.
  for (const auto& [x, y] : v.moved()) {
    auto block = [&](Nat z) {
      return std::upper_bound(f.cuts.begin(), f.cuts.end(), z) - f.cuts.begin();
    };
    CHECK(std::abs(block(x) - block(y)) <= 1);
  }
}

}  // namespace

TEST_CASE("finite-support permutations") {
  const auto p = FinSuppPerm::from_cycles({{0, 1, 2}});
  CHECK(p(0) == 1);
  CHECK(p(2) == 0);
  CHECK(p(7) == 7);
  CHECK(p.support_bound() == 3);
  CHECK(p.cycles() == std::vector<std::vector<Nat>>{{0, 1, 2}});
  CHECK(inverse(p) * p == FinSuppPerm());
  CHECK(FinSuppPerm({{4, 4}, {1, 2}, {2, 1}}).moved().size() == 2);
  CHECK(FinSuppPerm::from_images({1, 0, 2}) == FinSuppPerm::from_cycles({{0, 1}}));
  CHECK_THROWS_AS(FinSuppPerm({{0, 1}}), RangeError);
  CHECK_THROWS_AS(FinSuppPerm({{0, 1}, {1, 1}}), RangeError);
  CHECK_THROWS_AS(FinSuppPerm({{0, 1}, {0, 0}}), RangeError);
  CHECK_THROWS_AS(FinSuppPerm({{-1, -1}}), RangeError);
  // Left-to-right product: (0 1) then (0 2) is the 3-cycle.
  CHECK(FinSuppPerm::from_cycles({{0, 1}}) * FinSuppPerm::from_cycles({{0, 2}}) == p);
}

TEST_CASE("local certificates") {
  const auto id = is_local(FinSuppPerm());
  CHECK(id.local);
  CHECK(id.tail_from == 0);
  CHECK(id.cuts.empty());
  const auto swap = is_local(FinSuppPerm::from_cycles({{0, 1}}));
  CHECK(swap.cuts == std::vector<Nat>{0});
  CHECK(swap.tail_from == 2);
  const auto far = is_local(FinSuppPerm::from_cycles({{0, 5}}));
  CHECK(far.cuts == std::vector<Nat>{0});
  CHECK(far.tail_from == 6);
  const auto mixed = is_local(FinSuppPerm::from_cycles({{0, 1}, {3, 4}}));
  CHECK(mixed.cuts == std::vector<Nat>{0, 2, 3});
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto q = random_finsupp_perm(rng, 16);
    const auto c = is_local(q);
    for (Nat j = 0; j < c.tail_from + 3; ++j) {
      const bool listed = j >= c.tail_from || std::binary_search(c.cuts.begin(), c.cuts.end(), j);
      CHECK(listed == oracle_preserves(q, j));
    }
  }
}

TEST_CASE("two involutions") {
  const auto [a, b] = two_involutions(FinSuppPerm::from_cycles({{0, 1, 2}}));
  CHECK(a == FinSuppPerm::from_cycles({{0, 1}}));
  CHECK(b == FinSuppPerm::from_cycles({{0, 2}}));
  const auto [i1, i2] = two_involutions(FinSuppPerm());
  CHECK(i1.is_identity());
  CHECK(i2.is_identity());
  const auto v = FinSuppPerm::from_cycles({{0, 1}, {2, 7}, {3, 4}});
  const auto [v1, v2] = two_involutions(v);
  CHECK(v1 == v);
  CHECK(v2.is_identity());
}

TEST_CASE("two involutions: every permutation of at most 5 points") {
  for (Nat n = 1; n <= 5; ++n) {
    std::vector<Nat> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    do {
      const auto p = FinSuppPerm::from_images(images);
      const auto [a, b] = two_involutions(p);
      REQUIRE(a.is_involution());
      REQUIRE(b.is_involution());
      REQUIRE(oracle_product_is({a, a}, FinSuppPerm(), n));
      REQUIRE(oracle_product_is({b, b}, FinSuppPerm(), n));
      REQUIRE(oracle_product_is({a, b}, p, n + 1));
    } while (std::next_permutation(images.begin(), images.end()));
  }
}

TEST_CASE("involutions split into two local permutations") {
  for (const auto& v : {FinSuppPerm::from_cycles({{0, 3}}), FinSuppPerm(),
                        FinSuppPerm::from_cycles({{0, 1}, {2, 7}, {3, 4}}),
                        FinSuppPerm::from_cycles({{0, 9}, {1, 8}, {2, 7}, {3, 6}})}) {
    const auto f = involution_to_locals(v);
    check_locals(v, f);
  }
  CHECK(involution_to_locals(FinSuppPerm()).g.is_identity());
  CHECK(involution_to_locals(FinSuppPerm()).h.is_identity());
  CHECK_THROWS_AS(involution_to_locals(FinSuppPerm::from_cycles({{0, 1, 2}})), PreconditionError);
}

TEST_CASE("four local factors") {
  const auto p = FinSuppPerm::from_cycles({{0, 1, 2}});
  const auto f = four_locals(p);
  CHECK(f.size() == 4);
  CHECK(f[0] * f[1] * f[2] * f[3] == p);
  CHECK(four_locals(FinSuppPerm()).empty());

  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto q = random_finsupp_perm(rng, 64);
    const auto factors = four_locals(q);
    if (q.is_identity()) {
      CHECK(factors.empty());
      continue;
    }
    REQUIRE(factors.size() == 4);
    REQUIRE(oracle_product_is(factors, q, q.support_bound() + 2));
    const auto [i1, i2] = two_involutions(q);
    check_locals(i1, involution_to_locals(i1));
    check_locals(i2, involution_to_locals(i2));
  }
}
