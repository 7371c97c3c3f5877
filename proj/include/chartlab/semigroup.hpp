#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "chartlab/chart.hpp"

namespace chartlab {

/// A product-closed set of charts on a common ground set, with the generators
/// it was built from. Elements keep their discovery (or enumeration) order;
/// ids are positions in `elements()`.
class FiniteSemigroup {
 public:
  FiniteSemigroup() = default;
  FiniteSemigroup(std::size_t n, std::vector<Chart> elements, std::vector<Chart> generators);

  std::size_t ground_size() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Chart>& elements() const { return elements_; }
  const std::vector<Chart>& generators() const { return generators_; }

  bool contains(const Chart& f) const { return index_.contains(f); }
  std::optional<std::size_t> id_of(const Chart& f) const;
  /// True iff every element of `other` lies in this semigroup.
  bool includes(const FiniteSemigroup& other) const;
  bool includes(std::span<const Chart> charts) const;

  /// Same element set, ignoring order and generators.
  bool same_elements(const FiniteSemigroup& other) const;
  /// Elements in canonical chart order.
  std::vector<Chart> sorted_elements() const;

 private:
  std::size_t n_ = 0;
  std::vector<Chart> elements_;
  std::vector<Chart> generators_;
  std::unordered_map<Chart, std::size_t, ChartHash> index_;
};

/// A word over generator indices; evaluates left to right.
using Word = std::vector<std::uint32_t>;

/// Default cap on the order of a closure; CHARTLAB_CAP overrides it.
inline constexpr std::size_t kDefaultClosureCap = 50'000;
std::size_t default_closure_cap();

struct ClosureOptions {
  std::size_t cap = default_closure_cap();
  bool record_words = false;
};

struct ClosureResult {
  FiniteSemigroup semigroup;
  /// Number of new elements found in each breadth-first round.
  std::vector<std::size_t> frontier_sizes;
  /// words[id] evaluates to element id; empty unless record_words.
  std::vector<Word> words;
};

/// Breadth-first right-Cayley closure: round 0 holds the (deduplicated)
/// generators, round r+1 the new products frontier(r) x generators. Products
/// of a round are computed in parallel, then merged in (element, generator)
/// order, so ids do not depend on the thread count.
/// Throws ResourceError once the order exceeds `options.cap`.
ClosureResult closure_report(std::span<const Chart> gens, std::size_t n,
                             const ClosureOptions& options = {});
FiniteSemigroup closure(std::span<const Chart> gens, std::size_t n,
                        std::size_t cap = default_closure_cap());

/// Serial reference closure: rounds of new = frontier x elements ∪
/// elements x frontier until no new element appears. Quadratic; kept to
/// cross-check the parallel kernel.
FiniteSemigroup closure_reference(std::span<const Chart> gens, std::size_t n,
                                  std::size_t cap = default_closure_cap());

/// Product of the generators named by `word`; the empty word is rejected.
Chart evaluate_word(const Word& word, std::span<const Chart> gens);

/// True iff every pairwise product of `charts` lies in `charts`.
bool is_product_closed(std::span<const Chart> charts);

// Frequently used subsets of I_n.

std::vector<Chart> symmetric_group(std::size_t n);
/// {n-cycle, (0 1)} for n >= 2, {id} for n = 1, {} for n = 0.
std::vector<Chart> symmetric_group_generators(std::size_t n);
/// All charts of rank exactly k, in canonical order.
std::vector<Chart> charts_of_rank(std::size_t n, std::size_t k);
/// F(n, mu): all charts of rank < mu.
std::vector<Chart> small_charts(std::size_t n, std::size_t mu);

}  // namespace chartlab
