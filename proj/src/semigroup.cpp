#include "chartlab/semigroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <unordered_set>

#include "chartlab/error.hpp"

namespace chartlab {

FiniteSemigroup::FiniteSemigroup(std::size_t n, std::vector<Chart> elements,
                                 std::vector<Chart> generators)
    : n_(n), elements_(std::move(elements)), generators_(std::move(generators)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].ground_size() != n_)
      throw SizeMismatch("semigroup element on the wrong ground set");
    index_.emplace(elements_[i], i);
  }
}

std::optional<std::size_t> FiniteSemigroup::id_of(const Chart& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FiniteSemigroup::includes(const FiniteSemigroup& other) const {
  return includes(other.elements());
}

bool FiniteSemigroup::includes(std::span<const Chart> charts) const {
  return std::all_of(charts.begin(), charts.end(),
                     [this](const Chart& f) { return contains(f); });
}

bool FiniteSemigroup::same_elements(const FiniteSemigroup& other) const {
  return n_ == other.n_ && order() == other.order() && includes(other);
}

std::vector<Chart> FiniteSemigroup::sorted_elements() const {
  auto out = elements_;
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t default_closure_cap() {
  if (const char* env = std::getenv("CHARTLAB_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultClosureCap;
}

namespace {

void check_ground(std::span<const Chart> gens, std::size_t n) {
  for (const auto& g : gens)
    if (g.ground_size() != n)
      throw SizeMismatch("generator on " + std::to_string(g.ground_size()) +
                         " points, expected " + std::to_string(n));
}

[[noreturn]] void cap_exceeded(std::size_t cap, std::size_t reached) {
  throw ResourceError("closure exceeded cap of " + std::to_string(cap) +
                          " elements (reached " + std::to_string(reached) + ")",
                      reached);
}

}  // namespace

ClosureResult closure_report(std::span<const Chart> gens, std::size_t n,
                             const ClosureOptions& options) {
  check_ground(gens, n);
  std::vector<Chart> elements;
  std::vector<Chart> unique_gens;
  std::unordered_map<Chart, std::size_t, ChartHash> index;
  // parent[id] = (parent id, generator index); roots carry kNoParent.
  constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
  std::vector<std::pair<std::size_t, std::uint32_t>> parent;

  for (const auto& g : gens) {
    if (index.contains(g)) continue;
    index.emplace(g, elements.size());
    parent.emplace_back(kNoParent, static_cast<std::uint32_t>(unique_gens.size()));
    elements.push_back(g);
    unique_gens.push_back(g);
  }
  if (elements.size() > options.cap) cap_exceeded(options.cap, elements.size());

  ClosureResult result;
  if (!elements.empty()) result.frontier_sizes.push_back(elements.size());

  std::size_t frontier_begin = 0;
  std::vector<Chart> products;
  const std::size_t k = unique_gens.size();
  while (frontier_begin < elements.size()) {
    const std::size_t frontier_end = elements.size();
    const std::size_t count = (frontier_end - frontier_begin) * k;
    products.assign(count, Chart());
    const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < total; ++t) {
      const std::size_t i = frontier_begin + static_cast<std::size_t>(t) / k;
      const std::size_t j = static_cast<std::size_t>(t) % k;
      products[static_cast<std::size_t>(t)] = compose(elements[i], unique_gens[j]);
    }
    for (std::size_t t = 0; t < count; ++t) {
      auto& p = products[t];
      if (index.contains(p)) continue;
      index.emplace(p, elements.size());
      parent.emplace_back(frontier_begin + t / k, static_cast<std::uint32_t>(t % k));
      elements.push_back(std::move(p));
      if (elements.size() > options.cap) cap_exceeded(options.cap, elements.size());
    }
    if (elements.size() > frontier_end) result.frontier_sizes.push_back(elements.size() - frontier_end);
    frontier_begin = frontier_end;
  }

  if (options.record_words) {
    result.words.resize(elements.size());
    for (std::size_t id = 0; id < elements.size(); ++id) {
      auto [p, g] = parent[id];
      if (p == kNoParent) {
        result.words[id] = {g};
      } else {
        result.words[id] = result.words[p];  // parents precede children
        result.words[id].push_back(g);
      }
    }
  }
  result.semigroup = FiniteSemigroup(n, std::move(elements), std::move(unique_gens));
  return result;
}

FiniteSemigroup closure(std::span<const Chart> gens, std::size_t n, std::size_t cap) {
  return closure_report(gens, n, ClosureOptions{cap, false}).semigroup;
}

FiniteSemigroup closure_reference(std::span<const Chart> gens, std::size_t n,
                                  std::size_t cap) {
  check_ground(gens, n);
  std::vector<Chart> elements;
  std::unordered_set<Chart, ChartHash> seen;
  for (const auto& g : gens)
    if (seen.insert(g).second) elements.push_back(g);
  std::vector<Chart> generators = elements;

  std::size_t frontier_begin = 0;
  while (frontier_begin < elements.size()) {
    const std::size_t frontier_end = elements.size();
    std::vector<Chart> fresh;
    auto add = [&](Chart c) {
      if (seen.insert(c).second) {
        fresh.push_back(std::move(c));
        if (frontier_end + fresh.size() > cap) cap_exceeded(cap, frontier_end + fresh.size());
      }
    };
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (std::size_t j = 0; j < frontier_end; ++j) {
        add(compose(elements[i], elements[j]));
        add(compose(elements[j], elements[i]));
      }
    }
    frontier_begin = frontier_end;
    for (auto& c : fresh) elements.push_back(std::move(c));
  }
  return FiniteSemigroup(n, std::move(elements), std::move(generators));
}

Chart evaluate_word(const Word& word, std::span<const Chart> gens) {
  if (word.empty()) throw ParameterError("cannot evaluate the empty word");
  Chart acc = gens[word.front()];
  for (std::size_t i = 1; i < word.size(); ++i) acc = compose(acc, gens[word[i]]);
  return acc;
}

bool is_product_closed(std::span<const Chart> charts) {
  std::unordered_set<Chart, ChartHash> set(charts.begin(), charts.end());
  for (const auto& f : charts)
    for (const auto& g : charts)
      if (!set.contains(compose(f, g))) return false;
  return true;
}

std::vector<Chart> symmetric_group(std::size_t n) {
  std::vector<Point> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Point>(i);
  std::vector<Chart> out;
  do {
    out.push_back(Chart::from_images(p));
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Chart> symmetric_group_generators(std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {Chart::identity(1)};
  std::vector<Point> cycle(n), swap(n);
  for (std::size_t i = 0; i < n; ++i) {
    cycle[i] = static_cast<Point>((i + 1) % n);
    swap[i] = static_cast<Point>(i);
  }
  std::swap(swap[0], swap[1]);
  return {Chart::from_images(cycle), Chart::from_images(swap)};
}

std::vector<Chart> charts_of_rank(std::size_t n, std::size_t k) {
  std::vector<Chart> out;
  for (auto& f : enumerate_all(n, n))
    if (f.rank() == k) out.push_back(std::move(f));
  return out;
}

std::vector<Chart> small_charts(std::size_t n, std::size_t mu) {
  std::vector<Chart> out;
  for (auto& f : enumerate_all(n, n))
    if (f.rank() < mu) out.push_back(std::move(f));
  return out;
}

}  // namespace chartlab
