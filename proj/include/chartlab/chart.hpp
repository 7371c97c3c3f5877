#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chartlab/card.hpp"

namespace chartlab {

using Point = std::int32_t;
using PointPair = std::pair<Point, Point>;

/// An injective partial map on the ground set {0, ..., n-1}: an element of
/// the symmetric inverse monoid I_n. Charts are immutable values; equality is
/// structural. Composition reads left to right, x(fg) = (xf)g.
class Chart {
 public:
  static constexpr Point kUndefined = -1;

  /// The empty chart on zero points.
  Chart() = default;
  /// The empty chart on n points.
  explicit Chart(std::size_t n);

  /// Validates functionality, injectivity and range.
  static Chart from_pairs(std::size_t n, std::span<const PointPair> pairs);
  static Chart from_pairs(std::size_t n, std::initializer_list<PointPair> pairs);
  /// `images[x]` is xf or kUndefined.
  static Chart from_images(std::vector<Point> images);
  static Chart identity(std::size_t n);
  static Chart partial_identity(std::size_t n, std::span<const Point> points);

  std::size_t ground_size() const { return images_.size(); }
  std::size_t rank() const { return rank_; }
  bool empty() const { return rank_ == 0; }

  /// xf, or kUndefined.
  Point operator[](Point x) const { return images_[static_cast<std::size_t>(x)]; }
  bool defined_at(Point x) const { return (*this)[x] != kUndefined; }
  const std::vector<Point>& images() const { return images_; }

  /// Pairs sorted by domain point.
  std::vector<PointPair> pairs() const;
  std::vector<Point> domain() const;
  std::vector<Point> image() const;

  bool is_permutation() const { return rank_ == images_.size(); }
  bool is_partial_identity() const;

  friend bool operator==(const Chart&, const Chart&) = default;
  /// Canonical order: ground size, then rank, then lexicographic on the
  /// sorted pair list.
  friend std::strong_ordering operator<=>(const Chart& a, const Chart& b);

  std::size_t hash() const;

 private:
  std::vector<Point> images_;
  std::size_t rank_ = 0;
};

struct ChartHash {
  std::size_t operator()(const Chart& f) const { return f.hash(); }
};

enum class Side { kDomain, kImage };

struct ChartMeasures {
  std::size_t rank = 0;
  std::size_t defect = 0;
  std::size_t collapse = 0;
  friend bool operator==(const ChartMeasures&, const ChartMeasures&) = default;
};

/// Throws SizeMismatch when the ground sizes differ.
Chart compose(const Chart& f, const Chart& g);
Chart invert(const Chart& f);
/// Keeps the pairs whose domain (or image) point lies in `points`.
Chart restrict(const Chart& f, std::span<const Point> points, Side side);
ChartMeasures measures(const Chart& f);

inline Chart operator*(const Chart& f, const Chart& g) { return compose(f, g); }

/// Default cap on n for enumerate_all.
inline constexpr std::size_t kEnumerateCap = 7;

/// Every chart on n points exactly once, ordered by rank and then
/// lexicographically on the pair list. Throws ResourceError if n > cap.
std::vector<Chart> enumerate_all(std::size_t n, std::size_t cap = kEnumerateCap);

/// |I_n| = sum_k C(n,k)^2 k!.
std::uint64_t symmetric_inverse_monoid_order(std::size_t n);

/// Text form `n:[x>y,x>y,...]`, sorted by x.
std::string to_text(const Chart& f);
Chart chart_from_text(std::string_view text);

}  // namespace chartlab

template <>
struct std::hash<chartlab::Chart> {
  std::size_t operator()(const chartlab::Chart& f) const { return f.hash(); }
};
