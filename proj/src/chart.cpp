#include "chartlab/chart.hpp"

#include <algorithm>
#include <charconv>

#include "chartlab/error.hpp"

namespace chartlab {

Chart::Chart(std::size_t n) : images_(n, kUndefined) {}

Chart Chart::from_pairs(std::size_t n, std::span<const PointPair> pairs) {
  std::vector<Point> images(n, kUndefined);
  std::vector<bool> hit(n, false);
  for (auto [x, y] : pairs) {
    if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= n ||
        static_cast<std::size_t>(y) >= n) {
      throw RangeError("chart pair (" + std::to_string(x) + "," +
                       std::to_string(y) + ") outside ground set of size " +
                       std::to_string(n));
    }
    if (images[x] != kUndefined)
      throw ParseError("chart is not functional at " + std::to_string(x));
    if (hit[y]) throw ParseError("chart is not injective at image " + std::to_string(y));
    images[x] = y;
    hit[y] = true;
  }
  return from_images(std::move(images));
}

Chart Chart::from_pairs(std::size_t n, std::initializer_list<PointPair> pairs) {
  return from_pairs(n, std::span<const PointPair>(pairs.begin(), pairs.size()));
}

Chart Chart::from_images(std::vector<Point> images) {
  Chart f;
  std::vector<bool> hit(images.size(), false);
  for (Point y : images) {
    if (y == kUndefined) continue;
    if (y < 0 || static_cast<std::size_t>(y) >= images.size())
      throw RangeError("image point " + std::to_string(y) + " out of range");
    if (hit[y]) throw ParseError("chart is not injective at image " + std::to_string(y));
    hit[y] = true;
    ++f.rank_;
  }
  f.images_ = std::move(images);
  return f;
}

Chart Chart::identity(std::size_t n) {
  std::vector<Point> images(n);
  for (std::size_t x = 0; x < n; ++x) images[x] = static_cast<Point>(x);
  Chart f;
  f.images_ = std::move(images);
  f.rank_ = n;
  return f;
}

Chart Chart::partial_identity(std::size_t n, std::span<const Point> points) {
  std::vector<PointPair> pairs;
  pairs.reserve(points.size());
  for (Point x : points) pairs.emplace_back(x, x);
  return from_pairs(n, pairs);
}

std::vector<PointPair> Chart::pairs() const {
  std::vector<PointPair> out;
  out.reserve(rank_);
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != kUndefined) out.emplace_back(static_cast<Point>(x), images_[x]);
  return out;
}

std::vector<Point> Chart::domain() const {
  std::vector<Point> out;
  out.reserve(rank_);
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != kUndefined) out.push_back(static_cast<Point>(x));
  return out;
}

std::vector<Point> Chart::image() const {
  std::vector<Point> out;
  out.reserve(rank_);
  for (Point y : images_)
    if (y != kUndefined) out.push_back(y);
  std::sort(out.begin(), out.end());
  return out;
}

bool Chart::is_partial_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != kUndefined && images_[x] != static_cast<Point>(x)) return false;
  return true;
}

std::strong_ordering operator<=>(const Chart& a, const Chart& b) {
  if (auto c = a.ground_size() <=> b.ground_size(); c != 0) return c;
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  // Same rank: walk both sorted pair lists in lockstep.
  std::size_t i = 0, j = 0;
  const std::size_t n = a.ground_size();
  while (true) {
    while (i < n && a.images_[i] == Chart::kUndefined) ++i;
    while (j < n && b.images_[j] == Chart::kUndefined) ++j;
    // Equal rank, so both lists run out together.
    if (i == n || j == n) return std::strong_ordering::equal;
    if (auto c = i <=> j; c != 0) return c;
    if (auto c = a.images_[i] <=> b.images_[j]; c != 0) return c;
    ++i;
    ++j;
  }
}

std::size_t Chart::hash() const {
  // FNV-1a over the image array.
  std::uint64_t h = 1469598103934665603ULL ^ images_.size();
  for (Point y : images_) {
    h ^= static_cast<std::uint32_t>(y);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Chart compose(const Chart& f, const Chart& g) {
  if (f.ground_size() != g.ground_size()) {
    throw SizeMismatch("cannot compose charts on " + std::to_string(f.ground_size()) +
                       " and " + std::to_string(g.ground_size()) + " points");
  }
  const std::size_t n = f.ground_size();
  std::vector<Point> images(n, Chart::kUndefined);
  for (std::size_t x = 0; x < n; ++x) {
    Point y = f.images()[x];
    if (y != Chart::kUndefined) images[x] = g.images()[static_cast<std::size_t>(y)];
  }
  return Chart::from_images(std::move(images));
}

Chart invert(const Chart& f) {
  std::vector<Point> images(f.ground_size(), Chart::kUndefined);
  for (auto [x, y] : f.pairs()) images[y] = x;
  return Chart::from_images(std::move(images));
}

Chart restrict(const Chart& f, std::span<const Point> points, Side side) {
  const std::size_t n = f.ground_size();
  std::vector<bool> keep(n, false);
  for (Point p : points) {
    if (p < 0 || static_cast<std::size_t>(p) >= n)
      throw RangeError("restriction point " + std::to_string(p) + " out of range");
    keep[p] = true;
  }
  std::vector<Point> images(n, Chart::kUndefined);
  for (auto [x, y] : f.pairs())
    if (keep[side == Side::kDomain ? x : y]) images[x] = y;
  return Chart::from_images(std::move(images));
}

ChartMeasures measures(const Chart& f) {
  const std::size_t n = f.ground_size();
  return {f.rank(), n - f.rank(), n - f.rank()};
}

namespace {

void extend(std::size_t x, std::size_t n, std::vector<Point>& images,
            std::vector<bool>& used, std::vector<Chart>& out) {
  if (x == n) {
    out.push_back(Chart::from_images(images));
    return;
  }
  images[x] = Chart::kUndefined;
  extend(x + 1, n, images, used, out);
  for (std::size_t y = 0; y < n; ++y) {
    if (used[y]) continue;
    used[y] = true;
    images[x] = static_cast<Point>(y);
    extend(x + 1, n, images, used, out);
    used[y] = false;
  }
  images[x] = Chart::kUndefined;
}

}  // namespace

std::vector<Chart> enumerate_all(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw ResourceError("enumerate_all: n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<Chart> out;
  out.reserve(symmetric_inverse_monoid_order(n));
  std::vector<Point> images(n, Chart::kUndefined);
  std::vector<bool> used(n, false);
  extend(0, n, images, used, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t symmetric_inverse_monoid_order(std::size_t n) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, k)
  std::uint64_t fact = 1;   // k!
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (n - k + 1) / k;
      fact *= k;
    }
    total += binom * binom * fact;
  }
  return total;
}

std::string to_text(const Chart& f) {
  std::string out = std::to_string(f.ground_size()) + ":[";
  bool first = true;
  for (auto [x, y] : f.pairs()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(x) + '>' + std::to_string(y);
  }
  return out + ']';
}

namespace {

Point parse_point(std::string_view s, std::string_view whole) {
  Point v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("malformed chart text '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Chart chart_from_text(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos || text.size() < colon + 3 ||
      text[colon + 1] != '[' || text.back() != ']') {
    throw ParseError("malformed chart text '" + std::string(text) + "'");
  }
  Point n = parse_point(text.substr(0, colon), text);
  if (n < 0) throw ParseError("negative ground size in '" + std::string(text) + "'");
  std::string_view body = text.substr(colon + 2, text.size() - colon - 3);
  std::vector<PointPair> pairs;
  Point last = -1;
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    auto gt = item.find('>');
    if (gt == std::string_view::npos)
      throw ParseError("malformed chart pair in '" + std::string(text) + "'");
    Point x = parse_point(item.substr(0, gt), text);
    Point y = parse_point(item.substr(gt + 1), text);
    if (x <= last) throw ParseError("chart text pairs must be sorted by x: '" + std::string(text) + "'");
    last = x;
    pairs.emplace_back(x, y);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return Chart::from_pairs(static_cast<std::size_t>(n), pairs);
}

}  // namespace chartlab
