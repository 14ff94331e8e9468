#include "intricacy/lattice.hpp"

#include <algorithm>
#include <bit>

namespace intricacy {

int LatticeWindow::index_of(Point p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p) return -1;
  return static_cast<int>(it - points.begin());
}

LatticeWindow folner_window(int n, int d) {
  if (d != 1 && d != 2)
    throw std::invalid_argument("folner_window: dimension must be 1 or 2, got " +
                                std::to_string(d));
  if (n < 1) throw std::invalid_argument("folner_window: n must be >= 1");
  LatticeWindow w;
  w.dimension = d;
  if (d == 1) {
    for (int i = 0; i < n; ++i) w.points.push_back({i, 0});
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w.points.push_back({i, j});
  }
  return w;
}

LatticeWindow make_window(int d, std::vector<Point> pts) {
  if (d != 1 && d != 2) throw std::invalid_argument("make_window: dimension must be 1 or 2");
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw std::invalid_argument("make_window: duplicate points");
  if (d == 1)
    for (const Point& p : pts)
      if (p.y != 0) throw std::invalid_argument("make_window: d=1 point with nonzero y");
  LatticeWindow w;
  w.dimension = d;
  w.points = std::move(pts);
  return w;
}

LatticeWindow make_window_1d(std::vector<int> xs) {
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (int x : xs) pts.push_back({x, 0});
  return make_window(1, std::move(pts));
}

LatticeWindow minkowski_sum(const LatticeWindow& a, const LatticeWindow& b) {
  if (a.dimension != b.dimension)
    throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<Point> pts;
  pts.reserve(a.points.size() * b.points.size());
  for (Point p : a.points)
    for (Point q : b.points) pts.push_back(p + q);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  LatticeWindow w;
  w.dimension = a.dimension;
  w.points = std::move(pts);
  return w;
}

LatticeWindow window_union(const LatticeWindow& a, const LatticeWindow& b) {
  if (a.dimension != b.dimension)
    throw std::invalid_argument("window_union: dimension mismatch");
  std::vector<Point> pts = a.points;
  pts.insert(pts.end(), b.points.begin(), b.points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  LatticeWindow w;
  w.dimension = a.dimension;
  w.points = std::move(pts);
  return w;
}

bool window_subset(const LatticeWindow& inner, const LatticeWindow& outer) {
  return std::includes(outer.points.begin(), outer.points.end(), inner.points.begin(),
                       inner.points.end());
}

int SubsetMask::count() const { return std::popcount(bits); }

SubsetMask complement(const SubsetMask& m) {
  if (!m.window) throw std::invalid_argument("complement: mask has no window");
  std::size_t n = m.window->size();
  std::uint64_t full = (n >= 64) ? ~0ull : ((1ull << n) - 1ull);
  return {m.window, full & ~m.bits};
}

LatticeWindow subset_points(const SubsetMask& m) {
  if (!m.window) throw std::invalid_argument("subset_points: mask has no window");
  LatticeWindow w;
  w.dimension = m.window->dimension;
  for (std::size_t i = 0; i < m.window->size(); ++i)
    if (m.test(i)) w.points.push_back(m.window->points[i]);
  return w;
}

void enumerate_subsets(const LatticeWindow& window, std::size_t limit,
                       const std::function<void(const SubsetMask&)>& fn) {
  std::size_t n = window.size();
  if (n > limit)
    throw std::invalid_argument(
        "enumerate_subsets: window of size " + std::to_string(n) +
        " exceeds the exact-mode limit " + std::to_string(limit) +
        "; use Monte-Carlo subset sampling instead");
  if (n > 63) throw std::invalid_argument("enumerate_subsets: window too large for 64-bit masks");
  std::uint64_t total = 1ull << n;
  for (std::uint64_t b = 0; b < total; ++b) fn(SubsetMask{&window, b});
}

std::string translation_key(const LatticeWindow& pts) {
  std::string key;
  key.reserve(pts.points.size() * 8 + 1);
  if (pts.points.empty()) return key;
  Point base = pts.points.front();  // lexicographic minimum (sorted)
  for (Point p : pts.points) {
    Point q = p - base;
    key += std::to_string(q.x);
    key += ',';
    key += std::to_string(q.y);
    key += ';';
  }
  return key;
}

}  // namespace intricacy
