// lattice.hpp -- Folner windows in Z^d, subset masks and coefficient weights.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace intricacy {

struct Point {
  int x = 0;
  int y = 0;
  auto operator<=>(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }

// Finite subset of Z^d in canonical (lexicographic) order.
// index -> point is a bijection.
struct LatticeWindow {
  int dimension = 1;
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  // -1 if absent
  int index_of(Point p) const;
  bool contains(Point p) const { return index_of(p) >= 0; }
  bool operator==(const LatticeWindow&) const = default;
};

// Box {0,...,n-1}^d. Rejects d outside {1,2}.
LatticeWindow folner_window(int n, int d);

// Sorts, rejects duplicates.
LatticeWindow make_window(int d, std::vector<Point> pts);

// Convenience for d=1 windows given as coordinates.
LatticeWindow make_window_1d(std::vector<int> xs);

// {a + b : a in A, b in B}, deduplicated.
LatticeWindow minkowski_sum(const LatticeWindow& a, const LatticeWindow& b);

// Union of point sets.
LatticeWindow window_union(const LatticeWindow& a, const LatticeWindow& b);

bool window_subset(const LatticeWindow& inner, const LatticeWindow& outer);

// Subset S of a window, bit i <-> i-th canonical point.
struct SubsetMask {
  const LatticeWindow* window = nullptr;
  std::uint64_t bits = 0;

  int count() const;
  bool test(std::size_t i) const { return (bits >> i) & 1u; }
};

SubsetMask complement(const SubsetMask& m);

// Window consisting of the selected points of m, canonical order.
LatticeWindow subset_points(const SubsetMask& m);

// Calls fn for all 2^|window| masks in increasing bit-pattern order.
// Rejects |window| > limit with a diagnostic suggesting MC mode.
void enumerate_subsets(const LatticeWindow& window, std::size_t limit,
                       const std::function<void(const SubsetMask&)>& fn);

// Translation-normalized key for a subset (min point moved to the origin).
// Two subsets that are translates of each other share a key.
std::string translation_key(const LatticeWindow& pts);

}  // namespace intricacy
