#include "intricacy/set_cover.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace intricacy {

namespace {

using Blocks = std::vector<std::uint64_t>;

std::size_t block_count(std::size_t universe) { return (universe + 63) / 64; }

void set_bit(Blocks& b, std::uint32_t i) { b[i >> 6] |= (1ull << (i & 63)); }

std::size_t popcount(const Blocks& b) {
  std::size_t c = 0;
  for (std::uint64_t w : b) c += std::popcount(w);
  return c;
}

// lowest index not covered, or npos
std::size_t first_uncovered(const Blocks& covered, std::size_t universe) {
  for (std::size_t i = 0; i < covered.size(); ++i) {
    std::uint64_t inv = ~covered[i];
    if (i + 1 == covered.size()) {
      std::size_t rem = universe - i * 64;
      if (rem < 64) inv &= (1ull << rem) - 1ull;
    }
    if (inv) return i * 64 + std::countr_zero(inv);
  }
  return static_cast<std::size_t>(-1);
}

std::size_t uncovered_count(const Blocks& covered, std::size_t universe) {
  return universe - popcount(covered);
}

struct Search {
  std::size_t universe;
  std::vector<Blocks> set_bits;
  std::vector<std::size_t> set_size;
  // per element: containing sets sorted by (size desc, index asc)
  std::vector<std::vector<std::uint32_t>> containing;
  std::size_t max_set_size = 1;
  std::uint64_t best;
  long nodes = 0;
  long budget;
  bool exhausted = false;

  void dfs(Blocks& covered, std::uint64_t chosen) {
    if (exhausted) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    std::size_t e = first_uncovered(covered, universe);
    if (e == static_cast<std::size_t>(-1)) {
      best = std::min(best, chosen);
      return;
    }
    std::size_t remaining = uncovered_count(covered, universe);
    std::uint64_t bound = chosen + (remaining + max_set_size - 1) / max_set_size;
    if (bound >= best) return;
    for (std::uint32_t s : containing[e]) {
      Blocks next = covered;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] |= set_bits[s][i];
      dfs(next, chosen + 1);
      if (exhausted) return;
    }
  }
};

}  // namespace

CountResult min_set_cover(const SetCoverInstance& instance) {
  std::size_t m = instance.universe;
  if (m == 0) return {0, true, 0};
  Search s;
  s.universe = m;
  s.budget = instance.budget;
  std::size_t nb = block_count(m);
  s.set_bits.reserve(instance.sets.size());
  for (auto& set : instance.sets) {
    Blocks b(nb, 0);
    for (std::uint32_t e : set) {
      if (e >= m) throw std::invalid_argument("min_set_cover: element out of universe");
      set_bit(b, e);
    }
    s.set_bits.push_back(std::move(b));
    s.set_size.push_back(set.size());
    s.max_set_size = std::max(s.max_set_size, set.size());
  }
  s.containing.resize(m);
  for (std::uint32_t si = 0; si < instance.sets.size(); ++si)
    for (std::uint32_t e : instance.sets[si]) s.containing[e].push_back(si);
  for (auto& list : s.containing) {
    if (list.empty()) throw std::invalid_argument("min_set_cover: uncoverable universe element");
    std::stable_sort(list.begin(), list.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (s.set_size[a] != s.set_size[b]) return s.set_size[a] > s.set_size[b];
      return a < b;
    });
  }

  // greedy incumbent: repeatedly take the set covering the most uncovered
  Blocks covered(nb, 0);
  std::uint64_t greedy = 0;
  while (first_uncovered(covered, m) != static_cast<std::size_t>(-1)) {
    std::size_t best_gain = 0;
    std::size_t best_set = 0;
    for (std::size_t si = 0; si < s.set_bits.size(); ++si) {
      std::size_t gain = 0;
      for (std::size_t i = 0; i < nb; ++i)
        gain += std::popcount(s.set_bits[si][i] & ~covered[i]);
      if (gain > best_gain) {
        best_gain = gain;
        best_set = si;
      }
    }
    for (std::size_t i = 0; i < nb; ++i) covered[i] |= s.set_bits[best_set][i];
    ++greedy;
  }
  s.best = greedy;

  Blocks empty(nb, 0);
  s.dfs(empty, 0);
  return {s.best, !s.exhausted, s.nodes};
}

}  // namespace intricacy
