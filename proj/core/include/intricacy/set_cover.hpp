// set_cover.hpp -- exact minimum set cover via branch and bound with a
// deterministic search order.

#pragma once

#include <cstdint>
#include <vector>

namespace intricacy {

struct SetCoverInstance {
  std::size_t universe = 0;
  std::vector<std::vector<std::uint32_t>> sets;  // index sets, sorted
  long budget = 1'000'000;                       // node limit
};

struct CountResult {
  std::uint64_t value = 0;
  bool certified = false;  // true: exact minimum; false: greedy-quality upper bound
  long nodes = 0;
};

// Branch and bound: greedy initial incumbent, branching on the lowest-index
// uncovered element, candidate sets in decreasing-size order (ties by set
// index). Exact when the search finishes within budget.
CountResult min_set_cover(const SetCoverInstance& instance);

}  // namespace intricacy
