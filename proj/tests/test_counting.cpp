#include "doctest.h"
#include "intricacy/counting.hpp"

#include <bit>
#include <cmath>
#include <vector>

using namespace intricacy;

namespace {

CylinderCover overlap_cover() {
  CylinderCover c;
  c.name = "overlap";
  c.base = folner_window(1, 1);
  c.elements = {{0, 1}, {1, 2}};
  return c;
}

// independent N(U_S): materialize the join, brute-force the minimum subcover
std::uint64_t oracle_n_join(const ShiftSpace& shift, const CylinderCover& cover,
                            const SubsetMask& S) {
  JoinUniverse ju = join_materialize(shift, cover, S);
  std::size_t k = ju.covered_sets.size(), u = ju.universe.size();
  std::vector<std::uint64_t> masks(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (auto a : ju.covered_sets[i]) masks[i] |= 1ull << a;
  std::uint64_t full = u == 64 ? ~0ull : (1ull << u) - 1, best = k;
  for (std::uint64_t pick = 1; pick < (1ull << k); ++pick) {
    if (std::uint64_t(std::popcount(pick)) >= best) continue;
    std::uint64_t covered = 0;
    for (std::size_t i = 0; i < k; ++i)
      if ((pick >> i) & 1) covered |= masks[i];
    if (covered == full) best = std::popcount(pick);
  }
  return best;
}

}  // namespace

TEST_CASE("is_symbol_partition") {
  ShiftSpace gm = golden_mean_shift();
  CHECK(is_symbol_partition(gm, symbol_partition(gm)));
  CHECK_FALSE(is_symbol_partition(full_shift(3), overlap_cover()));
}

TEST_CASE("n_join on partitions counts join cells") {
  ShiftSpace gm = golden_mean_shift();
  CylinderCover sp = symbol_partition(gm);
  LatticeWindow f5 = folner_window(5, 1);
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    SubsetMask S{&f5, bits};
    CountResult r = n_join(gm, sp, S);
    CHECK(r.certified);
    CHECK(BigInt(r.value) == count_words(gm, S));
  }
}

TEST_CASE("n_join on a genuine cover matches the brute-force oracle") {
  ShiftSpace full3 = full_shift(3);
  CylinderCover c = overlap_cover();
  LatticeWindow f4 = folner_window(4, 1);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    SubsetMask S{&f4, bits};
    CountResult r = n_join(full3, c, S);
    CHECK(r.certified);
    if (bits == 0)
      CHECK(r.value == 1);
    else
      CHECK(r.value == oracle_n_join(full3, c, S));
  }
  // one coordinate: {0,1} u {1,2} needs both elements
  SubsetMask one{&f4, 1};
  CHECK(n_join(full3, c, one).value == 2);
}

TEST_CASE("budget exhaustion yields an uncertified upper bound") {
  ShiftSpace full3 = full_shift(3);
  CylinderCover c = overlap_cover();
  LatticeWindow f4 = folner_window(4, 1);
  SubsetMask S{&f4, 0b1111};
  CountingOptions tight;
  tight.budget = 1;
  CountResult r = n_join(full3, c, S, tight);
  CHECK_FALSE(r.certified);
  CHECK(r.value >= n_join(full3, c, S).value);
}

TEST_CASE("conditional counts") {
  ShiftSpace full2 = full_shift(2);
  CylinderCover sp = symbol_partition(full2);
  LatticeWindow f3 = folner_window(3, 1);
  SubsetMask S{&f3, 0b111};
  // identity code pins the fiber: one set suffices
  CountResult id = n_conditional(full2, sp, S, identity_code(2), f3);
  CHECK(id.value == 1);
  CHECK(id.certified);
  // constant code reveals nothing: equals the unconditional count
  CountResult cc = n_conditional(full2, sp, S, constant_code(2), f3);
  CHECK(cc.value == n_join(full2, sp, S).value);
  // xor fibers on an interval have one free bit
  CountResult xc = n_conditional(full2, sp, S, xor_code(), f3);
  CHECK(xc.value == 2);
  // non-increasing as V grows
  std::uint64_t prev = cc.value;
  for (int v = 3; v <= 6; ++v) {
    CountResult r = n_conditional(full2, sp, S, xor_code(), folner_window(v, 1));
    CHECK(r.value <= prev);
    prev = r.value;
  }
  CHECK_THROWS(n_conditional(full2, sp, S, xor_code(), folner_window(2, 1)));  // V too small
}

TEST_CASE("h_cover_series approaches the golden-mean entropy") {
  ShiftSpace gm = golden_mean_shift();
  TruncationSeries s = h_cover_series(gm, symbol_partition(gm), 1, 12);
  REQUIRE(s.records.size() == 12);
  double perron = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    CHECK(s.records[i].n == int(i) + 1);
    CHECK(s.records[i].certified);
    // (1/n) ln F(n+2) decreases toward log of the golden ratio
    CHECK(s.records[i].value >= perron - 1e-12);
    if (i > 0) CHECK(s.records[i].value <= s.records[i - 1].value + 1e-12);
  }
  CHECK(s.final_value() == doctest::Approx(perron).epsilon(0.05));
}
