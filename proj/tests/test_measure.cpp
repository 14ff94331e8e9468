#include "doctest.h"
#include "intricacy/measure.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "intricacy/rng.hpp"

using namespace intricacy;

namespace {

ShiftMeasure parry() {
  return ShiftMeasure::markov({2.0 / 3, 1.0 / 3}, {{0.5, 0.5}, {1.0, 0.0}});
}

CylinderCover overlap_cover() {
  CylinderCover c;
  c.name = "overlap";
  c.base = folner_window(1, 1);
  c.elements = {{0, 1}, {1, 2}};
  return c;
}

}  // namespace

TEST_CASE("measure validation") {
  ShiftSpace gm = golden_mean_shift();
  CHECK_NOTHROW(parry().validate(gm));
  CHECK_THROWS(ShiftMeasure::bernoulli({0.5, 0.6}).validate(full_shift(2)));
  // Bernoulli with mass on both symbols puts mass on the forbidden "11"
  CHECK_THROWS(ShiftMeasure::bernoulli({0.5, 0.5}).validate(gm));
  // pi P != pi
  CHECK_THROWS(ShiftMeasure::markov({0.5, 0.5}, {{0.5, 0.5}, {1.0, 0.0}}).validate(gm));
  CHECK_THROWS(ShiftMeasure::markov({2.0 / 3, 1.0 / 3}, {{0.5, 0.5}, {0.9, 0.1}}).validate(gm));
  CHECK_NOTHROW(
      ShiftMeasure::mixture({0.5, 0.5},
                            {ShiftMeasure::bernoulli({0.3, 0.7}), ShiftMeasure::bernoulli({0.8, 0.2})})
          .validate(full_shift(2)));
  CHECK_THROWS(ShiftMeasure::mixture({0.7, 0.7}, {parry(), parry()}).validate(gm));
}

TEST_CASE("markov marginals by hand") {
  ShiftSpace gm = golden_mean_shift();
  PatternDistribution d = marginal(gm, parry(), folner_window(2, 1));
  // words 00, 01, 10 in encoded order
  REQUIRE(d.support.size() == 3);
  CHECK(d.prob[0] == doctest::Approx(1.0 / 3).epsilon(1e-14));  // 2/3 * 1/2
  CHECK(d.prob[1] == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(d.prob[2] == doctest::Approx(1.0 / 3).epsilon(1e-14));  // 1/3 * 1
  // gapped window {0,2}: sum over the middle symbol
  PatternDistribution g = marginal(gm, parry(), make_window_1d({0, 2}));
  double p00 = 2.0 / 3 * (0.5 * 0.5 + 0.5 * 1.0);
  CHECK(g.prob[g.support.index_of(0)] == doctest::Approx(p00).epsilon(1e-14));
  double total = 0;
  for (double p : g.prob) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pattern_probability agrees with marginal") {
  ShiftSpace gm = golden_mean_shift();
  ShiftMeasure mix = ShiftMeasure::mixture({0.4, 0.6}, {parry(), parry()});
  for (auto& w : {folner_window(3, 1), make_window_1d({0, 2, 5})}) {
    PatternDistribution d = marginal(gm, mix, w);
    for (std::size_t i = 0; i < d.support.size(); ++i) {
      auto syms = decode_word(d.support.words[i], w.size(), 2);
      CHECK(pattern_probability(mix, w, syms) == doctest::Approx(d.prob[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("partition entropy of the symbol partition is the marginal entropy") {
  ShiftSpace gm = golden_mean_shift();
  CylinderCover sp = symbol_partition(gm);
  ShiftMeasure mu = parry();
  LatticeWindow f5 = folner_window(5, 1);
  for (std::uint64_t bits : {0ull, 1ull, 0b101ull, 0b1101ull, 0b11111ull}) {
    SubsetMask S{&f5, bits};
    double h = partition_entropy(gm, mu, sp, S);
    if (bits == 0) {
      CHECK(h == 0.0);
      continue;
    }
    PatternDistribution d = marginal(gm, mu, subset_points(S));
    CHECK(h == doctest::Approx(shannon_entropy(d.prob)).epsilon(1e-12));
  }
  // hand value: H(2/3, 1/3)
  SubsetMask one{&f5, 1};
  double h1 = -(2.0 / 3) * std::log(2.0 / 3) - (1.0 / 3) * std::log(1.0 / 3);
  CHECK(partition_entropy(gm, parry(), sp, one) == doctest::Approx(h1).epsilon(1e-14));
}

TEST_CASE("partition entropy on an enlarged base window") {
  // partition of full-2 patterns on {0,1}: parity cells {00,11} vs {01,10}
  ShiftSpace full2 = full_shift(2);
  CylinderCover par;
  par.base = folner_window(2, 1);
  par.elements = {{0, 3}, {1, 2}};
  par.is_partition = true;
  ShiftMeasure mu = ShiftMeasure::bernoulli({0.3, 0.7});
  LatticeWindow f4 = folner_window(4, 1);
  for (std::uint64_t bits : {1ull, 0b11ull, 0b101ull, 0b1111ull}) {
    SubsetMask S{&f4, bits};
    // oracle: accumulate cell masses over the combined-window marginal
    LatticeWindow spts = subset_points(S);
    LatticeWindow comb = minkowski_sum(spts, par.base);
    PatternDistribution d = marginal(full2, mu, comb);
    std::map<std::vector<int>, double> cells;
    for (std::size_t a = 0; a < d.support.size(); ++a) {
      auto syms = decode_word(d.support.words[a], comb.size(), 2);
      std::vector<int> label;
      for (Point g : spts.points) {
        int i0 = comb.index_of(g), i1 = comb.index_of(g + Point{1, 0});
        label.push_back(syms[i0] == syms[i1] ? 0 : 1);
      }
      cells[label] += d.prob[a];
    }
    std::vector<double> masses;
    for (auto& [k, v] : cells) masses.push_back(v);
    CHECK(partition_entropy(full2, mu, par, S) ==
          doctest::Approx(shannon_entropy(masses)).epsilon(1e-12));
  }
}

TEST_CASE("conditional partition entropy degeneracies") {
  ShiftSpace full2 = full_shift(2);
  CylinderCover sp = symbol_partition(full2);
  ShiftMeasure fair = ShiftMeasure::bernoulli({0.5, 0.5});
  for (int n = 1; n <= 5; ++n) {
    LatticeWindow fn = folner_window(n, 1);
    SubsetMask S{&fn, (1ull << n) - 1};
    CHECK(conditional_partition_entropy(full2, fair, sp, S, identity_code(2), fn) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(conditional_partition_entropy(full2, fair, sp, S, constant_code(2), fn) ==
          doctest::Approx(partition_entropy(full2, fair, sp, S)).epsilon(1e-12));
    // xor observation leaves exactly one free fair bit
    CHECK(conditional_partition_entropy(full2, fair, sp, S, xor_code(), fn) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("cover entropy matches brute force over assignments") {
  ShiftSpace full3 = full_shift(3);
  CylinderCover c = overlap_cover();
  ShiftMeasure mu = ShiftMeasure::bernoulli({1.0 / 3, 1.0 / 3, 1.0 / 3});
  LatticeWindow f3 = folner_window(3, 1);
  for (std::uint64_t bits = 1; bits < 8; ++bits) {
    SubsetMask S{&f3, bits};
    // oracle: enumerate every deterministic assignment (skip spaces too large
    // for both the exhaustive solver and this loop)
    AssignmentSpace as = assignment_space(full3, c, subset_points(S));
    if (as.log2_size > 16) continue;
    CoverEntropyResult r = cover_entropy(full3, mu, c, S);
    CHECK(r.certified);
    PatternDistribution d = marginal(full3, mu, as.atoms.window);
    std::size_t na = as.atoms.size();
    std::vector<std::size_t> pick(na, 0);
    double best = 1e300;
    while (true) {
      std::map<std::uint64_t, double> cells;
      for (std::size_t a = 0; a < na; ++a) cells[as.choices[a][pick[a]]] += d.prob[a];
      std::vector<double> masses;
      for (auto& [k, v] : cells) masses.push_back(v);
      best = std::min(best, shannon_entropy(masses));
      std::size_t a = 0;
      while (a < na && ++pick[a] == as.choices[a].size()) pick[a++] = 0;
      if (a == na) break;
    }
    CHECK(r.value == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("cover entropy of the single-symbol join") {
  // hand value: one coordinate of {[0] u [1], [1] u [2]} under Bernoulli(1/3);
  // optimum puts the flexible symbol with one element: H(2/3, 1/3)
  ShiftSpace full3 = full_shift(3);
  ShiftMeasure mu = ShiftMeasure::bernoulli({1.0 / 3, 1.0 / 3, 1.0 / 3});
  LatticeWindow f1 = folner_window(1, 1);
  SubsetMask S{&f1, 1};
  CoverEntropyResult r = cover_entropy(full3, mu, overlap_cover(), S);
  double expect = -(2.0 / 3) * std::log(2.0 / 3) - (1.0 / 3) * std::log(1.0 / 3);
  CHECK(r.value == doctest::Approx(expect).epsilon(1e-12));
  CHECK(r.certified);
}

TEST_CASE("fractional assignments never beat the exhaustive minimum") {
  ShiftSpace full3 = full_shift(3);
  CylinderCover c = overlap_cover();
  ShiftMeasure mu = ShiftMeasure::bernoulli({0.2, 0.5, 0.3});
  LatticeWindow f2 = folner_window(2, 1);
  SubsetMask S{&f2, 0b11};
  CoverEntropyResult r = cover_entropy(full3, mu, c, S);
  REQUIRE(r.certified);
  AssignmentSpace as = assignment_space(full3, c, subset_points(S));
  PatternDistribution d = marginal(full3, mu, as.atoms.window);
  Rng rng(99);
  for (int t = 0; t < 500; ++t) {
    std::map<std::uint64_t, double> cells;
    for (std::size_t a = 0; a < as.atoms.size(); ++a) {
      std::vector<double> w(as.choices[a].size());
      double tot = 0;
      for (double& x : w) tot += (x = -std::log(rng.uniform01()));
      for (std::size_t k = 0; k < w.size(); ++k)
        cells[as.choices[a][k]] += d.prob[a] * w[k] / tot;
    }
    std::vector<double> masses;
    for (auto& [k, v] : cells) masses.push_back(v);
    CHECK(shannon_entropy(masses) >= r.value - 1e-9);
  }
}

TEST_CASE("entropy helpers") {
  CHECK(entropy_term(0.0) == 0.0);
  CHECK(entropy_term(1.0) == doctest::Approx(0.0));
  CHECK(entropy_term(0.5) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  std::vector<double> half{0.5, 0.5};
  CHECK(shannon_entropy(half) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}
