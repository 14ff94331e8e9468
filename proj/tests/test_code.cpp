#include "doctest.h"
#include "intricacy/code.hpp"

#include <set>
#include <vector>

using namespace intricacy;

TEST_CASE("code validation") {
  CHECK_NOTHROW(xor_code().validate());
  SlidingBlockCode bad = xor_code();
  bad.rule[0] = 5;  // out of target alphabet
  CHECK_THROWS(bad.validate());
  bad = xor_code();
  bad.rule.pop_back();
  CHECK_THROWS(bad.validate());
}

TEST_CASE("apply basics") {
  CHECK(identity_code(3).apply(std::vector<int>{2}) == 2);
  CHECK(constant_code(2, 1).apply(std::vector<int>{0}) == 1);
  CHECK(xor_code().apply(std::vector<int>{1, 1}) == 0);
  CHECK(xor_code().apply(std::vector<int>{0, 1}) == 1);
  CHECK(xor_code().code_window().size() == 2);
}

TEST_CASE("apply_code over a window") {
  Pattern src{folner_window(4, 1), {1, 0, 1, 1}};
  Pattern out = apply_code(xor_code(), src, folner_window(3, 1));
  CHECK(out.symbols == std::vector<int>{1, 1, 0});
  CHECK_THROWS(apply_code(xor_code(), src, folner_window(4, 1)));  // needs one more source cell
}

TEST_CASE("image language of the xor code is full") {
  Language img = image_language(xor_code(), full_shift(2), folner_window(4, 1));
  CHECK(img.size() == 16);
}

TEST_CASE("fiber language matches brute force") {
  ShiftSpace full2 = full_shift(2);
  SlidingBlockCode xc = xor_code();
  LatticeWindow srcw = folner_window(5, 1);
  LatticeWindow facw = folner_window(4, 1);
  for (Word yw : language(full2, facw).words) {
    Pattern y{facw, decode_word(yw, 4, 2)};
    Language fib = fiber_language(xc, full2, srcw, y);
    std::set<Word> brute;
    for (Word sw : language(full2, srcw).words) {
      Pattern s{srcw, decode_word(sw, 5, 2)};
      if (apply_code(xc, s, facw).symbols == y.symbols) brute.insert(sw);
    }
    CHECK(fib.words == std::vector<Word>(brute.begin(), brute.end()));
    CHECK(fib.size() == 2);  // xor fibers: one free bit
  }
}

TEST_CASE("identity code fibers are singletons") {
  ShiftSpace gm = golden_mean_shift();
  SlidingBlockCode id = identity_code(2);
  LatticeWindow w = folner_window(4, 1);
  for (Word yw : language(gm, w).words) {
    Pattern y{w, decode_word(yw, 4, 2)};
    CHECK(fiber_language(id, gm, w, y).size() == 1);
  }
}
