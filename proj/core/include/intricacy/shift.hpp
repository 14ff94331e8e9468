// shift.hpp -- full shifts and nearest-neighbor SFTs over Z and Z^2,
// finite-window languages and transfer-matrix word counting.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <vector>

#include "intricacy/lattice.hpp"

namespace intricacy {

using BigInt = boost::multiprecision::cpp_int;

double log_big(const BigInt& v);

struct ShiftSpace {
  int dimension = 1;
  int alphabet = 2;
  // d=1: `horizontal` is the transition matrix (entry (i,j)=1 iff j may
  // follow i). d=2: horizontal and vertical constraints; both empty for
  // a full shift.
  std::vector<std::vector<int>> horizontal;
  std::vector<std::vector<int>> vertical;

  bool is_full() const;
  // no stranded symbols: every symbol has a successor and predecessor
  // in each constrained direction
  void validate() const;
};

ShiftSpace full_shift(int alphabet, int dimension = 1);
ShiftSpace sft_1d(std::vector<std::vector<int>> transitions);
ShiftSpace sft_2d(std::vector<std::vector<int>> horizontal,
                  std::vector<std::vector<int>> vertical);
// binary sequences without "11"
ShiftSpace golden_mean_shift();

struct Pattern {
  LatticeWindow window;
  std::vector<int> symbols;  // one per window point, canonical order
};

// Patterns on a fixed window, encoded base-alphabet in window order.
using Word = std::uint64_t;

Word encode_word(std::span<const int> symbols, int alphabet);
std::vector<int> decode_word(Word w, std::size_t length, int alphabet);

struct Language {
  LatticeWindow window;
  int alphabet = 2;
  std::vector<Word> words;  // sorted ascending
  // false when the list is the locally-admissible over-approximation
  // used for d=2 SFTs
  bool exact = true;

  std::size_t size() const { return words.size(); }
  // index in `words`, or npos
  std::size_t index_of(Word w) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct LanguageLimits {
  std::size_t max_patterns = std::size_t(1) << 24;
  int halo = 2;  // d=2 local-admissibility inflation
};

// d=1: exactly the globally admissible patterns on the window.
// d=2 full shift: all patterns (exact). d=2 SFT: patterns extendable to a
// locally admissible filling of the halo-inflated bounding box (exact=false).
Language language(const ShiftSpace& shift, const LatticeWindow& window,
                  const LanguageLimits& limits = {});

// |language(shift, S)| via products of 0/1 reachability matrices across the
// gaps of S; no pattern materialization. d=1 only.
BigInt count_words(const ShiftSpace& shift, const LatticeWindow& positions);
BigInt count_words(const ShiftSpace& shift, const SubsetMask& mask);

}  // namespace intricacy
