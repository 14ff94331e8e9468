// code.hpp -- sliding block codes (d=1 factor maps) and their image and
// fiber languages.

#pragma once

#include <span>
#include <vector>

#include "intricacy/shift.hpp"

namespace intricacy {

// One-sided code window {0,...,radius-1}: output at p reads source symbols
// at p,...,p+radius-1.
struct SlidingBlockCode {
  int source_alphabet = 2;
  int target_alphabet = 2;
  int radius = 1;
  // k^radius entries, lexicographic source-pattern order
  std::vector<int> rule;

  void validate() const;
  int apply(std::span<const int> source_symbols) const;
  LatticeWindow code_window() const;  // {0,...,radius-1}
};

SlidingBlockCode identity_code(int alphabet);
SlidingBlockCode constant_code(int alphabet, int value = 0);
// binary radius-2 rule (a,b) -> a xor b
SlidingBlockCode xor_code();

// Output pattern on `out_window`; source must contain out_window + code window.
Pattern apply_code(const SlidingBlockCode& code, const Pattern& source,
                   const LatticeWindow& out_window);

// { apply_code(code, p, window) : p in language(shift, window + code window) },
// deduplicated.
Language image_language(const SlidingBlockCode& code, const ShiftSpace& shift,
                        const LatticeWindow& window, const LanguageLimits& limits = {});

// Source patterns on `source_window` compatible with factor pattern `y` on
// `factor_window`; requires factor_window + code window inside
// source_window + code window.
Language fiber_language(const SlidingBlockCode& code, const ShiftSpace& shift,
                        const LatticeWindow& source_window, const Pattern& y,
                        const LanguageLimits& limits = {});

}  // namespace intricacy
