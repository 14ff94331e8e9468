#include "intricacy/code.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace intricacy {

void SlidingBlockCode::validate() const {
  if (source_alphabet < 1 || target_alphabet < 1)
    throw std::invalid_argument("SlidingBlockCode: alphabet sizes must be >= 1");
  if (radius < 1) throw std::invalid_argument("SlidingBlockCode: radius must be >= 1");
  std::size_t expected = 1;
  for (int i = 0; i < radius; ++i) expected *= static_cast<std::size_t>(source_alphabet);
  if (rule.size() != expected)
    throw std::invalid_argument("SlidingBlockCode: rule table must have k^radius entries");
  for (int v : rule)
    if (v < 0 || v >= target_alphabet)
      throw std::invalid_argument("SlidingBlockCode: rule value out of range");
}

int SlidingBlockCode::apply(std::span<const int> source_symbols) const {
  std::size_t idx = 0;
  for (int s : source_symbols) idx = idx * source_alphabet + static_cast<std::size_t>(s);
  return rule[idx];
}

LatticeWindow SlidingBlockCode::code_window() const { return folner_window(radius, 1); }

SlidingBlockCode identity_code(int alphabet) {
  SlidingBlockCode c;
  c.source_alphabet = c.target_alphabet = alphabet;
  c.radius = 1;
  c.rule.resize(alphabet);
  for (int s = 0; s < alphabet; ++s) c.rule[s] = s;
  c.validate();
  return c;
}

SlidingBlockCode constant_code(int alphabet, int value) {
  SlidingBlockCode c;
  c.source_alphabet = c.target_alphabet = alphabet;
  c.radius = 1;
  c.rule.assign(alphabet, value);
  c.validate();
  return c;
}

SlidingBlockCode xor_code() {
  SlidingBlockCode c;
  c.source_alphabet = c.target_alphabet = 2;
  c.radius = 2;
  c.rule = {0, 1, 1, 0};
  c.validate();
  return c;
}

Pattern apply_code(const SlidingBlockCode& code, const Pattern& source,
                   const LatticeWindow& out_window) {
  if (source.window.dimension != 1 || out_window.dimension != 1)
    throw std::invalid_argument("apply_code: sliding block codes are d=1 only");
  Pattern out;
  out.window = out_window;
  out.symbols.reserve(out_window.size());
  std::vector<int> block(code.radius);
  for (Point p : out_window.points) {
    for (int j = 0; j < code.radius; ++j) {
      int idx = source.window.index_of({p.x + j, 0});
      if (idx < 0)
        throw std::invalid_argument("apply_code: source window does not cover output + code window");
      block[j] = source.symbols[idx];
    }
    out.symbols.push_back(code.apply(block));
  }
  return out;
}

namespace {

// images of all source words on src_window restricted to out_window
std::vector<Word> image_words(const SlidingBlockCode& code, const Language& src,
                              const LatticeWindow& out_window) {
  std::vector<Word> out;
  out.reserve(src.size());
  std::vector<int> block(code.radius);
  // per output point, the source indices it reads
  std::vector<std::vector<int>> reads(out_window.size());
  for (std::size_t i = 0; i < out_window.size(); ++i) {
    for (int j = 0; j < code.radius; ++j) {
      int idx = src.window.index_of({out_window.points[i].x + j, 0});
      if (idx < 0)
        throw std::invalid_argument("image: source window does not determine the factor window");
      reads[i].push_back(idx);
    }
  }
  std::vector<int> ysyms(out_window.size());
  for (Word w : src.words) {
    std::vector<int> syms = decode_word(w, src.window.size(), src.alphabet);
    for (std::size_t i = 0; i < out_window.size(); ++i) {
      for (int j = 0; j < code.radius; ++j) block[j] = syms[reads[i][j]];
      ysyms[i] = code.apply(block);
    }
    out.push_back(encode_word(ysyms, code.target_alphabet));
  }
  return out;
}

}  // namespace

Language image_language(const SlidingBlockCode& code, const ShiftSpace& shift,
                        const LatticeWindow& window, const LanguageLimits& limits) {
  if (shift.dimension != 1)
    throw std::invalid_argument("image_language: d=1 only");
  code.validate();
  if (shift.alphabet != code.source_alphabet)
    throw std::invalid_argument("image_language: alphabet mismatch");
  LatticeWindow src_window = minkowski_sum(window, code.code_window());
  Language src = language(shift, src_window, limits);
  std::vector<Word> imgs = image_words(code, src, window);
  std::sort(imgs.begin(), imgs.end());
  imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
  Language lang;
  lang.window = window;
  lang.alphabet = code.target_alphabet;
  lang.words = std::move(imgs);
  lang.exact = src.exact;
  return lang;
}

Language fiber_language(const SlidingBlockCode& code, const ShiftSpace& shift,
                        const LatticeWindow& source_window, const Pattern& y,
                        const LanguageLimits& limits) {
  if (shift.dimension != 1)
    throw std::invalid_argument("fiber_language: d=1 only");
  code.validate();
  LatticeWindow big = minkowski_sum(source_window, code.code_window());
  Language src = language(shift, big, limits);
  Word target = encode_word(y.symbols, code.target_alphabet);
  std::vector<Word> imgs = image_words(code, src, y.window);

  // project matching source patterns down to source_window
  std::vector<int> proj(source_window.size());
  for (std::size_t i = 0; i < source_window.size(); ++i) {
    int idx = big.index_of(source_window.points[i]);
    proj[i] = idx;
  }
  std::set<Word> kept;
  std::vector<int> syms, sub(source_window.size());
  for (std::size_t wi = 0; wi < src.size(); ++wi) {
    if (imgs[wi] != target) continue;
    syms = decode_word(src.words[wi], big.size(), src.alphabet);
    for (std::size_t i = 0; i < source_window.size(); ++i) sub[i] = syms[proj[i]];
    kept.insert(encode_word(sub, src.alphabet));
  }
  Language lang;
  lang.window = source_window;
  lang.alphabet = src.alphabet;
  lang.words.assign(kept.begin(), kept.end());
  lang.exact = src.exact;
  return lang;  // empty when y is not in the image language
}

}  // namespace intricacy
