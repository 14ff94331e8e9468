#include "intricacy/shift.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace intricacy {

double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_big: nonpositive count");
  if (v <= BigInt(std::uint64_t(1) << 62))
    return std::log(static_cast<double>(v.convert_to<std::uint64_t>()));
  // mantissa/exponent split for counts beyond double range
  unsigned bits = boost::multiprecision::msb(v);
  unsigned shift = bits > 52 ? bits - 52 : 0;
  BigInt m = v >> shift;
  return std::log(m.convert_to<double>()) + shift * std::log(2.0);
}

bool ShiftSpace::is_full() const {
  auto all_ones = [](const std::vector<std::vector<int>>& m) {
    for (auto& row : m)
      for (int e : row)
        if (e != 1) return false;
    return true;
  };
  return all_ones(horizontal) && all_ones(vertical);
}

namespace {

void check_matrix(const std::vector<std::vector<int>>& m, int k, const char* name) {
  if (m.empty()) return;
  if (static_cast<int>(m.size()) != k)
    throw std::invalid_argument(std::string(name) + ": matrix must be k x k");
  for (auto& row : m) {
    if (static_cast<int>(row.size()) != k)
      throw std::invalid_argument(std::string(name) + ": matrix must be k x k");
    for (int e : row)
      if (e != 0 && e != 1)
        throw std::invalid_argument(std::string(name) + ": entries must be 0/1");
  }
  for (int i = 0; i < k; ++i) {
    bool succ = false, pred = false;
    for (int j = 0; j < k; ++j) {
      succ = succ || m[i][j] == 1;
      pred = pred || m[j][i] == 1;
    }
    if (!succ || !pred)
      throw std::invalid_argument(std::string(name) + ": stranded symbol " +
                                  std::to_string(i));
  }
}

using BoolMatrix = std::vector<std::vector<int>>;

BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  int k = static_cast<int>(a.size());
  BoolMatrix c(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l)
      if (a[i][l])
        for (int j = 0; j < k; ++j) c[i][j] = c[i][j] || b[l][j];
  return c;
}

// sign(A^g); cached per shift call site by the caller
BoolMatrix reachability(const BoolMatrix& a, int g, std::map<int, BoolMatrix>& cache) {
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;
  BoolMatrix r;
  if (g == 1) {
    r = a;
  } else {
    r = bool_multiply(reachability(a, g - 1, cache), a);
  }
  cache[g] = r;
  return r;
}

}  // namespace

void ShiftSpace::validate() const {
  if (alphabet < 1) throw std::invalid_argument("ShiftSpace: alphabet size must be >= 1");
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("ShiftSpace: dimension must be 1 or 2");
  check_matrix(horizontal, alphabet, "horizontal transitions");
  if (dimension == 1 && !vertical.empty())
    throw std::invalid_argument("ShiftSpace: vertical transitions only valid for d=2");
  check_matrix(vertical, alphabet, "vertical transitions");
}

ShiftSpace full_shift(int alphabet, int dimension) {
  ShiftSpace s;
  s.dimension = dimension;
  s.alphabet = alphabet;
  s.validate();
  return s;
}

ShiftSpace sft_1d(std::vector<std::vector<int>> transitions) {
  ShiftSpace s;
  s.dimension = 1;
  s.alphabet = static_cast<int>(transitions.size());
  s.horizontal = std::move(transitions);
  s.validate();
  return s;
}

ShiftSpace sft_2d(std::vector<std::vector<int>> horizontal,
                  std::vector<std::vector<int>> vertical) {
  ShiftSpace s;
  s.dimension = 2;
  s.alphabet = static_cast<int>(horizontal.size());
  s.horizontal = std::move(horizontal);
  s.vertical = std::move(vertical);
  s.validate();
  return s;
}

ShiftSpace golden_mean_shift() { return sft_1d({{1, 1}, {1, 0}}); }

Word encode_word(std::span<const int> symbols, int alphabet) {
  Word w = 0;
  for (int s : symbols) w = w * static_cast<Word>(alphabet) + static_cast<Word>(s);
  return w;
}

std::vector<int> decode_word(Word w, std::size_t length, int alphabet) {
  std::vector<int> out(length, 0);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<int>(w % alphabet);
    w /= alphabet;
  }
  return out;
}

std::size_t Language::index_of(Word w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) return npos;
  return static_cast<std::size_t>(it - words.begin());
}

namespace {

void check_word_capacity(int alphabet, std::size_t window_size) {
  double bits = window_size * std::log2(std::max(alphabet, 2));
  if (bits > 62.0)
    throw std::invalid_argument("window too large to encode patterns in 64 bits");
}

Language language_1d(const ShiftSpace& shift, const LatticeWindow& window,
                     const LanguageLimits& limits) {
  int k = shift.alphabet;
  Language lang;
  lang.window = window;
  lang.alphabet = k;
  std::size_t m = window.size();
  if (m == 0) {
    lang.words = {0};
    return lang;
  }
  check_word_capacity(k, m);

  bool full = shift.horizontal.empty() || shift.is_full();
  std::map<int, BoolMatrix> cache;
  std::vector<const BoolMatrix*> link(m, nullptr);  // link[j]: positions j-1 -> j
  if (!full) {
    for (std::size_t j = 1; j < m; ++j) {
      int gap = window.points[j].x - window.points[j - 1].x;
      reachability(shift.horizontal, gap, cache);
    }
    for (std::size_t j = 1; j < m; ++j) {
      int gap = window.points[j].x - window.points[j - 1].x;
      link[j] = &cache[gap];
    }
  }

  std::vector<int> syms(m, 0);
  std::vector<Word>& out = lang.words;
  // iterative DFS in symbol-ascending order; output is already sorted
  std::size_t depth = 0;
  syms[0] = -1;
  while (true) {
    ++syms[depth];
    if (syms[depth] >= k) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    if (depth > 0 && !full && !(*link[depth])[syms[depth - 1]][syms[depth]]) continue;
    if (depth + 1 == m) {
      out.push_back(encode_word(syms, k));
      if (out.size() > limits.max_patterns)
        throw std::runtime_error("language: pattern count exceeds limit");
    } else {
      ++depth;
      syms[depth] = -1;
    }
  }
  if (out.empty()) throw std::runtime_error("language: empty language (inconsistent transitions)");
  return lang;
}

Language language_2d_full(const ShiftSpace& shift, const LatticeWindow& window,
                          const LanguageLimits& limits) {
  int k = shift.alphabet;
  std::size_t m = window.size();
  check_word_capacity(k, m);
  double total = std::pow(static_cast<double>(k), static_cast<double>(m));
  if (total > static_cast<double>(limits.max_patterns))
    throw std::runtime_error("language: pattern count exceeds limit");
  Language lang;
  lang.window = window;
  lang.alphabet = k;
  Word n = 1;
  for (std::size_t i = 0; i < m; ++i) n *= static_cast<Word>(k);
  lang.words.resize(n);
  for (Word w = 0; w < n; ++w) lang.words[w] = w;
  return lang;
}

// Locally admissible fillings of the halo-inflated bounding box, projected
// to the window; an over-approximation of the true Z^2 language.
Language language_2d_sft(const ShiftSpace& shift, const LatticeWindow& window,
                         const LanguageLimits& limits) {
  int k = shift.alphabet;
  std::size_t m = window.size();
  check_word_capacity(k, m);
  int h = limits.halo;
  int x0 = window.points.front().x, x1 = x0, y0 = window.points.front().y, y1 = y0;
  for (Point p : window.points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  x0 -= h; x1 += h; y0 -= h; y1 += h;
  int height = y1 - y0 + 1;
  int width = x1 - x0 + 1;

  // admissible columns under the vertical constraint
  std::vector<std::vector<int>> columns;
  {
    std::vector<int> col(height, 0);
    int depth = 0;
    col[0] = -1;
    while (true) {
      ++col[depth];
      if (col[depth] >= k) {
        if (depth == 0) break;
        --depth;
        continue;
      }
      if (depth > 0 && !shift.vertical.empty() &&
          !shift.vertical[col[depth - 1]][col[depth]])
        continue;
      if (depth + 1 == height) {
        columns.push_back(col);
        if (columns.size() > limits.max_patterns)
          throw std::runtime_error("language: 2d column count exceeds limit");
      } else {
        ++depth;
        col[depth] = -1;
      }
    }
  }
  if (columns.empty())
    throw std::runtime_error("language: empty language (inconsistent vertical transitions)");

  // horizontal compatibility between whole columns
  auto compatible = [&](const std::vector<int>& a, const std::vector<int>& b) {
    if (shift.horizontal.empty()) return true;
    for (int y = 0; y < height; ++y)
      if (!shift.horizontal[a[y]][b[y]]) return false;
    return true;
  };

  std::set<Word> seen;
  std::vector<int> choice(width, -1);
  std::vector<int> syms(m, 0);
  std::size_t processed = 0;
  int depth = 0;
  while (true) {
    ++choice[depth];
    if (choice[depth] >= static_cast<int>(columns.size())) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    if (depth > 0 && !compatible(columns[choice[depth - 1]], columns[choice[depth]]))
      continue;
    if (depth + 1 == width) {
      for (std::size_t i = 0; i < m; ++i) {
        Point p = window.points[i];
        syms[i] = columns[choice[p.x - x0]][p.y - y0];
      }
      seen.insert(encode_word(syms, k));
      if (++processed > (std::size_t(1) << 26))
        throw std::runtime_error("language: 2d enumeration budget exceeded");
    } else {
      ++depth;
      choice[depth] = -1;
    }
  }
  if (seen.empty())
    throw std::runtime_error("language: empty language (inconsistent transitions)");
  Language lang;
  lang.window = window;
  lang.alphabet = k;
  lang.words.assign(seen.begin(), seen.end());
  lang.exact = false;
  return lang;
}

}  // namespace

Language language(const ShiftSpace& shift, const LatticeWindow& window,
                  const LanguageLimits& limits) {
  if (window.dimension != shift.dimension)
    throw std::invalid_argument("language: window/shift dimension mismatch");
  if (shift.dimension == 1) return language_1d(shift, window, limits);
  if (shift.is_full() || (shift.horizontal.empty() && shift.vertical.empty()))
    return language_2d_full(shift, window, limits);
  return language_2d_sft(shift, window, limits);
}

BigInt count_words(const ShiftSpace& shift, const LatticeWindow& positions) {
  if (shift.dimension != 1)
    throw std::invalid_argument("count_words: d=1 only; materialize the language for d=2");
  int k = shift.alphabet;
  std::size_t m = positions.size();
  if (m == 0) return 1;
  bool full = shift.horizontal.empty() || shift.is_full();
  if (full) {
    BigInt r = 1;
    for (std::size_t i = 0; i < m; ++i) r *= k;
    return r;
  }

  std::map<int, BoolMatrix> cache;
  // u64 fast path with overflow detection, escalating to arbitrary precision
  std::vector<std::uint64_t> u(k, 1), v(k);
  bool overflow = false;
  for (std::size_t j = 1; j < m && !overflow; ++j) {
    int gap = positions.points[j].x - positions.points[j - 1].x;
    const BoolMatrix& b = reachability(shift.horizontal, gap, cache);
    std::fill(v.begin(), v.end(), 0);
    for (int s = 0; s < k; ++s) {
      if (!u[s]) continue;
      for (int t = 0; t < k; ++t)
        if (b[s][t] && __builtin_add_overflow(v[t], u[s], &v[t])) overflow = true;
    }
    u.swap(v);
  }
  if (!overflow) {
    std::uint64_t total = 0;
    for (int s = 0; s < k; ++s)
      if (__builtin_add_overflow(total, u[s], &total)) overflow = true;
    if (!overflow) return BigInt(total);
  }

  std::vector<BigInt> bu(k, 1), bv(k);
  for (std::size_t j = 1; j < m; ++j) {
    int gap = positions.points[j].x - positions.points[j - 1].x;
    const BoolMatrix& b = reachability(shift.horizontal, gap, cache);
    for (int t = 0; t < k; ++t) bv[t] = 0;
    for (int s = 0; s < k; ++s)
      for (int t = 0; t < k; ++t)
        if (b[s][t]) bv[t] += bu[s];
    bu.swap(bv);
  }
  BigInt total = 0;
  for (int s = 0; s < k; ++s) total += bu[s];
  return total;
}

BigInt count_words(const ShiftSpace& shift, const SubsetMask& mask) {
  return count_words(shift, subset_points(mask));
}

}  // namespace intricacy
