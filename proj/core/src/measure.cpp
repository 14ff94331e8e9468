#include "intricacy/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "intricacy/rng.hpp"
#include "intricacy/series.hpp"

namespace intricacy {

double entropy_term(double x) { return x > 1e-300 ? -x * std::log(x) : 0.0; }

double shannon_entropy(std::span<const double> masses) {
  std::vector<double> terms;
  terms.reserve(masses.size());
  for (double m : masses) terms.push_back(entropy_term(m));
  return pairwise_sum(terms);
}

ShiftMeasure ShiftMeasure::bernoulli(std::vector<double> p) {
  ShiftMeasure m;
  m.kind = Kind::Bernoulli;
  m.p = std::move(p);
  return m;
}

ShiftMeasure ShiftMeasure::markov(std::vector<double> pi, std::vector<std::vector<double>> P) {
  ShiftMeasure m;
  m.kind = Kind::Markov;
  m.stationary = std::move(pi);
  m.P = std::move(P);
  return m;
}

ShiftMeasure ShiftMeasure::mixture(std::vector<double> weights, std::vector<ShiftMeasure> parts) {
  ShiftMeasure m;
  m.kind = Kind::Mixture;
  m.weights = std::move(weights);
  m.components = std::move(parts);
  return m;
}

ShiftMeasure mixture_combine(std::vector<ShiftMeasure> measures, std::vector<double> weights) {
  if (measures.size() != weights.size())
    throw std::invalid_argument("mixture_combine: size mismatch");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mixture_combine: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixture_combine: weights must sum to 1");
  return ShiftMeasure::mixture(std::move(weights), std::move(measures));
}

void ShiftMeasure::validate(const ShiftSpace& shift) const {
  int k = shift.alphabet;
  switch (kind) {
    case Kind::Bernoulli: {
      if (static_cast<int>(p.size()) != k)
        throw std::invalid_argument("bernoulli: probability vector size mismatch");
      double s = 0.0;
      for (double x : p) {
        if (x < 0.0) throw std::invalid_argument("bernoulli: negative probability");
        s += x;
      }
      if (std::abs(s - 1.0) > 1e-12)
        throw std::invalid_argument("bernoulli: probabilities must sum to 1");
      if (shift.dimension == 1 && !shift.is_full()) {
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            if (p[i] > 0.0 && p[j] > 0.0 && shift.horizontal[i][j] == 0)
              throw std::invalid_argument("bernoulli: support charges a forbidden transition");
      }
      break;
    }
    case Kind::Markov: {
      if (shift.dimension != 1)
        throw std::invalid_argument("markov: d=1 only");
      if (static_cast<int>(stationary.size()) != k || static_cast<int>(P.size()) != k)
        throw std::invalid_argument("markov: dimension mismatch");
      for (int i = 0; i < k; ++i) {
        if (static_cast<int>(P[i].size()) != k)
          throw std::invalid_argument("markov: P must be k x k");
        double row = 0.0;
        for (int j = 0; j < k; ++j) {
          if (P[i][j] < 0.0) throw std::invalid_argument("markov: negative transition");
          if (P[i][j] > 0.0 && !shift.horizontal.empty() && !shift.is_full() &&
              shift.horizontal[i][j] == 0)
            throw std::invalid_argument("markov: P charges a forbidden transition");
          row += P[i][j];
        }
        if (std::abs(row - 1.0) > 1e-12)
          throw std::invalid_argument("markov: rows must sum to 1");
      }
      double psum = 0.0;
      for (double x : stationary) psum += x;
      if (std::abs(psum - 1.0) > 1e-12)
        throw std::invalid_argument("markov: pi must sum to 1");
      for (int j = 0; j < k; ++j) {
        double v = 0.0;
        for (int i = 0; i < k; ++i) v += stationary[i] * P[i][j];
        if (std::abs(v - stationary[j]) > 1e-12)
          throw std::invalid_argument("markov: pi is not stationary (pi P != pi)");
      }
      break;
    }
    case Kind::Mixture: {
      if (weights.size() != components.size())
        throw std::invalid_argument("mixture: size mismatch");
      double s = 0.0;
      for (double w : weights) s += w;
      if (std::abs(s - 1.0) > 1e-12)
        throw std::invalid_argument("mixture: weights must sum to 1");
      for (auto& c : components) c.validate(shift);
      break;
    }
  }
}

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix matrix_multiply(const Matrix& a, const Matrix& b) {
  std::size_t k = a.size();
  Matrix c(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0.0)
        for (std::size_t j = 0; j < k; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

const Matrix& power(const Matrix& P, int g, std::map<int, Matrix>& cache) {
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;
  Matrix r = (g == 1) ? P : matrix_multiply(power(P, g - 1, cache), P);
  return cache.emplace(g, std::move(r)).first->second;
}

double probability_impl(const ShiftMeasure& mu, const LatticeWindow& window,
                        std::span<const int> symbols, std::map<int, Matrix>& powers) {
  switch (mu.kind) {
    case ShiftMeasure::Kind::Bernoulli: {
      double pr = 1.0;
      for (int s : symbols) pr *= mu.p[s];
      return pr;
    }
    case ShiftMeasure::Kind::Markov: {
      if (symbols.empty()) return 1.0;
      double pr = mu.stationary[symbols[0]];
      for (std::size_t j = 1; j < symbols.size(); ++j) {
        int gap = window.points[j].x - window.points[j - 1].x;
        pr *= power(mu.P, gap, powers)[symbols[j - 1]][symbols[j]];
      }
      return pr;
    }
    case ShiftMeasure::Kind::Mixture: {
      double pr = 0.0;
      for (std::size_t i = 0; i < mu.components.size(); ++i) {
        std::map<int, Matrix> sub;  // per-component powers differ
        pr += mu.weights[i] * probability_impl(mu.components[i], window, symbols, sub);
      }
      return pr;
    }
  }
  return 0.0;
}

}  // namespace

double pattern_probability(const ShiftMeasure& mu, const LatticeWindow& window,
                           std::span<const int> symbols) {
  if (window.size() != symbols.size())
    throw std::invalid_argument("pattern_probability: window/symbol size mismatch");
  if (mu.kind == ShiftMeasure::Kind::Markov && window.dimension != 1)
    throw std::invalid_argument("pattern_probability: Markov requires d=1");
  std::map<int, Matrix> powers;
  return probability_impl(mu, window, symbols, powers);
}

PatternDistribution marginal(const ShiftSpace& shift, const ShiftMeasure& mu,
                             const LatticeWindow& window, const LanguageLimits& limits) {
  if (mu.kind == ShiftMeasure::Kind::Markov && shift.dimension != 1)
    throw std::invalid_argument("marginal: Markov requires d=1");
  PatternDistribution dist;
  dist.support = language(shift, window, limits);
  dist.prob.resize(dist.support.size());
  std::map<int, Matrix> powers;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    std::vector<int> syms = decode_word(dist.support.words[i], window.size(), shift.alphabet);
    dist.prob[i] = probability_impl(mu, window, syms, powers);
  }
  return dist;
}

namespace {

// group subset points into clusters whose translated base windows overlap;
// under a product measure on a full shift the join entropy adds over clusters
std::vector<std::vector<Point>> window_clusters(const std::vector<Point>& pts,
                                                const LatticeWindow& base) {
  std::vector<Point> diffs;
  for (Point a : base.points)
    for (Point b : base.points) diffs.push_back({a.x - b.x, a.y - b.y});
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
  auto overlap = [&](Point p, Point q) {
    return std::binary_search(diffs.begin(), diffs.end(), Point{p.x - q.x, p.y - q.y});
  };
  std::vector<int> label(pts.size(), -1);
  std::vector<std::vector<Point>> clusters;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = static_cast<int>(clusters.size());
    std::vector<std::size_t> queue{i};
    std::vector<Point> cluster;
    while (!queue.empty()) {
      std::size_t cur = queue.back();
      queue.pop_back();
      cluster.push_back(pts[cur]);
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (label[j] < 0 && overlap(pts[cur], pts[j])) {
          label[j] = label[i];
          queue.push_back(j);
        }
    }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

}  // namespace

double partition_entropy(const ShiftSpace& shift, const ShiftMeasure& mu,
                         const CylinderCover& partition, const SubsetMask& S,
                         const LanguageLimits& limits) {
  if (S.count() == 0) return 0.0;
  if (mu.kind == ShiftMeasure::Kind::Bernoulli && shift.is_full()) {
    std::vector<Point> pts = subset_points(S).points;
    std::vector<std::vector<Point>> clusters = window_clusters(pts, partition.base);
    if (clusters.size() > 1) {
      std::vector<double> parts;
      for (auto& cl : clusters) {
        LatticeWindow w = make_window(shift.dimension, cl);
        SubsetMask full{&w, (1ull << w.size()) - 1ull};
        parts.push_back(partition_entropy(shift, mu, partition, full, limits));
      }
      return pairwise_sum(parts);
    }
  }
  LatticeWindow spts = subset_points(S);
  LatticeWindow combined = minkowski_sum(spts, partition.base);
  int base = static_cast<int>(partition.elements.size());
  int k = shift.alphabet;
  std::size_t m = spts.size();
  std::size_t wsize = partition.base.size();
  if (m * std::log2(std::max(base, 2)) > 62.0)
    throw std::invalid_argument("partition_entropy: join tuple space too large to encode");

  std::unordered_map<Word, int> member;
  for (std::size_t e = 0; e < partition.elements.size(); ++e)
    for (Word w : partition.elements[e]) {
      if (!member.emplace(w, static_cast<int>(e)).second)
        throw std::invalid_argument("partition_entropy: cover is not a partition");
    }

  std::vector<std::vector<int>> at(m, std::vector<int>(wsize));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t j = 0; j < wsize; ++j)
      at[g][j] = combined.index_of(spts.points[g] + partition.base.points[j]);

  // stream patterns on the combined window into join cells
  std::map<std::uint64_t, double> cells;
  std::vector<int> sub(wsize), tuple(m);
  std::map<int, Matrix> powers;
  auto account = [&](std::span<const int> syms, double pr) {
    for (std::size_t g = 0; g < m; ++g) {
      for (std::size_t j = 0; j < wsize; ++j) sub[j] = syms[at[g][j]];
      auto it = member.find(encode_word(sub, k));
      if (it == member.end())
        throw std::invalid_argument("partition_entropy: pattern not covered");
      tuple[g] = it->second;
    }
    cells[encode_tuple(tuple, base)] += pr;
  };
  if (shift.is_full() && combined.size() * std::log2(k) <= 40.0) {
    // full shift: enumerate pattern codes directly, no language buffer
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < combined.size(); ++i) total *= k;
    std::vector<int> syms(combined.size());
    for (std::uint64_t w = 0; w < total; ++w) {
      std::uint64_t rest = w;
      for (std::size_t i = combined.size(); i-- > 0;) {
        syms[i] = static_cast<int>(rest % k);
        rest /= k;
      }
      account(syms, probability_impl(mu, combined, syms, powers));
    }
  } else {
    PatternDistribution marg = marginal(shift, mu, combined, limits);
    for (std::size_t i = 0; i < marg.support.size(); ++i) {
      std::vector<int> syms = decode_word(marg.support.words[i], combined.size(), k);
      account(syms, marg.prob[i]);
    }
  }
  std::vector<double> masses;
  masses.reserve(cells.size());
  for (auto& [c, q] : cells) masses.push_back(q);
  return shannon_entropy(masses);
}

double conditional_partition_entropy(const ShiftSpace& shift, const ShiftMeasure& mu,
                                     const CylinderCover& partition, const SubsetMask& S,
                                     const SlidingBlockCode& code, const LatticeWindow& V,
                                     const LanguageLimits& limits) {
  if (shift.dimension != 1)
    throw std::invalid_argument("conditional_partition_entropy: d=1 only");
  code.validate();
  JoinStructure js = join_structure(shift, partition, S, limits);
  LatticeWindow big = window_union(js.combined, minkowski_sum(V, code.code_window()));
  PatternDistribution marg = marginal(shift, mu, big, limits);
  int base = static_cast<int>(partition.elements.size());
  std::size_t m = js.subset_pts.size();
  if (m * std::log2(std::max(base, 2)) > 62.0)
    throw std::invalid_argument("conditional_partition_entropy: tuple space too large");

  std::vector<std::vector<int>> reads(V.size());
  for (std::size_t i = 0; i < V.size(); ++i)
    for (int j = 0; j < code.radius; ++j)
      reads[i].push_back(big.index_of({V.points[i].x + j, 0}));
  std::vector<int> proj(js.combined.size());
  for (std::size_t i = 0; i < js.combined.size(); ++i)
    proj[i] = big.index_of(js.combined.points[i]);

  std::map<std::pair<Word, std::uint64_t>, double> joint;
  std::map<Word, double> factor;
  std::vector<int> block(code.radius), ysyms(V.size()), sub(js.combined.size()), tuple(m);
  for (std::size_t wi = 0; wi < marg.support.size(); ++wi) {
    std::vector<int> syms = decode_word(marg.support.words[wi], big.size(), shift.alphabet);
    for (std::size_t i = 0; i < V.size(); ++i) {
      for (int j = 0; j < code.radius; ++j) block[j] = syms[reads[i][j]];
      ysyms[i] = code.apply(block);
    }
    for (std::size_t i = 0; i < js.combined.size(); ++i) sub[i] = syms[proj[i]];
    std::size_t a = js.universe.index_of(encode_word(sub, shift.alphabet));
    if (a == Language::npos)
      throw std::logic_error("conditional_partition_entropy: projection outside universe");
    for (std::size_t g = 0; g < m; ++g) tuple[g] = js.choices[a][g].front();
    Word y = encode_word(ysyms, code.target_alphabet);
    double pr = marg.prob[wi];
    joint[{y, encode_tuple(tuple, base)}] += pr;
    factor[y] += pr;
  }
  std::vector<double> jm, fm;
  for (auto& [k, q] : joint) jm.push_back(q);
  for (auto& [k, q] : factor) fm.push_back(q);
  double h = shannon_entropy(jm) - shannon_entropy(fm);
  return h < 0.0 && h > -1e-9 ? 0.0 : h;
}

// ---------------------------------------------------------------------------
// cover entropy: assignment-space minimization
// ---------------------------------------------------------------------------

namespace {

struct CellKey {
  std::uint64_t tuple;
  Word y;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    return mix_seed(k.tuple, k.y);
  }
};

// iterate the tuple codes available to one atom, lexicographic order
template <class F>
void for_each_tuple_code(const std::vector<std::vector<int>>& choices, int base, F&& f) {
  std::size_t m = choices.size();
  if (m == 0) {
    f(std::uint64_t{0});
    return;
  }
  std::vector<std::size_t> pos(m, 0);
  while (true) {
    std::uint64_t code = 0;
    for (std::size_t g = 0; g < m; ++g)
      code = code * static_cast<std::uint64_t>(base) +
             static_cast<std::uint64_t>(choices[g][pos[g]]);
    f(code);
    std::size_t g = m;
    while (g-- > 0) {
      if (++pos[g] < choices[g].size()) break;
      pos[g] = 0;
      if (g == 0) return;
    }
  }
}

std::uint64_t tuple_count(const std::vector<std::vector<int>>& choices) {
  std::uint64_t c = 1;
  for (auto& ch : choices) c *= ch.size();
  return c;
}

// j-th tuple code in lexicographic order (mixed radix, last position fastest)
std::uint64_t nth_tuple_code(const std::vector<std::vector<int>>& choices, int base,
                             std::uint64_t j) {
  std::size_t m = choices.size();
  std::vector<std::size_t> pos(m, 0);
  for (std::size_t g = m; g-- > 0;) {
    pos[g] = j % choices[g].size();
    j /= choices[g].size();
  }
  std::uint64_t code = 0;
  for (std::size_t g = 0; g < m; ++g)
    code = code * static_cast<std::uint64_t>(base) +
           static_cast<std::uint64_t>(choices[g][pos[g]]);
  return code;
}

class Minimizer {
 public:
  Minimizer(const JoinStructure& js, int base,
            std::vector<std::vector<std::pair<Word, double>>> atom_mass)
      : js_(js), base_(base), atom_mass_(std::move(atom_mass)) {
    assignment_.assign(js_.universe.size(), 0);
    for (std::size_t a = 0; a < js_.universe.size(); ++a) {
      if (tuple_count(js_.choices[a]) > 1)
        flexible_.push_back(a);
      else
        for_each_tuple_code(js_.choices[a], base_, [&](std::uint64_t c) { assignment_[a] = c; });
    }
  }

  const std::vector<std::size_t>& flexible() const { return flexible_; }

  double log2_assignments() const {
    double l = 0.0;
    for (std::size_t a : flexible_)
      l += std::log2(static_cast<double>(tuple_count(js_.choices[a])));
    return l;
  }

  void reset_fixed() {
    masses_.clear();
    h_ = 0.0;
    for (std::size_t a = 0; a < js_.universe.size(); ++a) {
      if (tuple_count(js_.choices[a]) == 1) add(a, assignment_[a]);
    }
  }

  void add(std::size_t a, std::uint64_t code) {
    for (auto& [y, q] : atom_mass_[a]) {
      double& mref = masses_[CellKey{code, y}];
      h_ -= entropy_term(mref);
      mref += q;
      h_ += entropy_term(mref);
    }
    assignment_[a] = code;
  }

  void remove(std::size_t a, std::uint64_t code) {
    for (auto& [y, q] : atom_mass_[a]) {
      double& mref = masses_[CellKey{code, y}];
      h_ -= entropy_term(mref);
      mref -= q;
      if (mref < 1e-15) mref = 0.0;
      h_ += entropy_term(mref);
    }
  }

  double move_delta(std::size_t a, std::uint64_t from, std::uint64_t to) const {
    double delta = 0.0;
    for (auto& [y, q] : atom_mass_[a]) {
      double m1 = mass(CellKey{from, y});
      double m2 = mass(CellKey{to, y});
      delta += entropy_term(m1 - q < 0.0 ? 0.0 : m1 - q) - entropy_term(m1) +
               entropy_term(m2 + q) - entropy_term(m2);
    }
    return delta;
  }

  double cell_mass_for(std::size_t a, std::uint64_t code) const {
    double s = 0.0;
    for (auto& [y, q] : atom_mass_[a]) s += mass(CellKey{code, y});
    return s;
  }

  double current_entropy() const { return h_; }

  // deterministic recomputation from an explicit assignment
  double exact_entropy(const std::vector<std::uint64_t>& assignment) const {
    std::map<std::pair<std::uint64_t, Word>, double> cells;
    for (std::size_t a = 0; a < js_.universe.size(); ++a)
      for (auto& [y, q] : atom_mass_[a]) cells[{assignment[a], y}] += q;
    std::vector<double> m;
    m.reserve(cells.size());
    for (auto& [k, q] : cells) m.push_back(q);
    return shannon_entropy(m);
  }

  std::vector<std::uint64_t>& assignment() { return assignment_; }

  const JoinStructure& js() const { return js_; }
  int base() const { return base_; }

 private:
  double mass(const CellKey& k) const {
    auto it = masses_.find(k);
    return it == masses_.end() ? 0.0 : it->second;
  }

  const JoinStructure& js_;
  int base_;
  std::vector<std::vector<std::pair<Word, double>>> atom_mass_;
  std::vector<std::size_t> flexible_;
  std::vector<std::uint64_t> assignment_;
  std::unordered_map<CellKey, double, CellKeyHash> masses_;
  double h_ = 0.0;
};

// exhaustive DFS over flexible atoms
void exhaustive_min(Minimizer& mz, double& best, std::vector<std::uint64_t>& best_assign) {
  const auto& flex = mz.flexible();
  std::vector<std::size_t> depth_pos;
  struct Frame {
    std::vector<std::uint64_t> codes;
    std::size_t next = 0;
  };
  std::vector<Frame> stack(flex.size());
  for (std::size_t d = 0; d < flex.size(); ++d)
    for_each_tuple_code(mz.js().choices[flex[d]], mz.base(),
                        [&](std::uint64_t c) { stack[d].codes.push_back(c); });
  std::size_t d = 0;
  if (flex.empty()) {
    double h = mz.current_entropy();
    if (h < best) {
      best = h;
      best_assign = mz.assignment();
    }
    return;
  }
  while (true) {
    Frame& f = stack[d];
    if (f.next > 0) mz.remove(flex[d], f.codes[f.next - 1]);
    if (f.next == f.codes.size()) {
      f.next = 0;
      if (d == 0) break;
      --d;
      continue;
    }
    mz.add(flex[d], f.codes[f.next]);
    ++f.next;
    if (d + 1 == flex.size()) {
      double h = mz.current_entropy();
      if (h < best - 1e-15) {
        best = h;
        best_assign = mz.assignment();
      }
    } else {
      ++d;
    }
  }
}

void local_search(Minimizer& mz, int pass_cap) {
  const auto& flex = mz.flexible();
  for (int pass = 0; pass < pass_cap; ++pass) {
    bool improved = false;
    for (std::size_t a : flex) {
      std::uint64_t cur = mz.assignment()[a];
      std::uint64_t target = cur;
      for_each_tuple_code(mz.js().choices[a], mz.base(), [&](std::uint64_t c) {
        if (target != cur) return;  // first improvement
        if (c == cur) return;
        if (mz.move_delta(a, cur, c) < -1e-12) target = c;
      });
      if (target != cur) {
        mz.remove(a, cur);
        mz.add(a, target);
        improved = true;
      }
    }
    if (!improved) break;
  }
}

}  // namespace

CoverEntropyResult cover_entropy(const ShiftSpace& shift, const ShiftMeasure& mu,
                                 const CylinderCover& cover, const SubsetMask& S,
                                 const EntropyOptions& opts, const SlidingBlockCode* code,
                                 const LatticeWindow* V) {
  if ((code == nullptr) != (V == nullptr))
    throw std::invalid_argument("cover_entropy: code and V must be given together");
  JoinStructure js = join_structure(shift, cover, S, opts.lang);
  int base = static_cast<int>(cover.elements.size());
  std::size_t m = js.subset_pts.size();
  if (m * std::log2(std::max(base, 2)) > 62.0)
    throw std::invalid_argument("cover_entropy: join tuple space too large to encode");

  // per-atom conditioned masses: list of (factor word, probability)
  std::vector<std::vector<std::pair<Word, double>>> atom_mass(js.universe.size());
  double h_factor = 0.0;
  if (!code) {
    PatternDistribution marg = marginal(shift, mu, js.combined, opts.lang);
    for (std::size_t a = 0; a < js.universe.size(); ++a)
      atom_mass[a] = {{Word{0}, marg.prob[a]}};
  } else {
    code->validate();
    LatticeWindow big = window_union(js.combined, minkowski_sum(*V, code->code_window()));
    PatternDistribution marg = marginal(shift, mu, big, opts.lang);
    std::vector<std::vector<int>> reads(V->size());
    for (std::size_t i = 0; i < V->size(); ++i)
      for (int j = 0; j < code->radius; ++j)
        reads[i].push_back(big.index_of({V->points[i].x + j, 0}));
    std::vector<int> proj(js.combined.size());
    for (std::size_t i = 0; i < js.combined.size(); ++i)
      proj[i] = big.index_of(js.combined.points[i]);
    std::vector<std::map<Word, double>> acc(js.universe.size());
    std::map<Word, double> factor;
    std::vector<int> block(code->radius), ysyms(V->size()), sub(js.combined.size());
    for (std::size_t wi = 0; wi < marg.support.size(); ++wi) {
      std::vector<int> syms = decode_word(marg.support.words[wi], big.size(), shift.alphabet);
      for (std::size_t i = 0; i < V->size(); ++i) {
        for (int j = 0; j < code->radius; ++j) block[j] = syms[reads[i][j]];
        ysyms[i] = code->apply(block);
      }
      for (std::size_t i = 0; i < js.combined.size(); ++i) sub[i] = syms[proj[i]];
      std::size_t a = js.universe.index_of(encode_word(sub, shift.alphabet));
      if (a == Language::npos)
        throw std::logic_error("cover_entropy: projection outside universe");
      Word y = encode_word(ysyms, code->target_alphabet);
      acc[a][y] += marg.prob[wi];
      factor[y] += marg.prob[wi];
    }
    for (std::size_t a = 0; a < js.universe.size(); ++a)
      atom_mass[a].assign(acc[a].begin(), acc[a].end());
    std::vector<double> fm;
    for (auto& [y, q] : factor) fm.push_back(q);
    h_factor = shannon_entropy(fm);
  }

  Minimizer mz(js, base, std::move(atom_mass));
  CoverEntropyResult result;

  if (mz.flexible().empty()) {
    // partition (or effectively forced) input
    result.assignment = mz.assignment();
    double h = mz.exact_entropy(result.assignment) - h_factor;
    result.value = h < 0.0 && h > -1e-9 ? 0.0 : h;
    result.certified = true;
    return result;
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> best_assign;

  if (mz.log2_assignments() <= std::log2(opts.exhaustive_limit)) {
    mz.reset_fixed();
    exhaustive_min(mz, best, best_assign);
    result.certified = true;
  } else {
    result.certified = false;
    auto consider = [&]() {
      local_search(mz, opts.pass_cap);
      double h = mz.exact_entropy(mz.assignment());
      if (h < best) {
        best = h;
        best_assign = mz.assignment();
      }
    };

    // greedy start: largest current cell mass, ties to lowest tuple code
    mz.reset_fixed();
    for (std::size_t a : mz.flexible()) {
      std::uint64_t pick = 0;
      double pick_mass = -1.0;
      bool first = true;
      for_each_tuple_code(js.choices[a], base, [&](std::uint64_t c) {
        double cm = mz.cell_mass_for(a, c);
        if (first || cm > pick_mass + 1e-15) {
          pick = c;
          pick_mass = cm;
          first = false;
        }
      });
      mz.add(a, pick);
    }
    consider();

    // starts induced by deterministic base-window assignments; these bound
    // the value by H_mu(alpha_S) for every cylinder partition alpha >= U
    {
      std::vector<std::vector<int>> base_choices(js.base_universe.size());
      for (int e = 0; e < base; ++e)
        for (Word w : cover.elements[e]) {
          std::size_t i = js.base_universe.index_of(w);
          if (i != Language::npos) base_choices[i].push_back(e);
        }
      double log2_base_space = 0.0;
      for (auto& ch : base_choices) log2_base_space += std::log2((double)std::max<std::size_t>(ch.size(), 1));
      if (log2_base_space <= 6.0) {  // at most 64 base assignments
        std::vector<std::size_t> pos(base_choices.size(), 0);
        while (true) {
          mz.reset_fixed();
          for (std::size_t a : mz.flexible()) {
            std::uint64_t codev = 0;
            for (std::size_t g = 0; g < m; ++g) {
              int ri = js.restriction[a][g];
              if (ri < 0) throw std::logic_error("cover_entropy: restriction outside base language");
              codev = codev * static_cast<std::uint64_t>(base) +
                      static_cast<std::uint64_t>(base_choices[ri][pos[ri]]);
            }
            mz.add(a, codev);
          }
          consider();
          std::size_t i = 0;
          while (i < pos.size() && ++pos[i] == base_choices[i].size()) pos[i++] = 0;
          if (i == pos.size()) break;
        }
      }
    }

    // seeded random restarts; pointless churn on very large instances, where
    // the greedy and product starts already sit near the basin
    int restarts = mz.flexible().size() > 10000 ? 0 : opts.restarts;
    for (int r = 0; r < restarts; ++r) {
      Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(r)));
      mz.reset_fixed();
      for (std::size_t a : mz.flexible()) {
        std::uint64_t count = tuple_count(js.choices[a]);
        mz.add(a, nth_tuple_code(js.choices[a], base, rng.below(count)));
      }
      consider();
    }
  }

  result.assignment = std::move(best_assign);
  double h = mz.exact_entropy(result.assignment) - h_factor;
  result.value = h < 0.0 && h > -1e-9 ? 0.0 : h;
  return result;
}

}  // namespace intricacy
