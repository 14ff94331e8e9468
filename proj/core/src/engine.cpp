#include "intricacy/engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "intricacy/rng.hpp"

namespace intricacy {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct SubsetValue {
  double value = 0.0;
  bool certified = true;
};

// f(S) with translation-normalized caching; full-shift/iid instances with a
// one-point base window depend only on |S| and get the stronger cache
class CachedEval {
 public:
  enum class Mode { None, Translation, BySize };

  CachedEval(Mode mode, std::function<SubsetValue(const SubsetMask&)> raw)
      : mode_(mode), raw_(std::move(raw)) {}

  SubsetValue operator()(const SubsetMask& S) {
    switch (mode_) {
      case Mode::None:
        return raw_(S);
      case Mode::BySize: {
        int c = S.count();
        auto it = size_cache_.find(c);
        if (it != size_cache_.end()) return it->second;
        SubsetValue v = raw_(S);
        size_cache_.emplace(c, v);
        return v;
      }
      case Mode::Translation: {
        std::string key = translation_key(subset_points(S));
        auto it = key_cache_.find(key);
        if (it != key_cache_.end()) return it->second;
        SubsetValue v = raw_(S);
        key_cache_.emplace(std::move(key), v);
        return v;
      }
    }
    return raw_(S);
  }

 private:
  Mode mode_;
  std::function<SubsetValue(const SubsetMask&)> raw_;
  std::unordered_map<int, SubsetValue> size_cache_;
  std::unordered_map<std::string, SubsetValue> key_cache_;
};

bool all_bernoulli(const ShiftMeasure& mu) {
  if (mu.kind == ShiftMeasure::Kind::Bernoulli) return true;
  if (mu.kind == ShiftMeasure::Kind::Mixture)
    return std::all_of(mu.components.begin(), mu.components.end(),
                       [](const ShiftMeasure& c) { return all_bernoulli(c); });
  return false;
}

CachedEval::Mode cache_mode(const ShiftSpace& shift, const CylinderCover& cover,
                            const ShiftMeasure* mu, bool conditional) {
  if (conditional) return CachedEval::Mode::None;  // fixed V breaks covariance
  bool exchangeable = shift.is_full() && cover.base.size() == 1 &&
                      (mu == nullptr || all_bernoulli(*mu));
  if (exchangeable) return CachedEval::Mode::BySize;
  return CachedEval::Mode::Translation;
}

struct PerN {
  double value = 0.0;
  double stderr_value = 0.0;
  bool certified = true;
};

// sum over all subsets of c_S * g(S), normalized by |F_n|
PerN exact_average(const LatticeWindow& fn, const CoefficientSystem& coeffs,
                   std::size_t limit, int jobs,
                   const std::function<SubsetValue(const SubsetMask&, CachedEval&)>& term,
                   const std::function<CachedEval()>& make_eval) {
  std::size_t a = fn.size();
  if (a > limit)
    throw std::runtime_error("exact mode: window of size " + std::to_string(a) +
                             " exceeds the exact subset limit " + std::to_string(limit));
  std::uint64_t total = 1ull << a;
  std::vector<double> terms(total);
  bool certified = true;
  int aa = static_cast<int>(a);

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, bool& cert_out) {
    CachedEval eval = make_eval();
    bool cert = true;
    for (std::uint64_t b = lo; b < hi; ++b) {
      SubsetMask S{&fn, b};
      SubsetValue v = term(S, eval);
      cert = cert && v.certified;
      terms[b] = coefficient(coeffs, aa, S.count()) * v.value;
    }
    cert_out = cert;
  };

  if (jobs <= 1 || total < 1024) {
    run_range(0, total, certified);
  } else {
    int workers = std::min<std::uint64_t>(jobs, 64);
    std::vector<std::thread> threads;
    std::vector<char> certs(workers, 1);
    std::uint64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(total, lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back([&, lo, hi, w] {
        bool c = true;
        run_range(lo, hi, c);
        certs[w] = c ? 1 : 0;
      });
    }
    for (auto& t : threads) t.join();
    for (char c : certs) certified = certified && c;
  }

  PerN out;
  out.value = pairwise_sum(terms) / static_cast<double>(fn.size());
  out.certified = certified;
  return out;
}

// Monte-Carlo subset average of g(S), normalized by |F_n|
PerN mc_average(const LatticeWindow& fn, const CoefficientSystem& coeffs, int samples,
                std::uint64_t task_seed,
                const std::function<SubsetValue(const SubsetMask&, CachedEval&)>& term,
                const std::function<CachedEval()>& make_eval) {
  SubsetSampler sampler(coeffs, fn, task_seed);
  CachedEval eval = make_eval();
  double mean = 0.0, m2 = 0.0;
  bool certified = true;
  for (int i = 0; i < samples; ++i) {
    SubsetMask S = sampler.next();
    SubsetValue v = term(S, eval);
    certified = certified && v.certified;
    double delta = v.value - mean;
    mean += delta / (i + 1);
    m2 += delta * (v.value - mean);
  }
  double norm = static_cast<double>(fn.size());
  PerN out;
  out.value = mean / norm;
  double var = samples > 1 ? m2 / (samples - 1) : 0.0;
  out.stderr_value = std::sqrt(var / samples) / norm;
  out.certified = false;  // MC estimates are never certified
  (void)certified;
  return out;
}

std::uint64_t task_seed(const EngineOptions& opts, const std::string& quantity, int n) {
  return mix_seed(mix_seed(opts.seed, hash_tag(quantity + "/" + opts.coeffs.tag())),
                  static_cast<std::uint64_t>(n));
}

// conditioning windows for one n: (v label, V window) pairs
std::vector<std::pair<int, LatticeWindow>> conditioning_windows(
    const EngineOptions& opts, const CylinderCover& cover, int n) {
  std::vector<std::pair<int, LatticeWindow>> out;
  if (!opts.code) {
    out.emplace_back(-1, LatticeWindow{});
    return out;
  }
  std::vector<int> vs = opts.v_schedule;
  if (vs.empty()) vs = {n};
  for (int v : vs) {
    if (v < n) continue;  // V must dominate the subset window
    out.emplace_back(v, minkowski_sum(folner_window(v, 1), cover.base));
  }
  if (out.empty())
    throw std::runtime_error("conditional series: V schedule has no entry >= n");
  return out;
}

using TermFn = std::function<SubsetValue(const SubsetMask&, CachedEval&)>;

TruncationSeries build_series(const std::string& quantity, const ShiftSpace& shift,
                              const EngineOptions& opts,
                              const std::function<TermFn(int n, int v, const LatticeWindow& V)>& term_factory,
                              const std::function<CachedEval()>& make_eval,
                              const CylinderCover& cover) {
  TruncationSeries ts;
  ts.quantity = quantity;
  ts.coeffs = opts.coeffs.tag();
  for (int n = opts.n_min; n <= opts.n_max; ++n) {
    try {
      LatticeWindow fn = folner_window(n, shift.dimension);
      for (auto& [v, V] : conditioning_windows(opts, cover, n)) {
        auto t0 = Clock::now();
        TermFn term = term_factory(n, v, V);
        PerN r = opts.mc ? mc_average(fn, opts.coeffs, opts.samples,
                                      task_seed(opts, quantity, n), term, make_eval)
                         : exact_average(fn, opts.coeffs, opts.exact_subset_limit,
                                         opts.jobs, term, make_eval);
        SeriesRecord rec;
        rec.n = n;
        rec.v = v;
        rec.value = r.value;
        rec.stderr_value = r.stderr_value;
        rec.certified = r.certified && !opts.mc;
        rec.mode = opts.mc ? "mc" : "exact";
        rec.seconds = elapsed(t0);
        ts.records.push_back(rec);
      }
    } catch (const std::exception& e) {
      ts.error = "n=" + std::to_string(n) + ": " + e.what();
      break;
    }
  }
  return ts;
}

}  // namespace

std::uint64_t engine_task_seed(const EngineOptions& opts, const std::string& quantity, int n) {
  return task_seed(opts, quantity, n);
}

TruncationSeries asc_top(const ShiftSpace& shift, const CylinderCover& cover,
                         const EngineOptions& opts) {
  bool conditional = opts.code.has_value();
  auto make_eval = [&, conditional]() {
    CountingOptions c2{opts.budget, opts.lang, true};
    std::function<SubsetValue(const SubsetMask&)> raw =
        [&shift, &cover, c2](const SubsetMask& S) -> SubsetValue {
      CountResult r = n_join(shift, cover, S, c2);
      return {std::log(static_cast<double>(r.value)), r.certified};
    };
    return CachedEval(cache_mode(shift, cover, nullptr, conditional), std::move(raw));
  };
  auto factory = [&](int, int, const LatticeWindow& V) -> TermFn {
    CountingOptions c2{opts.budget, opts.lang, true};
    return [&shift, &cover, &opts, c2, V](const SubsetMask& S, CachedEval& eval) -> SubsetValue {
      if (opts.code) {
        CountResult r = n_conditional(shift, cover, S, *opts.code, V, c2);
        return {std::log(static_cast<double>(r.value)), r.certified};
      }
      return eval(S);
    };
  };
  return build_series("asc_top", shift, opts, factory, make_eval, cover);
}

TruncationSeries int_top(const ShiftSpace& shift, const CylinderCover& cover,
                         const EngineOptions& opts) {
  bool conditional = opts.code.has_value();
  auto make_eval = [&, conditional]() {
    CountingOptions c2{opts.budget, opts.lang, true};
    std::function<SubsetValue(const SubsetMask&)> raw =
        [&shift, &cover, c2](const SubsetMask& S) -> SubsetValue {
      CountResult r = n_join(shift, cover, S, c2);
      return {std::log(static_cast<double>(r.value)), r.certified};
    };
    return CachedEval(cache_mode(shift, cover, nullptr, conditional), std::move(raw));
  };
  auto factory = [&](int, int, const LatticeWindow& V) -> TermFn {
    CountingOptions c2{opts.budget, opts.lang, true};
    return [&shift, &cover, &opts, c2, V](const SubsetMask& S, CachedEval& eval) -> SubsetValue {
      auto f = [&](const SubsetMask& M) -> SubsetValue {
        if (opts.code) {
          CountResult r = n_conditional(shift, cover, M, *opts.code, V, c2);
          return {std::log(static_cast<double>(r.value)), r.certified};
        }
        return eval(M);
      };
      SubsetMask comp = complement(S);
      SubsetMask full{S.window, S.window->size() >= 64
                                    ? ~0ull
                                    : ((1ull << S.window->size()) - 1ull)};
      SubsetValue a = f(S), b = f(comp), c = f(full);
      return {a.value + b.value - c.value, a.certified && b.certified && c.certified};
    };
  };
  return build_series("int_top", shift, opts, factory, make_eval, cover);
}

TruncationSeries asc_mu(const ShiftSpace& shift, const ShiftMeasure& mu,
                        const CylinderCover& partition, const EngineOptions& opts) {
  bool conditional = opts.code.has_value();
  auto make_eval = [&, conditional]() {
    LanguageLimits lim = opts.lang;
    std::function<SubsetValue(const SubsetMask&)> raw =
        [&shift, &mu, &partition, lim](const SubsetMask& S) -> SubsetValue {
      return {partition_entropy(shift, mu, partition, S, lim), true};
    };
    return CachedEval(cache_mode(shift, partition, &mu, conditional), std::move(raw));
  };
  auto factory = [&](int, int, const LatticeWindow& V) -> TermFn {
    LanguageLimits lim = opts.lang;
    return [&shift, &mu, &partition, &opts, lim, V](const SubsetMask& S,
                                                    CachedEval& eval) -> SubsetValue {
      if (opts.code)
        return {conditional_partition_entropy(shift, mu, partition, S, *opts.code, V, lim),
                true};
      return eval(S);
    };
  };
  return build_series("asc_mu", shift, opts, factory, make_eval, partition);
}

TruncationSeries asc_mu_minus(const ShiftSpace& shift, const ShiftMeasure& mu,
                              const CylinderCover& cover, const EngineOptions& opts) {
  bool conditional = opts.code.has_value();
  auto make_eval = [&, conditional]() {
    EntropyOptions eo = opts.entropy;
    eo.lang = opts.lang;
    std::function<SubsetValue(const SubsetMask&)> raw =
        [&shift, &mu, &cover, eo](const SubsetMask& S) -> SubsetValue {
      CoverEntropyResult r = cover_entropy(shift, mu, cover, S, eo);
      return {r.value, r.certified};
    };
    return CachedEval(cache_mode(shift, cover, &mu, conditional), std::move(raw));
  };
  auto factory = [&](int, int, const LatticeWindow& V) -> TermFn {
    EntropyOptions eo = opts.entropy;
    eo.lang = opts.lang;
    return [&shift, &mu, &cover, &opts, eo, V](const SubsetMask& S,
                                               CachedEval& eval) -> SubsetValue {
      if (opts.code) {
        CoverEntropyResult r = cover_entropy(shift, mu, cover, S, eo, &*opts.code, &V);
        return {r.value, r.certified};
      }
      return eval(S);
    };
  };
  return build_series("asc_mu_minus", shift, opts, factory, make_eval, cover);
}

namespace {

// one-shot a_n for a fixed partition, used by the Asc+ optimizer
double asc_mu_at_n(const ShiftSpace& shift, const ShiftMeasure& mu,
                   const CylinderCover& partition, int n, const EngineOptions& opts) {
  EngineOptions one = opts;
  one.n_min = one.n_max = n;
  one.code.reset();
  TruncationSeries s = asc_mu(shift, mu, partition, one);
  if (s.error) throw std::runtime_error("asc_mu_plus: inner evaluation failed: " + *s.error);
  return s.records.back().value;
}

CylinderCover partition_from_assignment(const CylinderCover& cover, const Language& base_lang,
                                        const std::vector<int>& assign) {
  CylinderCover p;
  p.name = cover.name + "+assigned";
  p.base = cover.base;
  p.elements.assign(cover.elements.size(), {});
  for (std::size_t i = 0; i < base_lang.size(); ++i)
    p.elements[assign[i]].push_back(base_lang.words[i]);
  // drop empty cells
  std::vector<std::vector<Word>> kept;
  for (auto& e : p.elements)
    if (!e.empty()) kept.push_back(std::move(e));
  p.elements = std::move(kept);
  p.is_partition = true;
  return p;
}

}  // namespace

namespace {

// per-base-pattern element choices of a (possibly lifted) cover
struct PlusSpace {
  Language base_lang;
  std::vector<std::vector<int>> choices;
  double log2_space = 0.0;
  std::uint64_t count = 1;
};

PlusSpace plus_space(const ShiftSpace& shift, const CylinderCover& cover,
                     const LanguageLimits& lang) {
  PlusSpace ps;
  ps.base_lang = language(shift, cover.base, lang);
  ps.choices.resize(ps.base_lang.size());
  for (std::size_t e = 0; e < cover.elements.size(); ++e)
    for (Word w : cover.elements[e]) {
      std::size_t i = ps.base_lang.index_of(w);
      if (i != Language::npos) ps.choices[i].push_back(static_cast<int>(e));
    }
  for (auto& ch : ps.choices) {
    if (ch.empty())
      throw std::invalid_argument("asc_mu_plus: cover does not cover the base language");
    ps.log2_space += std::log2(static_cast<double>(ch.size()));
    if (ps.log2_space <= 40.0) ps.count *= ch.size();
  }
  return ps;
}

std::vector<int> nth_assignment(const PlusSpace& ps, std::uint64_t j) {
  std::vector<int> assign(ps.choices.size());
  for (std::size_t i = ps.choices.size(); i-- > 0;) {
    assign[i] = ps.choices[i][j % ps.choices[i].size()];
    j /= ps.choices[i].size();
  }
  return assign;
}

}  // namespace

AscPlusResult asc_mu_plus(const ShiftSpace& shift, const ShiftMeasure& mu,
                          const CylinderCover& cover, const EngineOptions& opts) {
  AscPlusResult result;
  auto value_at = [&](const CylinderCover& partition, int n) {
    return asc_mu_at_n(shift, mu, partition, n, opts);
  };

  double best_final = std::numeric_limits<double>::infinity();
  double best_screen = std::numeric_limits<double>::infinity();
  CylinderCover best_partition;

  // exhaustively screen one candidate space at a cheap n; only candidates
  // that beat the incumbent at the screen get the full n_max evaluation
  auto optimize_space = [&](const CylinderCover& lifted, const PlusSpace& ps, bool first) {
    int n_screen = std::min(opts.n_max, 7);
    std::vector<std::pair<double, std::uint64_t>> ranked;
    ranked.reserve(ps.count);
    for (std::uint64_t j = 0; j < ps.count; ++j) {
      CylinderCover cand =
          partition_from_assignment(lifted, ps.base_lang, nth_assignment(ps, j));
      ranked.emplace_back(value_at(cand, n_screen), j);
    }
    std::sort(ranked.begin(), ranked.end());
    if (!first && ranked.front().first >= best_screen - 1e-12) return;
    ranked.resize(std::min<std::size_t>(ranked.size(), first ? 2 : 3));
    for (auto& [screen_value, j] : ranked) {
      if (!first && screen_value >= best_screen - 1e-12) continue;
      CylinderCover cand =
          partition_from_assignment(lifted, ps.base_lang, nth_assignment(ps, j));
      double v = n_screen == opts.n_max ? screen_value : value_at(cand, opts.n_max);
      if (v < best_final - 1e-15) {
        best_final = v;
        best_screen = screen_value;
        best_partition = std::move(cand);
      }
    }
  };

  PlusSpace base_space = plus_space(shift, cover, opts.lang);
  if (base_space.log2_space > 14.0) {
    // base window already too large to enumerate: greedy + first-improvement
    result.exhaustive = false;
    std::vector<int> assign(base_space.choices.size());
    for (int r = 0; r < 4; ++r) {
      Rng rng(mix_seed(opts.seed, 0x5a5a0000ull + r));
      for (std::size_t i = 0; i < base_space.choices.size(); ++i)
        assign[i] = r == 0 ? base_space.choices[i].front()
                           : base_space.choices[i][rng.below(base_space.choices[i].size())];
      double cur = value_at(partition_from_assignment(cover, base_space.base_lang, assign),
                            opts.n_max);
      bool improved = true;
      int evals = 0;
      while (improved && evals < 200) {
        improved = false;
        for (std::size_t i = 0; i < base_space.choices.size() && evals < 200; ++i) {
          int old = assign[i];
          for (int c : base_space.choices[i]) {
            if (c == old) continue;
            assign[i] = c;
            double v = value_at(
                partition_from_assignment(cover, base_space.base_lang, assign), opts.n_max);
            ++evals;
            if (v < cur - 1e-12) {
              cur = v;
              improved = true;
              break;
            }
            assign[i] = old;
          }
        }
      }
      if (cur < best_final) {
        best_final = cur;
        best_partition = partition_from_assignment(cover, base_space.base_lang, assign);
      }
    }
  } else {
    // base window, then enlarged windows W + F_m while the candidate space
    // stays enumerable; stop when enlarging no longer helps
    result.exhaustive = true;
    optimize_space(cover, base_space, true);
    for (int m = 2; m <= 4; ++m) {
      LatticeWindow wm = minkowski_sum(cover.base, folner_window(m, shift.dimension));
      if (wm.size() > cover.base.size() + 2) break;
      CylinderCover lifted = lift_cover(shift, cover, wm, opts.lang);
      PlusSpace ps = plus_space(shift, lifted, opts.lang);
      if (ps.log2_space > 12.0) break;
      optimize_space(lifted, ps, false);
    }
  }

  result.partition = std::move(best_partition);
  TruncationSeries s = asc_mu(shift, mu, result.partition, opts);
  s.quantity = "asc_mu_plus";
  if (!result.exhaustive)
    for (auto& rec : s.records) rec.certified = false;  // upper bound only
  result.series = std::move(s);
  return result;
}

TruncationSeries asc_minus_anchored(const ShiftSpace& shift, const ShiftMeasure& mu,
                                    const CylinderCover& cover, const EngineOptions& opts) {
  if (opts.coeffs.variant != CoefficientVariant::Uniform)
    throw std::invalid_argument("asc_minus_anchored: uniform coefficients only");
  if (shift.dimension != 1)
    throw std::invalid_argument("asc_minus_anchored: d=1 only");
  TruncationSeries ts;
  ts.quantity = "asc_minus_anchored";
  ts.coeffs = opts.coeffs.tag();
  EntropyOptions eo = opts.entropy;
  eo.lang = opts.lang;
  CachedEval eval(cache_mode(shift, cover, &mu, false),
                  [&shift, &mu, &cover, eo](const SubsetMask& S) -> SubsetValue {
                    CoverEntropyResult r = cover_entropy(shift, mu, cover, S, eo);
                    return {r.value, r.certified};
                  });
  for (int n = opts.n_min; n <= opts.n_max; ++n) {
    try {
      auto t0 = Clock::now();
      LatticeWindow fn = folner_window(n, 1);
      if (fn.size() > opts.exact_subset_limit)
        throw std::runtime_error("exact mode: window exceeds the exact subset limit");
      std::uint64_t total = 1ull << n;
      std::vector<double> terms;
      terms.reserve(total / 2);
      bool certified = true;
      double w = std::exp2(-(n - 1));
      for (std::uint64_t b = 0; b < total; ++b) {
        if (!(b & 1ull)) continue;  // require 0 in S
        SubsetMask S{&fn, b};
        SubsetValue v = eval(S);
        certified = certified && v.certified;
        terms.push_back(w * v.value);
      }
      SeriesRecord rec;
      rec.n = n;
      rec.value = pairwise_sum(terms) / n;
      rec.certified = certified;
      rec.seconds = elapsed(t0);
      ts.records.push_back(rec);
    } catch (const std::exception& e) {
      ts.error = "n=" + std::to_string(n) + ": " + e.what();
      break;
    }
  }
  return ts;
}

// ---------------------------------------------------------------------------
// joint tables and neural complexity
// ---------------------------------------------------------------------------

void JointTable::validate() const {
  if (arities.size() > 16) throw std::invalid_argument("JointTable: at most 16 indices");
  std::size_t total = 1;
  for (int a : arities) {
    if (a < 1) throw std::invalid_argument("JointTable: arity must be >= 1");
    total *= static_cast<std::size_t>(a);
    if (total > (std::size_t(1) << 26)) throw std::invalid_argument("JointTable: too large");
  }
  if (prob.size() != total) throw std::invalid_argument("JointTable: table size mismatch");
  double s = 0.0;
  for (double p : prob) {
    if (p < 0.0) throw std::invalid_argument("JointTable: negative probability");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw std::invalid_argument("JointTable: probabilities must sum to 1");
}

std::size_t JointTable::states() const {
  std::size_t total = 1;
  for (int a : arities) total *= static_cast<std::size_t>(a);
  return total;
}

namespace {

double marginal_entropy(const JointTable& t, std::uint32_t mask) {
  std::size_t e = t.arities.size();
  std::size_t sub_total = 1;
  for (std::size_t i = 0; i < e; ++i)
    if ((mask >> i) & 1u) sub_total *= static_cast<std::size_t>(t.arities[i]);
  std::vector<double> m(sub_total, 0.0);
  std::size_t total = t.states();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx, sub = 0, mult = 1;
    for (std::size_t i = e; i-- > 0;) {
      std::size_t digit = rest % t.arities[i];
      rest /= t.arities[i];
      if ((mask >> i) & 1u) {
        sub += digit * mult;
        mult *= t.arities[i];
      }
    }
    m[sub] += t.prob[idx];
  }
  return shannon_entropy(m);
}

}  // namespace

double mutual_information(const JointTable& table, std::uint32_t subset_mask) {
  std::size_t e = table.arities.size();
  std::uint32_t full = e >= 32 ? ~0u : ((1u << e) - 1u);
  subset_mask &= full;
  if (subset_mask == 0 || subset_mask == full) return 0.0;
  double hs = marginal_entropy(table, subset_mask);
  double hc = marginal_entropy(table, full & ~subset_mask);
  double he = marginal_entropy(table, full);
  double mi = hs + hc - he;
  return mi < 0.0 && mi > -1e-12 ? 0.0 : mi;
}

double neural_complexity(const JointTable& table, const CoefficientSystem& coeffs) {
  int e = static_cast<int>(table.arities.size());
  std::uint32_t total = 1u << e;
  // group by subset size, pairwise-sum each bucket
  std::vector<std::vector<double>> buckets(e + 1);
  for (std::uint32_t mask = 0; mask < total; ++mask)
    buckets[std::popcount(mask)].push_back(mutual_information(table, mask));
  std::vector<double> parts;
  for (int s = 0; s <= e; ++s)
    parts.push_back(coefficient(coeffs, e, s) * pairwise_sum(buckets[s]));
  return pairwise_sum(parts);
}

double neural_complexity_streamed(const JointTable& table, const CoefficientSystem& coeffs) {
  int e = static_cast<int>(table.arities.size());
  std::uint32_t total = 1u << e;
  double acc = 0.0;
  for (std::uint32_t mask = 0; mask < total; ++mask)
    acc += coefficient(coeffs, e, std::popcount(mask)) * mutual_information(table, mask);
  return acc;
}

}  // namespace intricacy
