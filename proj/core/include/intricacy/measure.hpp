// measure.hpp -- invariant measures (Bernoulli, Markov, mixtures), window
// marginals, Shannon entropies of partition joins and the cover entropy
// H_mu(U_S) = inf over finer partitions.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "intricacy/code.hpp"
#include "intricacy/cover.hpp"

namespace intricacy {

struct ShiftMeasure {
  enum class Kind { Bernoulli, Markov, Mixture };
  Kind kind = Kind::Bernoulli;

  std::vector<double> p;                 // Bernoulli: symbol probabilities
  std::vector<double> stationary;        // Markov: pi
  std::vector<std::vector<double>> P;    // Markov: row-stochastic transitions
  std::vector<double> weights;           // Mixture
  std::vector<ShiftMeasure> components;  // Mixture

  static ShiftMeasure bernoulli(std::vector<double> p);
  static ShiftMeasure markov(std::vector<double> pi, std::vector<std::vector<double>> P);
  static ShiftMeasure mixture(std::vector<double> weights, std::vector<ShiftMeasure> parts);

  // checks normalization, stationarity pi P = pi, support compatibility
  // with the shift's transition structure
  void validate(const ShiftSpace& shift) const;
};

ShiftMeasure mixture_combine(std::vector<ShiftMeasure> measures, std::vector<double> weights);

struct PatternDistribution {
  Language support;
  std::vector<double> prob;  // aligned with support.words
};

PatternDistribution marginal(const ShiftSpace& shift, const ShiftMeasure& mu,
                             const LatticeWindow& window, const LanguageLimits& limits = {});

// probability of one pattern (positions sorted canonically)
double pattern_probability(const ShiftMeasure& mu, const LatticeWindow& window,
                           std::span<const int> symbols);

// H_mu(alpha_S) in nats; S = empty gives 0
double partition_entropy(const ShiftSpace& shift, const ShiftMeasure& mu,
                         const CylinderCover& partition, const SubsetMask& S,
                         const LanguageLimits& limits = {});

// H_mu(alpha_S | y on V) = H(joint) - H(factor); non-increasing in V
double conditional_partition_entropy(const ShiftSpace& shift, const ShiftMeasure& mu,
                                     const CylinderCover& partition, const SubsetMask& S,
                                     const SlidingBlockCode& code, const LatticeWindow& V,
                                     const LanguageLimits& limits = {});

struct EntropyOptions {
  double exhaustive_limit = 262144.0;  // 2^18 assignments
  int restarts = 8;
  int pass_cap = 30;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  LanguageLimits lang;
};

struct CoverEntropyResult {
  double value = 0.0;
  bool certified = false;  // exhaustive minimum vs greedy/local-search bound
  // chosen join tuple code per universe atom
  std::vector<std::uint64_t> assignment;
};

// H_mu(U_S): minimum over deterministic assignments of join atoms to
// covering tuples of the entropy of the induced partition. Conditional
// variant minimizes H(induced | y on V) with the factor code.
CoverEntropyResult cover_entropy(const ShiftSpace& shift, const ShiftMeasure& mu,
                                 const CylinderCover& cover, const SubsetMask& S,
                                 const EntropyOptions& opts = {},
                                 const SlidingBlockCode* code = nullptr,
                                 const LatticeWindow* V = nullptr);

// -x ln x with the 0 ln 0 = 0 convention
double entropy_term(double x);

// entropy of a mass vector, deterministic pairwise accumulation
double shannon_entropy(std::span<const double> masses);

}  // namespace intricacy
