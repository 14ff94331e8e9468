// engine.hpp -- truncation series for the average sample complexity and
// intricacy quantities, with exact or Monte-Carlo subset averaging.

#pragma once

#include <optional>

#include "intricacy/coefficients.hpp"
#include "intricacy/counting.hpp"
#include "intricacy/measure.hpp"
#include "intricacy/series.hpp"

namespace intricacy {

struct EngineOptions {
  CoefficientSystem coeffs = CoefficientSystem::uniform();
  int n_min = 1;
  int n_max = 8;
  bool mc = false;
  int samples = 10000;
  std::uint64_t seed = 1;
  long budget = 1'000'000;
  std::size_t exact_subset_limit = 20;
  int jobs = 1;
  LanguageLimits lang;
  EntropyOptions entropy;
  std::optional<SlidingBlockCode> code;
  // conditioning window sizes; when empty and a code is present, V = F_n
  std::vector<int> v_schedule;
};

// a_n = (1/|F_n|) sum_S c_S ln N(U_S[|Y])
TruncationSeries asc_top(const ShiftSpace& shift, const CylinderCover& cover,
                         const EngineOptions& opts);

// a_n = (1/|F_n|) sum_S c_S [ln N(U_S) + ln N(U_{F\S}) - ln N(U_F)]
TruncationSeries int_top(const ShiftSpace& shift, const CylinderCover& cover,
                         const EngineOptions& opts);

// a_n = (1/|F_n|) sum_S c_S H_mu(alpha_S[|Y])
TruncationSeries asc_mu(const ShiftSpace& shift, const ShiftMeasure& mu,
                        const CylinderCover& partition, const EngineOptions& opts);

// a_n = (1/|F_n|) sum_S c_S H_mu(U_S[|Y]) with the per-S partition infimum
TruncationSeries asc_mu_minus(const ShiftSpace& shift, const ShiftMeasure& mu,
                              const CylinderCover& cover, const EngineOptions& opts);

struct AscPlusResult {
  TruncationSeries series;
  CylinderCover partition;  // the minimizing cylinder partition on W
  bool exhaustive = false;
};

// inf over one global partition finer than the cover, optimized at n_max
// and reused across the series
AscPlusResult asc_mu_plus(const ShiftSpace& shift, const ShiftMeasure& mu,
                          const CylinderCover& cover, const EngineOptions& opts);

// a_n = (1/n) sum_{0 in S subset F_n} 2^{-(n-1)} H_mu(U_S); uniform
// coefficients and d=1 only
TruncationSeries asc_minus_anchored(const ShiftSpace& shift, const ShiftMeasure& mu,
                                    const CylinderCover& cover, const EngineOptions& opts);

// per-(quantity, n) seed of the Monte-Carlo subset stream:
// mix(mix(run seed, hash(quantity "/" coeffs tag)), n)
std::uint64_t engine_task_seed(const EngineOptions& opts, const std::string& quantity, int n);

// finite family of random variables
struct JointTable {
  std::vector<int> arities;  // per index, state count; |E| <= 16
  std::vector<double> prob;  // row-major, last index fastest

  void validate() const;
  std::size_t states() const;
};

// I(X_S; X_{E\S}) = H(S) + H(E\S) - H(E); 0 for S empty or full
double mutual_information(const JointTable& table, std::uint32_t subset_mask);

// sum_S c(|E|,|S|) I(X_S; X_{E\S}); Neural coefficients by default
double neural_complexity(const JointTable& table,
                         const CoefficientSystem& coeffs = CoefficientSystem::neural());

// same value accumulated in plain enumeration order (consistency oracle)
double neural_complexity_streamed(const JointTable& table,
                                  const CoefficientSystem& coeffs = CoefficientSystem::neural());

}  // namespace intricacy
