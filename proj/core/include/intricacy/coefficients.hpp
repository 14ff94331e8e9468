// coefficients.hpp -- systems of coefficients c^A_S on subsets and their samplers.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "intricacy/lattice.hpp"
#include "intricacy/rng.hpp"

namespace intricacy {

enum class CoefficientVariant { Uniform, Neural, LambdaAtoms };

// Symmetric weights c^A_S depending only on (|A|, |S|):
//   Uniform     c = 2^{-|A|}
//   Neural      c = 1 / ((|A|+1) * binom(|A|,|S|))
//   LambdaAtoms c = sum_i w_i * x_i^{|S|} (1-x_i)^{|A|-|S|}
// The atom list must be symmetric under x -> 1-x so that c_S = c_{A\S}.
struct CoefficientSystem {
  CoefficientVariant variant = CoefficientVariant::Uniform;
  std::vector<std::pair<double, double>> atoms;  // (x, weight)

  static CoefficientSystem uniform() { return {CoefficientVariant::Uniform, {}}; }
  static CoefficientSystem neural() { return {CoefficientVariant::Neural, {}}; }
  static CoefficientSystem lambda_atoms(std::vector<std::pair<double, double>> a);

  std::string tag() const;
};

// c^A_S for |A| = a, |S| = s. Rejects s < 0, a < 0 or s > a.
double coefficient(const CoefficientSystem& sys, int a, int s);

double log_binomial(int a, int s);

// Seeded stream of subset masks distributed according to the coefficient
// system: draw x from the mixing measure, include each point independently
// with probability x. Deterministic function of (system, window, seed, index).
class SubsetSampler {
 public:
  SubsetSampler(const CoefficientSystem& sys, const LatticeWindow& window,
                std::uint64_t seed);

  SubsetMask next();

 private:
  CoefficientSystem sys_;
  LatticeWindow window_;
  std::uint64_t seed_;
  std::uint64_t index_ = 0;
};

}  // namespace intricacy
