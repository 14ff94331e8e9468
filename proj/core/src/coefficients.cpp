#include "intricacy/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace intricacy {

CoefficientSystem CoefficientSystem::lambda_atoms(std::vector<std::pair<double, double>> a) {
  CoefficientSystem s{CoefficientVariant::LambdaAtoms, std::move(a)};
  double total = 0.0;
  for (auto& [x, w] : s.atoms) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("lambda atom outside [0,1]");
    if (w < 0.0) throw std::invalid_argument("negative lambda atom weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("lambda atom weights must sum to 1");
  // c_S = c_{A\S} needs the mixing measure symmetric under x -> 1-x
  for (auto& [x, w] : s.atoms) {
    double mirrored = 0.0;
    for (auto& [y, v] : s.atoms)
      if (std::abs(y - (1.0 - x)) <= 1e-12) mirrored += v;
    double direct = 0.0;
    for (auto& [y, v] : s.atoms)
      if (std::abs(y - x) <= 1e-12) direct += v;
    if (std::abs(direct - mirrored) > 1e-12)
      throw std::invalid_argument("lambda atoms must be symmetric under x -> 1-x");
  }
  return s;
}

std::string CoefficientSystem::tag() const {
  switch (variant) {
    case CoefficientVariant::Uniform: return "uniform";
    case CoefficientVariant::Neural: return "neural";
    case CoefficientVariant::LambdaAtoms: return "atoms";
  }
  return "?";
}

double log_binomial(int a, int s) {
  return std::lgamma(a + 1.0) - std::lgamma(s + 1.0) - std::lgamma(a - s + 1.0);
}

namespace {

// Exact in double for a <= 56 or so; we only need desk-scale a.
double binomial(int a, int s) {
  s = std::min(s, a - s);
  if (a > 40) return std::exp(log_binomial(a, s));
  double r = 1.0;
  for (int i = 1; i <= s; ++i) r = r * (a - s + i) / i;
  return r;
}

}  // namespace

double coefficient(const CoefficientSystem& sys, int a, int s) {
  if (a < 0 || s < 0 || s > a)
    throw std::invalid_argument("coefficient: need 0 <= s <= a");
  switch (sys.variant) {
    case CoefficientVariant::Uniform:
      return std::exp2(-static_cast<double>(a));
    case CoefficientVariant::Neural:
      // binomial(a, min(s, a-s)) so that c(a,s) == c(a,a-s) bit-for-bit
      return 1.0 / ((a + 1) * binomial(a, s));
    case CoefficientVariant::LambdaAtoms: {
      double c = 0.0;
      for (auto& [x, w] : sys.atoms)
        c += w * std::pow(x, s) * std::pow(1.0 - x, a - s);
      return c;
    }
  }
  throw std::logic_error("coefficient: unknown variant");
}

SubsetSampler::SubsetSampler(const CoefficientSystem& sys, const LatticeWindow& window,
                             std::uint64_t seed)
    : sys_(sys), window_(window), seed_(seed) {
  if (window.size() > 63) throw std::invalid_argument("SubsetSampler: window too large");
}

SubsetMask SubsetSampler::next() {
  Rng rng(mix_seed(seed_, index_++));
  double x = 0.5;
  switch (sys_.variant) {
    case CoefficientVariant::Uniform:
      x = 0.5;
      break;
    case CoefficientVariant::Neural:
      // Lebesgue mixing measure: x ~ U[0,1]
      x = rng.uniform01();
      break;
    case CoefficientVariant::LambdaAtoms: {
      double u = rng.uniform01();
      double acc = 0.0;
      x = sys_.atoms.empty() ? 0.5 : sys_.atoms.back().first;
      for (auto& [ax, w] : sys_.atoms) {
        acc += w;
        if (u < acc) {
          x = ax;
          break;
        }
      }
      break;
    }
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < window_.size(); ++i)
    if (rng.uniform01() < x) bits |= (1ull << i);
  return {&window_, bits};
}

}  // namespace intricacy
