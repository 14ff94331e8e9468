// Acceptance suite: one pass/fail line per criterion, exit code = #failures.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <vector>

#include "intricacy/engine.hpp"
#include "intricacy/rng.hpp"

using namespace intricacy;

namespace {

const double LN2 = std::log(2.0);
int failures = 0;

void report(int criterion, bool ok, const char* what, double worst, double seconds) {
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s (worst dev %.3e, %.1f s)\n", criterion,
              ok ? "PASS" : "FAIL", what, worst, seconds);
  std::fflush(stdout);
}

void run(int criterion, const char* what, const std::function<bool(double&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool ok = false;
  try {
    ok = body(worst);
  } catch (const std::exception& e) {
    std::printf("criterion %2d: exception: %s\n", criterion, e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(criterion, ok, what, worst, secs);
}

EngineOptions range(int lo, int hi) {
  EngineOptions o;
  o.n_min = lo;
  o.n_max = hi;
  return o;
}

ShiftMeasure parry() {
  return ShiftMeasure::markov({2.0 / 3, 1.0 / 3}, {{0.5, 0.5}, {1.0, 0.0}});
}

// Bernoulli(q, 1-q) conditioned on the golden-mean support: a 1 must be
// followed by a 0, so P = [[q, 1-q], [1, 0]] with its stationary vector.
ShiftMeasure conditioned_bernoulli(double q) {
  double pi0 = 1.0 / (2.0 - q);
  return ShiftMeasure::markov({pi0, 1.0 - pi0}, {{q, 1.0 - q}, {1.0, 0.0}});
}

CylinderCover overlap_cover() {
  CylinderCover c;
  c.name = "overlap";
  c.base = folner_window(1, 1);
  c.elements = {{0, 1}, {1, 2}};
  return c;
}

bool check(bool cond, double dev, double tol, double& worst) {
  worst = std::max(worst, dev);
  return cond && dev <= tol;
}

}  // namespace

int main() {
  // 1: full 2-shift constants
  run(1, "full 2-shift: asc_top = (ln 2)/2 and int_top = 0, n <= 14", [](double& worst) {
    ShiftSpace full2 = full_shift(2);
    CylinderCover sp = symbol_partition(full2);
    EngineOptions o = range(1, 14);
    TruncationSeries a = asc_top(full2, sp, o);
    TruncationSeries i = int_top(full2, sp, o);
    if (a.records.size() != 14 || i.records.size() != 14) return false;
    bool ok = true;
    for (auto& r : a.records) ok &= check(r.certified, std::abs(r.value - LN2 / 2), 1e-12, worst);
    for (auto& r : i.records) ok &= check(r.certified, std::abs(r.value), 1e-12, worst);
    return ok;
  });

  // 2: int = 2 asc - h per n
  run(2, "golden mean: int_top = 2 asc_top - h_n, uniform and neural, n <= 14",
      [](double& worst) {
        ShiftSpace gm = golden_mean_shift();
        CylinderCover sp = symbol_partition(gm);
        bool ok = true;
        for (auto sys : {CoefficientSystem::uniform(), CoefficientSystem::neural()}) {
          EngineOptions o = range(1, 14);
          o.coeffs = sys;
          TruncationSeries a = asc_top(gm, sp, o);
          TruncationSeries i = int_top(gm, sp, o);
          if (a.records.size() != 14 || i.records.size() != 14) return false;
          for (int k = 0; k < 14; ++k) {
            double h = log_big(count_words(gm, folner_window(k + 1, 1))) / (k + 1);
            ok &= check(true, std::abs(i.records[k].value - (2 * a.records[k].value - h)),
                        1e-12, worst);
          }
        }
        return ok;
      });

  // 3: entropy-rate sanity at n = 30
  run(3, "golden mean: (1/30) ln N(F_30) within 0.02 of the Perron value", [](double& worst) {
    double h30 = log_big(count_words(golden_mean_shift(), folner_window(30, 1))) / 30.0;
    double perron = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    return check(true, std::abs(h30 - perron), 0.02, worst);
  });

  // 4: order and squeeze for the partition infimum orderings
  run(4, "full 3-shift overlap cover: asc_mu_minus <= asc_mu_plus, gaps shrink",
      [](double& worst) {
        ShiftSpace full3 = full_shift(3);
        ShiftMeasure mu = ShiftMeasure::bernoulli({1.0 / 3, 1.0 / 3, 1.0 / 3});
        CylinderCover c = overlap_cover();
        EngineOptions o = range(2, 12);
        TruncationSeries minus = asc_mu_minus(full3, mu, c, o);
        AscPlusResult plus = asc_mu_plus(full3, mu, c, o);
        if (minus.records.size() != 11 || plus.series.records.size() != 11) return false;
        bool ok = true;
        for (int k = 0; k < 11; ++k) {
          double gap = minus.records[k].value - plus.series.records[k].value;
          ok &= check(true, std::max(gap, 0.0), 1e-9, worst);
        }
        // each series' own truncation (Cauchy) gap shrinks from n=4 to n=12
        for (const TruncationSeries* s : {&minus, &plus.series}) {
          auto val = [&](int n) { return s->records[n - 2].value; };
          double g4 = std::abs(val(4) - val(2)), g12 = std::abs(val(12) - val(10));
          ok &= check(g12 <= g4 + 1e-12, 0.0, 1.0, worst);
        }
        return ok;
      });

  // 5: variational inequality and the equality case
  run(5, "asc_mu <= asc_top (golden mean, Markov measures); equality on the full 2-shift",
      [](double& worst) {
        ShiftSpace gm = golden_mean_shift();
        CylinderCover sp = symbol_partition(gm);
        EngineOptions o = range(1, 12);
        TruncationSeries top = asc_top(gm, sp, o);
        bool ok = top.records.size() == 12;
        for (auto& mu : {parry(), conditioned_bernoulli(0.3), conditioned_bernoulli(0.7)}) {
          TruncationSeries m = asc_mu(gm, mu, sp, o);
          if (m.records.size() != 12) return false;
          for (int k = 0; k < 12; ++k) {
            double over = m.records[k].value - top.records[k].value;
            ok &= check(true, std::max(over, 0.0), 1e-9, worst);
          }
        }
        ShiftSpace full2 = full_shift(2);
        CylinderCover sp2 = symbol_partition(full2);
        EngineOptions o14 = range(1, 14);
        TruncationSeries t2 = asc_top(full2, sp2, o14);
        TruncationSeries m2 = asc_mu(full2, ShiftMeasure::bernoulli({0.5, 0.5}), sp2, o14);
        for (int k = 0; k < 14; ++k)
          ok &= check(true, std::abs(m2.records[k].value - t2.records[k].value), 1e-12, worst);
        return ok;
      });

  // 6: conditional degeneracies
  run(6, "constant/identity/xor codes reproduce their hand oracles, n <= 12",
      [](double& worst) {
        ShiftSpace full2 = full_shift(2);
        CylinderCover sp = symbol_partition(full2);
        ShiftMeasure fair = ShiftMeasure::bernoulli({0.5, 0.5});
        bool ok = true;
        EngineOptions oc = range(1, 8);
        oc.code = constant_code(2);
        TruncationSeries cc = asc_top(full2, sp, oc);
        TruncationSeries un = asc_top(full2, sp, range(1, 8));
        for (int k = 0; k < 8; ++k)
          ok &= check(true, std::abs(cc.records[k].value - un.records[k].value), 1e-12, worst);

        LatticeWindow f4 = folner_window(4, 1);
        SubsetMask S{&f4, 0b1111};
        CountResult idc = n_conditional(full2, sp, S, identity_code(2), f4);
        ok &= check(idc.value == 1 && idc.certified, 0.0, 1.0, worst);
        double ch = conditional_partition_entropy(full2, fair, sp, S, identity_code(2), f4);
        ok &= check(true, std::abs(ch), 1e-12, worst);

        EngineOptions ox = range(1, 12);
        ox.code = xor_code();
        TruncationSeries mu = asc_mu(full2, fair, sp, ox);
        if (mu.records.size() != 12) return false;
        for (int k = 0; k < 12; ++k) {
          int n = k + 1;
          double expect = (1.0 - std::pow(2.0, -n)) * LN2 / n;
          ok &= check(true, std::abs(mu.records[k].value - expect), 1e-12, worst);
        }
        return ok;
      });

  // 7: coefficient systems
  run(7, "coefficients: normalization/symmetry (a <= 30), beta quadrature (a <= 12)",
      [](double& worst) {
        bool ok = true;
        auto lam = CoefficientSystem::lambda_atoms({{0.25, 0.5}, {0.75, 0.5}});
        for (const auto& sys : {CoefficientSystem::uniform(), CoefficientSystem::neural(), lam})
          for (int a = 0; a <= 30; ++a) {
            double total = 0.0;
            for (int s = 0; s <= a; ++s) {
              double c = coefficient(sys, a, s);
              total += std::exp(log_binomial(a, s)) * c;
              ok &= check(true, std::abs(c - coefficient(sys, a, a - s)), 1e-12, worst);
            }
            ok &= check(true, std::abs(total - 1.0), 1e-12, worst);
          }
        // Simpson quadrature of int_0^1 x^s (1-x)^{a-s} dx
        for (int a = 0; a <= 12; ++a)
          for (int s = 0; s <= a; ++s) {
            const int m = 4096;
            double h = 1.0 / m, acc = (s == 0 ? 1.0 : 0.0) + (s == a ? 1.0 : 0.0);
            for (int i = 1; i < m; ++i) {
              double x = i * h;
              acc += (i % 2 ? 4.0 : 2.0) * std::pow(x, s) * std::pow(1.0 - x, a - s);
            }
            double q = acc * h / 3.0;
            ok &= check(true, std::abs(coefficient(CoefficientSystem::neural(), a, s) - q),
                        1e-8, worst);
          }
        return ok;
      });

  // 8: Monte-Carlo calibration
  run(8, "mc asc_top at n = 12: within 3 stderr of exact in >= 99 of 100 seeds",
      [](double& worst) {
        ShiftSpace gm = golden_mean_shift();
        CylinderCover sp = symbol_partition(gm);
        double exact = asc_top(gm, sp, range(12, 12)).records[0].value;
        int hits = 0;
        for (int seed = 1; seed <= 100; ++seed) {
          EngineOptions o = range(12, 12);
          o.mc = true;
          o.samples = 10000;
          o.seed = static_cast<std::uint64_t>(seed);
          SeriesRecord r = asc_top(gm, sp, o).records[0];
          double z = std::abs(r.value - exact) / r.stderr_value;
          worst = std::max(worst, z);
          if (z <= 3.0) ++hits;
        }
        std::printf("  mc calibration: %d/100 seeds within 3 stderr\n", hits);
        return hits >= 99;
      });

  // 9: neural complexity
  run(9, "neural complexity: independence, identical bits, streamed agreement",
      [](double& worst) {
        bool ok = true;
        JointTable same;
        same.arities = {2, 2};
        same.prob = {0.5, 0.0, 0.0, 0.5};
        ok &= check(true, std::abs(neural_complexity(same) - LN2 / 3), 1e-12, worst);
        JointTable ind;
        ind.arities = {2, 2, 2, 2, 2};
        ind.prob.resize(32);
        std::vector<double> p{0.1, 0.35, 0.5, 0.62, 0.9};
        for (int s = 0; s < 32; ++s) {
          double pr = 1.0;
          for (int i = 0; i < 5; ++i) pr *= (s >> (4 - i)) & 1 ? p[i] : 1.0 - p[i];
          ind.prob[s] = pr;
        }
        ok &= check(true, std::abs(neural_complexity(ind)), 1e-12, worst);
        // random joint tables up to |E| = 10
        Rng rng(7);
        for (int t = 0; t < 12; ++t) {
          JointTable jt;
          int e = 2 + int(rng.below(9));
          jt.arities.assign(e, 2);
          if (e <= 6 && rng.below(2)) jt.arities[0] = 3;
          jt.prob.resize(jt.states());
          double tot = 0;
          for (double& x : jt.prob) tot += (x = -std::log(rng.uniform01()));
          for (double& x : jt.prob) x /= tot;
          ok &= check(true,
                      std::abs(neural_complexity(jt) - neural_complexity_streamed(jt)),
                      1e-12, worst);
        }
        return ok;
      });

  // 10: solver oracles
  run(10, "set-cover vs brute force (200 instances); fractional assignments never win",
      [](double& worst) {
        bool ok = true;
        Rng rng(4242);
        for (int t = 0; t < 200; ++t) {
          SetCoverInstance inst;
          inst.universe = 3 + rng.below(8);
          std::size_t nsets = 2 + rng.below(9);
          inst.sets.resize(nsets);
          std::uint64_t covered = 0;
          do {
            covered = 0;
            for (auto& s : inst.sets) {
              s.clear();
              for (std::uint32_t el = 0; el < inst.universe; ++el)
                if (rng.uniform01() < 0.35) {
                  s.push_back(el);
                  covered |= 1ull << el;
                }
            }
          } while (covered != (1ull << inst.universe) - 1);
          CountResult r = min_set_cover(inst);
          // brute force over set selections
          std::vector<std::uint64_t> masks(nsets, 0);
          for (std::size_t i = 0; i < nsets; ++i)
            for (auto el : inst.sets[i]) masks[i] |= 1ull << el;
          std::uint64_t best = nsets;
          for (std::uint64_t pick = 1; pick < (1ull << nsets); ++pick) {
            std::uint64_t cov = 0;
            for (std::size_t i = 0; i < nsets; ++i)
              if ((pick >> i) & 1) cov |= masks[i];
            if (cov == (1ull << inst.universe) - 1)
              best = std::min<std::uint64_t>(best, std::popcount(pick));
          }
          ok &= r.certified && r.value == best;
          if (!(r.certified && r.value == best)) worst = std::max(worst, 1.0);
        }

        // cover entropy: 1e4 random fractional assignments on F_2 and F_3 joins
        ShiftSpace full3 = full_shift(3);
        CylinderCover c = overlap_cover();
        ShiftMeasure mu = ShiftMeasure::bernoulli({0.2, 0.5, 0.3});
        LatticeWindow f3 = folner_window(3, 1);
        for (std::uint64_t bits : {0b11ull, 0b101ull}) {
          SubsetMask S{&f3, bits};
          CoverEntropyResult r = cover_entropy(full3, mu, c, S);
          if (!r.certified) return false;
          AssignmentSpace as = assignment_space(full3, c, subset_points(S));
          PatternDistribution d = marginal(full3, mu, as.atoms.window);
          Rng frng(31 + bits);
          for (int t = 0; t < 5000; ++t) {
            std::map<std::uint64_t, double> cells;
            for (std::size_t a = 0; a < as.atoms.size(); ++a) {
              std::vector<double> w(as.choices[a].size());
              double tot = 0;
              for (double& x : w) tot += (x = -std::log(frng.uniform01()));
              for (std::size_t k = 0; k < w.size(); ++k)
                cells[as.choices[a][k]] += d.prob[a] * w[k] / tot;
            }
            std::vector<double> masses;
            for (auto& [key, v] : cells) masses.push_back(v);
            double h = shannon_entropy(masses);
            ok &= check(true, std::max(r.value - h, 0.0), 1e-9, worst);
          }
        }
        return ok;
      });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "OK", failures);
  return failures;
}
