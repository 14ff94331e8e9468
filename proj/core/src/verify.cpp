#include "intricacy/verify.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "intricacy/counting.hpp"

namespace intricacy {

namespace {

CheckResult pass(std::string name, double dev = 0.0, std::string detail = {}) {
  return {std::move(name), "pass", dev, std::move(detail)};
}
CheckResult failc(std::string name, double dev, std::string detail) {
  return {std::move(name), "fail", dev, std::move(detail)};
}
CheckResult skip(std::string name, std::string detail) {
  return {std::move(name), "skip", 0.0, std::move(detail)};
}

// run a check body, converting exceptions into failures
template <typename F>
void guarded(std::vector<CheckResult>& out, const std::string& name, F&& body) {
  try {
    out.push_back(body());
  } catch (const std::exception& e) {
    out.push_back(failc(name, 0.0, e.what()));
  }
}

bool all_certified(const TruncationSeries& s) {
  return !s.error &&
         std::all_of(s.records.begin(), s.records.end(),
                     [](const SeriesRecord& r) { return r.certified; });
}

CheckResult coefficient_checks(const CoefficientSystem& sys, const std::string& name) {
  double worst = 0.0;
  for (int a = 0; a <= 30; ++a) {
    double total = 0.0;
    for (int s = 0; s <= a; ++s) {
      double c = coefficient(sys, a, s);
      double mirror = coefficient(sys, a, a - s);
      worst = std::max(worst, std::abs(c - mirror));
      total += std::exp(log_binomial(a, s)) * c;
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  if (worst > 1e-12)
    return failc(name, worst, "normalization or symmetry broken for some a <= 30");
  return pass(name, worst);
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == "fail"; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"status", c.status},
                   {"deviation", c.deviation},
                   {"detail", c.detail}});
  return {{"checks", arr}, {"all_passed", all_passed()}};
}

VerifyReport verify_suite(const RunConfiguration& cfg) {
  VerifyReport report;
  auto& out = report.checks;
  EngineOptions opts = cfg.engine_options();
  // the suite runs every identity on a shared small grid
  opts.n_max = std::min(opts.n_max, 8);
  EngineOptions exact_opts = opts;
  exact_opts.mc = false;

  guarded(out, "system_valid", [&] {
    cfg.system.validate();
    return pass("system_valid");
  });

  guarded(out, "coefficients", [&] { return coefficient_checks(cfg.coeffs, "coefficients"); });
  guarded(out, "coefficients_uniform",
          [&] { return coefficient_checks(CoefficientSystem::uniform(), "coefficients_uniform"); });
  guarded(out, "coefficients_neural",
          [&] { return coefficient_checks(CoefficientSystem::neural(), "coefficients_neural"); });

  for (auto& [name, cover] : cfg.covers) {
    guarded(out, "cover_valid/" + name, [&, &name = name, &cover = cover] {
      CoverValidation v = validate_cover(cfg.system, cover);
      if (!v.valid) return failc("cover_valid/" + name, 0.0, v.message);
      return pass("cover_valid/" + name, 0.0, v.partition ? "partition" : "cover");
    });
  }

  for (auto& [name, mu] : cfg.measures) {
    guarded(out, "measure_valid/" + name, [&, &name = name, &mu = mu] {
      mu.validate(cfg.system);
      return pass("measure_valid/" + name);
    });
  }

  // int = 2 asc - h, per n, exact certified runs only
  for (auto& [name, cover] : cfg.covers) {
    std::string cname = "int_identity/" + name;
    if (cfg.mc) {
      out.push_back(skip(cname, "requires exact mode"));
      continue;
    }
    guarded(out, cname, [&, &cover = cover, cname] {
      // the identity is an unconditional statement
      EngineOptions uncond = exact_opts;
      uncond.code.reset();
      uncond.v_schedule.clear();
      TruncationSeries asc = asc_top(cfg.system, cover, uncond);
      TruncationSeries intt = int_top(cfg.system, cover, uncond);
      CountingOptions copts{exact_opts.budget, exact_opts.lang, true};
      TruncationSeries h =
          h_cover_series(cfg.system, cover, exact_opts.n_min, exact_opts.n_max, {}, copts);
      if (!all_certified(asc) || !all_certified(intt) || !all_certified(h))
        return skip(cname, "uncertified counts in range");
      double worst = 0.0;
      for (std::size_t i = 0; i < intt.records.size(); ++i)
        worst = std::max(worst, std::abs(intt.records[i].value - 2 * asc.records[i].value +
                                         h.records[i].value));
      if (worst > 1e-12) return failc(cname, worst, "identity violated");
      return pass(cname, worst);
    });
  }

  // measure-side identities, per (partition-or-cover, measure)
  for (auto& [cname0, cover] : cfg.covers) {
    for (auto& [mname, mu] : cfg.measures) {
      std::string key = cname0 + "," + mname;
      if (cfg.mc) {
        out.push_back(skip("asc_mu_monotone/" + key, "requires exact mode"));
        out.push_back(skip("mu_le_top/" + key, "requires exact mode"));
        out.push_back(skip("minus_le_plus/" + key, "requires exact mode"));
        continue;
      }
      if (cover.is_partition) {
        guarded(out, "asc_mu_monotone/" + key, [&, &cover = cover, &mu = mu, key] {
          TruncationSeries s = asc_mu(cfg.system, mu, cover, exact_opts);
          if (s.error) return skip("asc_mu_monotone/" + key, *s.error);
          double worst = 0.0;
          for (std::size_t i = 1; i < s.records.size(); ++i)
            worst = std::max(worst, s.records[i].value - s.records[i - 1].value);
          if (worst > 1e-9) return failc("asc_mu_monotone/" + key, worst, "a_n increased");
          return pass("asc_mu_monotone/" + key, std::max(worst, 0.0));
        });
        guarded(out, "mu_le_top/" + key, [&, &cover = cover, &mu = mu, key] {
          TruncationSeries top = asc_top(cfg.system, cover, exact_opts);
          TruncationSeries mus = asc_mu(cfg.system, mu, cover, exact_opts);
          if (!all_certified(top) || mus.error)
            return skip("mu_le_top/" + key, "uncertified or failed run");
          double worst = 0.0;
          for (std::size_t i = 0; i < mus.records.size(); ++i)
            worst = std::max(worst, mus.records[i].value - top.records[i].value);
          if (worst > 1e-9) return failc("mu_le_top/" + key, worst, "entropy exceeds log-count");
          return pass("mu_le_top/" + key, std::max(worst, 0.0));
        });
        guarded(out, "minus_matches_mu/" + key, [&, &cover = cover, &mu = mu, key] {
          TruncationSeries minus = asc_mu_minus(cfg.system, mu, cover, exact_opts);
          TruncationSeries mus = asc_mu(cfg.system, mu, cover, exact_opts);
          if (!all_certified(minus) || mus.error)
            return skip("minus_matches_mu/" + key, "uncertified or failed run");
          double worst = 0.0;
          for (std::size_t i = 0; i < mus.records.size(); ++i)
            worst = std::max(worst, std::abs(minus.records[i].value - mus.records[i].value));
          if (worst > 1e-12)
            return failc("minus_matches_mu/" + key, worst,
                         "partition infimum must be a singleton");
          return pass("minus_matches_mu/" + key, worst);
        });
      } else {
        guarded(out, "minus_le_plus/" + key, [&, &cover = cover, &mu = mu, key] {
          EngineOptions small = exact_opts;
          small.n_max = std::min(small.n_max, 5);  // asc+ optimizes over assignments
          TruncationSeries minus = asc_mu_minus(cfg.system, mu, cover, small);
          AscPlusResult plus = asc_mu_plus(cfg.system, mu, cover, small);
          if (minus.error || plus.series.error)
            return skip("minus_le_plus/" + key, "inner run failed");
          double worst = 0.0;
          for (std::size_t i = 0; i < minus.records.size(); ++i)
            worst = std::max(worst, minus.records[i].value - plus.series.records[i].value);
          if (worst > 1e-9) return failc("minus_le_plus/" + key, worst, "order violated");
          return pass("minus_le_plus/" + key, std::max(worst, 0.0));
        });
      }
    }
  }

  // MC pairing: the int identity holds exactly per sample, so the MC series
  // must equal the replayed per-sample combination bit for bit
  {
    std::string cname = "mc_pairing";
    if (!cfg.mc) {
      out.push_back(skip(cname, "requires mc mode"));
    } else {
      guarded(out, cname, [&] {
        const CylinderCover& cover = cfg.covers.front().second;
        EngineOptions mco = opts;
        mco.n_min = mco.n_max = std::min(opts.n_max, 6);
        mco.code.reset();
        TruncationSeries intt = int_top(cfg.system, cover, mco);
        if (intt.error) return skip(cname, *intt.error);
        int n = mco.n_max;
        LatticeWindow fn = folner_window(n, cfg.system.dimension);
        SubsetSampler sampler(mco.coeffs, fn, engine_task_seed(mco, "int_top", n));
        CountingOptions copts{mco.budget, mco.lang, true};
        SubsetMask full{&fn, (1ull << fn.size()) - 1ull};
        double lf = std::log(static_cast<double>(n_join(cfg.system, cover, full, copts).value));
        double mean = 0.0;
        for (int i = 0; i < mco.samples; ++i) {
          SubsetMask S = sampler.next();
          double a =
              std::log(static_cast<double>(n_join(cfg.system, cover, S, copts).value));
          double b = std::log(
              static_cast<double>(n_join(cfg.system, cover, complement(S), copts).value));
          double v = a + b - lf;
          mean += (v - mean) / (i + 1);
        }
        double replay = mean / fn.size();
        double dev = std::abs(replay - intt.records.back().value);
        if (dev > 0.0) return failc(cname, dev, "replayed pairing differs");
        return pass(cname, dev);
      });
    }
  }

  // conditional fibers refine as V grows
  {
    std::string cname = "conditional_monotone_in_v";
    if (!cfg.code || cfg.v_schedule.size() < 2) {
      out.push_back(skip(cname, "needs a code and a V schedule with >= 2 entries"));
    } else if (cfg.mc) {
      out.push_back(skip(cname, "requires exact mode"));
    } else {
      guarded(out, cname, [&] {
        const CylinderCover& cover = cfg.covers.front().second;
        int n = std::min(opts.n_max, 4);
        LatticeWindow fn = folner_window(n, cfg.system.dimension);
        SubsetMask full{&fn, (1ull << fn.size()) - 1ull};
        CountingOptions copts{opts.budget, opts.lang, true};
        std::vector<int> vs = cfg.v_schedule;
        std::sort(vs.begin(), vs.end());
        long prev = -1;
        for (int v : vs) {
          if (v < n) continue;
          LatticeWindow V = minkowski_sum(folner_window(v, 1), cover.base);
          CountResult r = n_conditional(cfg.system, cover, full, *cfg.code, V, copts);
          if (!r.certified) return skip(cname, "uncertified conditional count");
          if (prev >= 0 && r.value > prev)
            return failc(cname, double(r.value - prev), "count increased with V");
          prev = r.value;
        }
        if (prev < 0) return skip(cname, "V schedule has no entry >= n");
        return pass(cname);
      });
    }
  }

  return report;
}

}  // namespace intricacy
