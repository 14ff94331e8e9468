// intricacy_cli.cpp -- compute / verify / sweep front end.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration or
// validation error, 3 budget exhaustion (partial output written).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "intricacy/config.hpp"
#include "intricacy/counting.hpp"
#include "intricacy/verify.hpp"

namespace fs = std::filesystem;
using namespace intricacy;

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_dir = ".";
  std::string mode;
  int samples = -1;
  std::optional<std::uint64_t> seed;
  long budget_nodes = -1;
  int jobs = -1;
  bool bits = false;
};

void apply_overrides(RunConfiguration& cfg, const CliOverrides& cli) {
  if (cli.mode == "exact") cfg.mc = false;
  if (cli.mode == "mc") cfg.mc = true;
  if (cli.samples > 0) cfg.samples = cli.samples;
  if (cli.seed) cfg.seed = *cli.seed;
  if (cli.budget_nodes > 0) cfg.budget_nodes = cli.budget_nodes;
  if (cli.jobs > 0) cfg.jobs = cli.jobs;
  if (cli.bits) cfg.bits = true;
  if (cfg.mc && cfg.samples < 100)
    throw ConfigError("/samples", "mc mode requires at least 100 samples");
}

// resolve each request against the configuration before any work starts,
// so bad references exit 2 without partial files
void validate_requests(const RunConfiguration& cfg) {
  for (auto& q : cfg.quantities) {
    const CylinderCover& cover = cfg.cover(q.cover);
    if ((q.quantity == "asc_mu") && !cover.is_partition)
      throw ConfigError("/quantities", "asc_mu needs a partition, got cover '" + q.cover + "'");
    if (!q.measure.empty()) cfg.measure(q.measure);
    if (q.quantity == "asc_minus_anchored" &&
        cfg.coeffs.variant != CoefficientVariant::Uniform)
      throw ConfigError("/quantities", "asc_minus_anchored needs uniform coefficients");
  }
}

std::vector<TruncationSeries> run_quantities(const RunConfiguration& cfg) {
  EngineOptions opts = cfg.engine_options();
  std::vector<TruncationSeries> out;
  for (auto& q : cfg.quantities) {
    const CylinderCover& cover = cfg.cover(q.cover);
    if (q.quantity == "asc_top") {
      out.push_back(asc_top(cfg.system, cover, opts));
    } else if (q.quantity == "int_top") {
      out.push_back(int_top(cfg.system, cover, opts));
    } else if (q.quantity == "asc_mu") {
      out.push_back(asc_mu(cfg.system, cfg.measure(q.measure), cover, opts));
    } else if (q.quantity == "asc_mu_minus") {
      out.push_back(asc_mu_minus(cfg.system, cfg.measure(q.measure), cover, opts));
    } else if (q.quantity == "asc_mu_plus") {
      out.push_back(asc_mu_plus(cfg.system, cfg.measure(q.measure), cover, opts).series);
    } else if (q.quantity == "asc_minus_anchored") {
      out.push_back(asc_minus_anchored(cfg.system, cfg.measure(q.measure), cover, opts));
    } else if (q.quantity == "h_cover") {
      CountingOptions copts{opts.budget, opts.lang, true};
      out.push_back(h_cover_series(cfg.system, cover, opts.n_min, opts.n_max, opts.code, copts));
    }
    out.back().quantity += "[" + q.cover + (q.measure.empty() ? "" : "," + q.measure) + "]";
  }
  return out;
}

int write_results(const std::vector<TruncationSeries>& series, const RunConfiguration& cfg,
                  const std::string& out_dir, const std::string& suffix = "") {
  fs::create_directories(out_dir);
  auto stem = [&](std::string name) {
    fs::path p = fs::path(out_dir) / name;
    if (!suffix.empty()) p.replace_filename(p.stem().string() + suffix + p.extension().string());
    return p;
  };
  std::ofstream csv(stem(cfg.out_csv));
  write_csv(csv, series, cfg.bits);

  nlohmann::json report;
  report["series"] = nlohmann::json::array();
  for (auto& s : series) report["series"].push_back(series_to_json(s, cfg.bits));
  bool exhausted = false;
  report["errors"] = nlohmann::json::array();
  for (auto& s : series)
    if (s.error) {
      report["errors"].push_back({{"quantity", s.quantity}, {"error", *s.error}});
      exhausted = true;
    }
  std::ofstream json_out(stem(cfg.out_json));
  json_out << report.dump(2) << "\n";
  return exhausted ? 3 : 0;
}

int cmd_compute(const CliOverrides& cli) {
  RunConfiguration cfg = load_config(cli.config_path);
  apply_overrides(cfg, cli);
  validate_requests(cfg);
  std::vector<TruncationSeries> series = run_quantities(cfg);
  int rc = write_results(series, cfg, cli.out_dir);
  for (auto& s : series) {
    std::cout << s.quantity << " (" << s.coeffs << "): ";
    if (s.records.empty()) {
      std::cout << "no records";
    } else {
      std::cout << "a_" << s.records.back().n << " = " << s.final_value()
                << ", gap " << s.cauchy_gap();
    }
    if (s.error) std::cout << "  [stopped: " << *s.error << "]";
    std::cout << "\n";
  }
  return rc;
}

int cmd_verify(const CliOverrides& cli) {
  RunConfiguration cfg = load_config(cli.config_path);
  apply_overrides(cfg, cli);
  VerifyReport report = verify_suite(cfg);
  fs::create_directories(cli.out_dir);
  std::ofstream out(fs::path(cli.out_dir) / "verify_report.json");
  out << report.to_json().dump(2) << "\n";
  for (auto& c : report.checks) {
    std::cout << c.status << "  " << c.name;
    if (c.status == "fail") std::cout << "  deviation=" << c.deviation;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
  }
  return report.all_passed() ? 0 : 1;
}

int cmd_sweep(const CliOverrides& cli, const std::string& param,
              const std::vector<std::string>& values) {
  int worst = 0;
  for (const std::string& value : values) {
    RunConfiguration cfg = load_config(cli.config_path);
    apply_overrides(cfg, cli);
    // one result set per value; the run seed is shared and per-task seeds
    // are derived from (seed, quantity, n), so overlapping points coincide
    if (param == "n") {
      cfg.n_max = std::stoi(value);
      if (cfg.n_max < cfg.n_min) cfg.n_min = 1;
    } else if (param == "V") {
      cfg.v_schedule = {std::stoi(value)};
    } else if (param == "samples") {
      cfg.samples = std::stoi(value);
    } else if (param == "coefficients") {
      if (value == "uniform") {
        cfg.coeffs = CoefficientSystem::uniform();
      } else if (value == "neural") {
        cfg.coeffs = CoefficientSystem::neural();
      } else {
        throw ConfigError("/sweep", "unknown coefficient system '" + value + "'");
      }
    } else {
      throw ConfigError("/sweep", "parameter must be one of n, V, samples, coefficients");
    }
    validate_requests(cfg);
    std::vector<TruncationSeries> series = run_quantities(cfg);
    worst = std::max(worst, write_results(series, cfg, cli.out_dir, "_" + param + value));
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"average sample complexity and intricacy of shift spaces"};
  app.require_subcommand(1);

  CliOverrides cli;
  std::string param;
  std::vector<std::string> values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", cli.config_path, "configuration JSON")->required();
    sub->add_option("--out", cli.out_dir, "output directory");
    sub->add_option("--mode", cli.mode, "exact|mc")
        ->check(CLI::IsMember({"exact", "mc"}));
    sub->add_option("--samples", cli.samples, "Monte-Carlo sample count");
    sub->add_option("--seed", cli.seed, "run seed");
    sub->add_option("--budget-nodes", cli.budget_nodes, "set-cover node budget");
    sub->add_option("--jobs", cli.jobs, "worker threads");
    sub->add_flag("--bits", cli.bits, "report values in bits instead of nats");
  };

  CLI::App* compute = app.add_subcommand("compute", "run the configured quantities");
  add_common(compute);
  CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
  add_common(verify);
  CLI::App* sweep = app.add_subcommand("sweep", "rerun over a parameter grid");
  add_common(sweep);
  sweep->add_option("--param", param, "n | V | samples | coefficients")->required();
  sweep->add_option("--values", values, "parameter values")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return cmd_compute(cli);
    if (verify->parsed()) return cmd_verify(cli);
    if (sweep->parsed()) return cmd_sweep(cli, param, values);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
