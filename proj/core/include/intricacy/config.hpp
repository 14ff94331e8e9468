// config.hpp -- JSON run configurations for the CLI and the verify suite.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "intricacy/engine.hpp"

namespace intricacy {

struct ConfigError : std::runtime_error {
  std::string location;  // JSON-pointer-ish path of the offending field

  ConfigError(std::string loc, const std::string& what)
      : std::runtime_error(loc + ": " + what), location(std::move(loc)) {}
};

struct QuantityRequest {
  std::string quantity;  // asc_top | int_top | asc_mu | asc_mu_minus |
                         // asc_mu_plus | asc_minus_anchored | h_cover
  std::string cover;     // cover/partition name
  std::string measure;   // required by the measure quantities
};

struct RunConfiguration {
  ShiftSpace system;
  std::vector<std::pair<std::string, CylinderCover>> covers;
  std::vector<std::pair<std::string, ShiftMeasure>> measures;
  std::optional<SlidingBlockCode> code;
  CoefficientSystem coeffs = CoefficientSystem::uniform();
  std::vector<QuantityRequest> quantities;
  int n_min = 1;
  int n_max = 8;
  std::vector<int> v_schedule;
  bool mc = false;
  int samples = 10000;
  std::uint64_t seed = 1;
  long budget_nodes = 1'000'000;
  std::size_t exact_subset_limit = 20;
  int jobs = 1;
  std::string out_csv = "results.csv";
  std::string out_json = "results.json";
  bool bits = false;

  const CylinderCover& cover(const std::string& name) const;
  const ShiftMeasure& measure(const std::string& name) const;
  EngineOptions engine_options() const;
};

// Both throw ConfigError with a location on any schema violation.
RunConfiguration parse_config(const nlohmann::json& j);
RunConfiguration load_config(const std::string& path);

}  // namespace intricacy
