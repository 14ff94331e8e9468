#include "doctest.h"
#include "intricacy/verify.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

using namespace intricacy;
using nlohmann::json;

namespace {

RunConfiguration golden_config() {
  return parse_config(json::parse(R"({
    "system": {"type": "golden_mean"},
    "covers": {"symbols": {"kind": "symbols"}},
    "measures": {"parry": {"type": "markov",
                           "pi": [0.6666666666666666, 0.3333333333333333],
                           "P": [[0.5, 0.5], [1.0, 0.0]]}},
    "quantities": [
      {"quantity": "asc_top", "cover": "symbols"},
      {"quantity": "int_top", "cover": "symbols"},
      {"quantity": "asc_mu", "cover": "symbols", "measure": "parry"}
    ],
    "n": {"min": 1, "max": 6}
  })"));
}

bool has_check(const VerifyReport& r, const std::string& prefix, const std::string& status) {
  return std::any_of(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) {
    return c.name.starts_with(prefix) && c.status == status;
  });
}

}  // namespace

TEST_CASE("verify passes on a sound configuration") {
  VerifyReport r = verify_suite(golden_config());
  CHECK(r.all_passed());
  CHECK(has_check(r, "system_valid", "pass"));
  CHECK(has_check(r, "coefficients", "pass"));
  CHECK(has_check(r, "int_identity", "pass"));
  CHECK(has_check(r, "asc_mu_monotone", "pass"));
  CHECK(has_check(r, "mu_le_top", "pass"));
  json j = r.to_json();
  CHECK(j["all_passed"].get<bool>());
  CHECK(j["checks"].size() == r.checks.size());
}

TEST_CASE("verify exercises mc pairing when configured") {
  RunConfiguration cfg = golden_config();
  cfg.mc = true;
  cfg.samples = 400;
  VerifyReport r = verify_suite(cfg);
  CHECK(r.all_passed());
  CHECK(has_check(r, "mc_pairing", "pass"));
}

TEST_CASE("verify covers conditional monotonicity") {
  RunConfiguration cfg = parse_config(json::parse(R"({
    "system": {"type": "full", "alphabet": 2},
    "covers": {"symbols": {"kind": "symbols"}},
    "measures": {"fair": {"type": "bernoulli", "p": [0.5, 0.5]}},
    "code": {"type": "xor"},
    "quantities": [{"quantity": "asc_mu", "cover": "symbols", "measure": "fair"}],
    "n": {"min": 1, "max": 5},
    "v_schedule": [4, 6, 8]
  })"));
  VerifyReport r = verify_suite(cfg);
  CHECK(r.all_passed());
  CHECK(has_check(r, "conditional_monotone_in_v", "pass"));
}

TEST_CASE("verify reports failures instead of throwing") {
  RunConfiguration cfg = golden_config();
  // corrupt the measure after parsing; the suite must flag it, not crash
  cfg.measures[0].second.P[0][0] = 0.9;
  VerifyReport r = verify_suite(cfg);
  CHECK_FALSE(r.all_passed());
  CHECK(has_check(r, "measure_valid", "fail"));
}
