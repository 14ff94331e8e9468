// verify.hpp -- self-checking suite: runs the cross-quantity identities and
// structural validations on a configuration and reports per-check results.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "intricacy/config.hpp"

namespace intricacy {

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "skip"
  double deviation = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;  // no failures (skips allowed)
  nlohmann::json to_json() const;
};

VerifyReport verify_suite(const RunConfiguration& cfg);

}  // namespace intricacy
