// series.hpp -- per-n truncation series records and their CSV/JSON forms.

#pragma once

#include <cmath>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace intricacy {

struct SeriesRecord {
  int n = 0;
  int v = -1;  // conditioning window size, -1 when unconditional
  double value = 0.0;
  double stderr_value = 0.0;  // 0 in exact mode
  bool certified = false;
  std::string mode = "exact";  // "exact" | "mc"
  double seconds = 0.0;
};

struct TruncationSeries {
  std::string quantity;
  std::string coeffs;
  std::vector<SeriesRecord> records;
  std::optional<std::string> error;  // set when the run stopped early

  double final_value() const;
  // |a_n - a_{n-2}|; parity-stable gap used as the reported convergence proxy
  double cauchy_gap() const;
};

// header: quantity,coeffs,n,V,value,stderr,certified,mode,seconds
void write_csv(std::ostream& os, std::span<const TruncationSeries> series,
               bool bits = false);

nlohmann::json series_to_json(const TruncationSeries& s, bool bits = false);

// fixed-order pairwise summation, deterministic across thread counts
double pairwise_sum(std::span<const double> values);

}  // namespace intricacy
