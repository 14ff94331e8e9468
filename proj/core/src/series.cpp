#include "intricacy/series.hpp"

#include <nlohmann/json.hpp>
#include <cstdio>
#include <ostream>

namespace intricacy {

double TruncationSeries::final_value() const {
  if (records.empty()) return std::nan("");
  return records.back().value;
}

double TruncationSeries::cauchy_gap() const {
  // compare against the record two steps back at the same v, falling back
  // to the previous record
  if (records.size() < 2) return std::nan("");
  const SeriesRecord& last = records.back();
  for (std::size_t i = records.size() - 1; i-- > 0;) {
    if (records[i].v == last.v && records[i].n <= last.n - 2)
      return std::abs(last.value - records[i].value);
  }
  return std::abs(last.value - records[records.size() - 2].value);
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_seconds(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, std::span<const TruncationSeries> series, bool bits) {
  const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
  os << "quantity,coeffs,n,V,value,stderr,certified,mode,seconds\n";
  for (const TruncationSeries& s : series) {
    for (const SeriesRecord& r : s.records) {
      os << s.quantity << ',' << s.coeffs << ',' << r.n << ',';
      if (r.v >= 0) os << r.v;
      os << ',' << fmt_double(r.value * scale) << ',' << fmt_double(r.stderr_value * scale)
         << ',' << (r.certified ? "true" : "false") << ',' << r.mode << ','
         << fmt_seconds(r.seconds) << '\n';
    }
  }
}

nlohmann::json series_to_json(const TruncationSeries& s, bool bits) {
  const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
  nlohmann::json j;
  j["quantity"] = s.quantity;
  j["coeffs"] = s.coeffs;
  j["records"] = nlohmann::json::array();
  for (const SeriesRecord& r : s.records) {
    nlohmann::json rec;
    rec["n"] = r.n;
    if (r.v >= 0) rec["v"] = r.v;
    rec["value"] = r.value * scale;
    rec["stderr"] = r.stderr_value * scale;
    rec["certified"] = r.certified;
    rec["mode"] = r.mode;
    rec["seconds"] = r.seconds;
    j["records"].push_back(rec);
  }
  if (!s.records.empty()) {
    j["final"] = {{"value", s.final_value() * scale}, {"cauchy_gap", s.cauchy_gap() * scale}};
  }
  if (s.error) j["error"] = *s.error;
  return j;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace intricacy
