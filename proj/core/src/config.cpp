#include "intricacy/config.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

namespace intricacy {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& loc, const std::string& what) {
  throw ConfigError(loc, what);
}

const json& at(const json& j, const char* key, const std::string& loc) {
  if (!j.is_object()) fail(loc, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(loc + "/" + key, "missing required field");
  return *it;
}

template <typename T>
T get(const json& j, const char* key, const std::string& loc) {
  try {
    return at(j, key, loc).get<T>();
  } catch (const json::exception& e) {
    fail(loc + "/" + key, e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, const std::string& loc, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(loc + "/" + key, e.what());
  }
}

std::vector<std::vector<int>> matrix(const json& j, const std::string& loc) {
  try {
    return j.get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    fail(loc, e.what());
  }
}

ShiftSpace parse_system(const json& j, const std::string& loc) {
  std::string type = get<std::string>(j, "type", loc);
  int alphabet = get_or<int>(j, "alphabet", loc, 2);
  if (type == "full") {
    int dim = get_or<int>(j, "dimension", loc, 1);
    try {
      ShiftSpace s = full_shift(alphabet, dim);
      s.validate();
      return s;
    } catch (const std::exception& e) {
      fail(loc, e.what());
    }
  }
  if (type == "golden_mean") return golden_mean_shift();
  if (type == "sft") {
    try {
      ShiftSpace s;
      if (j.contains("vertical")) {
        s = sft_2d(matrix(at(j, "horizontal", loc), loc + "/horizontal"),
                   matrix(at(j, "vertical", loc), loc + "/vertical"));
      } else {
        s = sft_1d(matrix(at(j, "transitions", loc), loc + "/transitions"));
      }
      s.validate();
      return s;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(loc, e.what());
    }
  }
  fail(loc + "/type", "unknown system type '" + type + "'");
}

LatticeWindow parse_window(const json& j, int dimension, const std::string& loc) {
  std::vector<Point> pts;
  if (!j.is_array()) fail(loc, "expected an array of points");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& p = j[i];
    std::string ploc = loc + "/" + std::to_string(i);
    if (p.is_number_integer()) {
      if (dimension != 1) fail(ploc, "scalar point in a 2d system");
      pts.push_back({p.get<int>(), 0});
    } else if (p.is_array() && p.size() == 2) {
      pts.push_back({p[0].get<int>(), p[1].get<int>()});
    } else {
      fail(ploc, "expected an integer or an [x,y] pair");
    }
  }
  try {
    return make_window(dimension, std::move(pts));
  } catch (const std::exception& e) {
    fail(loc, e.what());
  }
}

CylinderCover parse_cover(const json& j, const ShiftSpace& system, const std::string& loc,
                          const std::string& name) {
  std::string kind = get_or<std::string>(j, "kind", loc, "explicit");
  if (kind == "symbols") {
    CylinderCover c = symbol_partition(system);
    c.name = name;
    return c;
  }
  if (kind != "explicit") fail(loc + "/kind", "unknown cover kind '" + kind + "'");
  CylinderCover c;
  c.name = name;
  c.base = parse_window(at(j, "base", loc), system.dimension, loc + "/base");
  const json& els = at(j, "elements", loc);
  if (!els.is_array() || els.empty()) fail(loc + "/elements", "expected a nonempty array");
  for (std::size_t e = 0; e < els.size(); ++e) {
    std::string eloc = loc + "/elements/" + std::to_string(e);
    std::vector<Word> words;
    if (!els[e].is_array() || els[e].empty()) fail(eloc, "expected a nonempty array of patterns");
    for (std::size_t p = 0; p < els[e].size(); ++p) {
      std::vector<int> syms;
      try {
        syms = els[e][p].get<std::vector<int>>();
      } catch (const json::exception& ex) {
        fail(eloc + "/" + std::to_string(p), ex.what());
      }
      if (syms.size() != c.base.size())
        fail(eloc + "/" + std::to_string(p), "pattern length does not match the base window");
      for (int s : syms)
        if (s < 0 || s >= system.alphabet)
          fail(eloc + "/" + std::to_string(p), "symbol outside the alphabet");
      words.push_back(encode_word(syms, system.alphabet));
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    c.elements.push_back(std::move(words));
  }
  CoverValidation v = validate_cover(system, c);
  if (!v.valid) fail(loc, "invalid cover: " + v.message);
  c.is_partition = v.partition;
  return c;
}

ShiftMeasure parse_measure(const json& j, const std::string& loc,
                           const std::vector<std::pair<std::string, ShiftMeasure>>& known) {
  std::string type = get<std::string>(j, "type", loc);
  try {
    if (type == "bernoulli")
      return ShiftMeasure::bernoulli(get<std::vector<double>>(j, "p", loc));
    if (type == "markov")
      return ShiftMeasure::markov(get<std::vector<double>>(j, "pi", loc),
                                  get<std::vector<std::vector<double>>>(j, "P", loc));
    if (type == "mixture") {
      std::vector<double> weights = get<std::vector<double>>(j, "weights", loc);
      std::vector<ShiftMeasure> parts;
      const json& comps = at(j, "components", loc);
      if (!comps.is_array()) fail(loc + "/components", "expected an array");
      for (std::size_t i = 0; i < comps.size(); ++i) {
        std::string cloc = loc + "/components/" + std::to_string(i);
        if (comps[i].is_string()) {
          std::string ref = comps[i].get<std::string>();
          auto it = std::find_if(known.begin(), known.end(),
                                 [&](auto& kv) { return kv.first == ref; });
          if (it == known.end()) fail(cloc, "unknown measure '" + ref + "'");
          parts.push_back(it->second);
        } else {
          parts.push_back(parse_measure(comps[i], cloc, known));
        }
      }
      return ShiftMeasure::mixture(std::move(weights), std::move(parts));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(loc, e.what());
  }
  fail(loc + "/type", "unknown measure type '" + type + "'");
}

SlidingBlockCode parse_code(const json& j, const ShiftSpace& system, const std::string& loc) {
  std::string type = get<std::string>(j, "type", loc);
  try {
    if (type == "identity") return identity_code(system.alphabet);
    if (type == "constant")
      return constant_code(system.alphabet, get_or<int>(j, "value", loc, 0));
    if (type == "xor") {
      if (system.alphabet != 2) fail(loc, "xor code needs a binary alphabet");
      return xor_code();
    }
    if (type == "table") {
      SlidingBlockCode c;
      c.source_alphabet = system.alphabet;
      c.target_alphabet = get_or<int>(j, "target_alphabet", loc, system.alphabet);
      c.radius = get<int>(j, "radius", loc);
      c.rule = get<std::vector<int>>(j, "rule", loc);
      c.validate();
      return c;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(loc, e.what());
  }
  fail(loc + "/type", "unknown code type '" + type + "'");
}

CoefficientSystem parse_coeffs(const json& j, const std::string& loc) {
  if (j.is_string()) {
    std::string v = j.get<std::string>();
    if (v == "uniform") return CoefficientSystem::uniform();
    if (v == "neural") return CoefficientSystem::neural();
    fail(loc, "unknown coefficient system '" + v + "'");
  }
  std::string variant = get<std::string>(j, "variant", loc);
  if (variant == "uniform") return CoefficientSystem::uniform();
  if (variant == "neural") return CoefficientSystem::neural();
  if (variant == "lambda") {
    std::vector<std::pair<double, double>> atoms;
    try {
      for (auto& a : at(j, "atoms", loc))
        atoms.emplace_back(a.at("x").get<double>(), a.at("weight").get<double>());
      return CoefficientSystem::lambda_atoms(std::move(atoms));
    } catch (const json::exception& e) {
      fail(loc + "/atoms", e.what());
    } catch (const std::exception& e) {
      fail(loc + "/atoms", e.what());
    }
  }
  fail(loc + "/variant", "unknown coefficient system '" + variant + "'");
}

const std::vector<std::string> kQuantities = {
    "asc_top",     "int_top",     "asc_mu", "asc_mu_minus",
    "asc_mu_plus", "asc_minus_anchored", "h_cover"};

bool needs_measure(const std::string& q) {
  return q == "asc_mu" || q == "asc_mu_minus" || q == "asc_mu_plus" ||
         q == "asc_minus_anchored";
}

}  // namespace

const CylinderCover& RunConfiguration::cover(const std::string& name) const {
  for (auto& [n, c] : covers)
    if (n == name) return c;
  throw ConfigError("/quantities", "unknown cover '" + name + "'");
}

const ShiftMeasure& RunConfiguration::measure(const std::string& name) const {
  for (auto& [n, m] : measures)
    if (n == name) return m;
  throw ConfigError("/quantities", "unknown measure '" + name + "'");
}

EngineOptions RunConfiguration::engine_options() const {
  EngineOptions o;
  o.coeffs = coeffs;
  o.n_min = n_min;
  o.n_max = n_max;
  o.mc = mc;
  o.samples = samples;
  o.seed = seed;
  o.budget = budget_nodes;
  o.exact_subset_limit = exact_subset_limit;
  o.jobs = jobs;
  o.code = code;
  o.v_schedule = v_schedule;
  return o;
}

RunConfiguration parse_config(const json& j) {
  if (!j.is_object()) fail("/", "configuration must be a JSON object");
  RunConfiguration cfg;
  cfg.system = parse_system(at(j, "system", "/"), "/system");

  const json& covers = at(j, "covers", "/");
  if (!covers.is_object() || covers.empty())
    fail("/covers", "expected a nonempty object of named covers");
  for (auto& [name, body] : covers.items())
    cfg.covers.emplace_back(name, parse_cover(body, cfg.system, "/covers/" + name, name));

  if (j.contains("measures")) {
    const json& measures = j.at("measures");
    if (!measures.is_object()) fail("/measures", "expected an object of named measures");
    for (auto& [name, body] : measures.items()) {
      ShiftMeasure m = parse_measure(body, "/measures/" + name, cfg.measures);
      try {
        m.validate(cfg.system);
      } catch (const std::exception& e) {
        fail("/measures/" + name, e.what());
      }
      cfg.measures.emplace_back(name, std::move(m));
    }
  }

  if (j.contains("code")) cfg.code = parse_code(j.at("code"), cfg.system, "/code");
  if (j.contains("coefficients")) cfg.coeffs = parse_coeffs(j.at("coefficients"), "/coefficients");

  const json& qs = at(j, "quantities", "/");
  if (!qs.is_array() || qs.empty()) fail("/quantities", "expected a nonempty array");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    std::string loc = "/quantities/" + std::to_string(i);
    QuantityRequest q;
    q.quantity = get<std::string>(qs[i], "quantity", loc);
    if (std::find(kQuantities.begin(), kQuantities.end(), q.quantity) == kQuantities.end())
      fail(loc + "/quantity", "unknown quantity '" + q.quantity + "'");
    q.cover = get<std::string>(qs[i], "cover", loc);
    cfg.cover(q.cover);  // resolve now for a good error location
    if (needs_measure(q.quantity)) {
      q.measure = get<std::string>(qs[i], "measure", loc);
      cfg.measure(q.measure);
    } else {
      q.measure = get_or<std::string>(qs[i], "measure", loc, std::string());
    }
    cfg.quantities.push_back(std::move(q));
  }

  const json& n = at(j, "n", "/");
  cfg.n_min = get<int>(n, "min", "/n");
  cfg.n_max = get<int>(n, "max", "/n");
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) fail("/n", "need 1 <= min <= max");

  cfg.v_schedule = get_or<std::vector<int>>(j, "v_schedule", "/", {});
  for (int v : cfg.v_schedule)
    if (v < 1) fail("/v_schedule", "window sizes must be >= 1");

  std::string mode = get_or<std::string>(j, "mode", "/", std::string("exact"));
  if (mode == "exact") {
    cfg.mc = false;
  } else if (mode == "mc") {
    cfg.mc = true;
  } else {
    fail("/mode", "mode must be 'exact' or 'mc'");
  }
  cfg.samples = get_or<int>(j, "samples", "/", 10000);
  if (cfg.mc && cfg.samples < 100) fail("/samples", "mc mode requires at least 100 samples");
  cfg.seed = get_or<std::uint64_t>(j, "seed", "/", 1);
  cfg.budget_nodes = get_or<long>(j, "budget_nodes", "/", 1'000'000L);
  if (cfg.budget_nodes < 1) fail("/budget_nodes", "must be positive");
  cfg.exact_subset_limit =
      get_or<std::size_t>(j, "exact_subset_limit", "/", std::size_t(20));
  cfg.jobs = get_or<int>(j, "jobs", "/", 1);
  if (cfg.jobs < 1) fail("/jobs", "must be positive");
  cfg.bits = get_or<bool>(j, "bits", "/", false);

  if (j.contains("output")) {
    const json& out = j.at("output");
    cfg.out_csv = get_or<std::string>(out, "csv", "/output", cfg.out_csv);
    cfg.out_json = get_or<std::string>(out, "json", "/output", cfg.out_json);
  }
  return cfg;
}

RunConfiguration load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("/", "cannot open configuration file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail("/", std::string("JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace intricacy
