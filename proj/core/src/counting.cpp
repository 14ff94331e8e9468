#include "intricacy/counting.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace intricacy {

bool is_symbol_partition(const ShiftSpace& shift, const CylinderCover& cover) {
  if (cover.base.size() != 1) return false;
  if (static_cast<int>(cover.elements.size()) != shift.alphabet) return false;
  std::vector<bool> seen(shift.alphabet, false);
  for (auto& e : cover.elements) {
    if (e.size() != 1) return false;
    Word w = e.front();
    if (w >= static_cast<Word>(shift.alphabet) || seen[w]) return false;
    seen[w] = true;
  }
  return true;
}

namespace {

// distinct join cells of a partition cover, no tuple-product blowup
std::uint64_t partition_cell_count(const JoinStructure& js) {
  std::size_t m = js.subset_pts.size();
  if (m == 0) return 1;
  std::set<std::vector<int>> cells;
  std::vector<int> tuple(m);
  for (std::size_t a = 0; a < js.universe.size(); ++a) {
    for (std::size_t g = 0; g < m; ++g) {
      if (js.choices[a][g].size() != 1)
        throw std::logic_error("partition_cell_count: cover is not a partition");
      tuple[g] = js.choices[a][g].front();
    }
    cells.insert(tuple);
  }
  return cells.size();
}

std::vector<std::vector<std::uint32_t>> prune_dominated(
    std::vector<std::vector<std::uint32_t>> sets) {
  // removing a set contained in another cannot change the minimum
  if (sets.size() > 4096) return sets;  // keep pruning quadratic cost bounded
  std::vector<bool> dead(sets.size(), false);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (dead[i]) continue;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i == j || dead[j]) continue;
      if (sets[i].size() < sets[j].size() ||
          (sets[i].size() == sets[j].size() && j < i)) {
        if (std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end()))
          dead[i] = true;
      }
      if (dead[i]) break;
    }
  }
  std::vector<std::vector<std::uint32_t>> kept;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (!dead[i]) kept.push_back(std::move(sets[i]));
  return kept;
}

}  // namespace

CountResult n_join(const ShiftSpace& shift, const CylinderCover& cover,
                   const SubsetMask& S, const CountingOptions& opts) {
  if (is_symbol_partition(shift, cover) && shift.dimension == 1) {
    BigInt c = count_words(shift, S);
    if (c > BigInt(~0ull))
      throw std::overflow_error("n_join: count exceeds 64 bits; use h_cover_series");
    return {c.convert_to<std::uint64_t>(), true, 0};
  }
  if (cover.is_partition) {
    JoinStructure js = join_structure(shift, cover, S, opts.lang);
    return {partition_cell_count(js), true, 0};
  }
  JoinUniverse ju = join_materialize(shift, cover, S, opts.lang);
  SetCoverInstance inst;
  inst.universe = ju.universe.size();
  inst.sets = opts.prune_dominated ? prune_dominated(std::move(ju.covered_sets))
                                   : std::move(ju.covered_sets);
  inst.budget = opts.budget;
  return min_set_cover(inst);
}

CountResult n_conditional(const ShiftSpace& shift, const CylinderCover& cover,
                          const SubsetMask& S, const SlidingBlockCode& code,
                          const LatticeWindow& V, const CountingOptions& opts) {
  if (shift.dimension != 1)
    throw std::invalid_argument("n_conditional: d=1 only");
  code.validate();
  JoinStructure js = join_structure(shift, cover, S, opts.lang);
  if (!js.combined.empty() && !window_subset(js.combined, V))
    throw std::invalid_argument("n_conditional: V must contain the combined window S + W");

  LatticeWindow big = minkowski_sum(V, code.code_window());
  Language src = language(shift, big, opts.lang);

  // per source word: factor pattern on V and projection to the combined window
  std::vector<std::vector<int>> reads(V.size());
  for (std::size_t i = 0; i < V.size(); ++i)
    for (int j = 0; j < code.radius; ++j)
      reads[i].push_back(big.index_of({V.points[i].x + j, 0}));
  std::vector<int> proj(js.combined.size());
  for (std::size_t i = 0; i < js.combined.size(); ++i)
    proj[i] = big.index_of(js.combined.points[i]);

  std::map<Word, std::set<std::uint32_t>> fibers;  // y -> universe indices
  std::vector<int> block(code.radius), ysyms(V.size()), sub(js.combined.size());
  for (Word w : src.words) {
    std::vector<int> syms = decode_word(w, big.size(), src.alphabet);
    for (std::size_t i = 0; i < V.size(); ++i) {
      for (int j = 0; j < code.radius; ++j) block[j] = syms[reads[i][j]];
      ysyms[i] = code.apply(block);
    }
    for (std::size_t i = 0; i < js.combined.size(); ++i) sub[i] = syms[proj[i]];
    std::size_t ui = js.universe.index_of(encode_word(sub, src.alphabet));
    if (ui == Language::npos)
      throw std::logic_error("n_conditional: projection outside the join universe");
    fibers[encode_word(ysyms, code.target_alphabet)].insert(static_cast<std::uint32_t>(ui));
  }

  std::size_t m = js.subset_pts.size();
  CountResult best{0, true, 0};
  if (cover.is_partition) {
    // count distinct cells per fiber
    std::vector<std::vector<int>> cell(js.universe.size(), std::vector<int>(m));
    for (std::size_t a = 0; a < js.universe.size(); ++a)
      for (std::size_t g = 0; g < m; ++g) cell[a][g] = js.choices[a][g].front();
    for (auto& [y, atoms] : fibers) {
      std::set<std::vector<int>> cells;
      for (std::uint32_t a : atoms) cells.insert(cell[a]);
      std::uint64_t c = m == 0 ? 1 : cells.size();
      best.value = std::max(best.value, c);
    }
    return best;
  }

  JoinUniverse ju = join_materialize(shift, cover, S, opts.lang);
  for (auto& [y, atoms] : fibers) {
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    for (std::uint32_t a : atoms)
      local.emplace(a, static_cast<std::uint32_t>(local.size()));
    SetCoverInstance inst;
    inst.universe = local.size();
    inst.budget = opts.budget;
    for (auto& set : ju.covered_sets) {
      std::vector<std::uint32_t> reduced;
      for (std::uint32_t a : set) {
        auto it = local.find(a);
        if (it != local.end()) reduced.push_back(it->second);
      }
      if (!reduced.empty()) {
        std::sort(reduced.begin(), reduced.end());
        inst.sets.push_back(std::move(reduced));
      }
    }
    if (opts.prune_dominated) inst.sets = prune_dominated(std::move(inst.sets));
    CountResult r = min_set_cover(inst);
    best.nodes += r.nodes;
    best.certified = best.certified && r.certified;
    best.value = std::max(best.value, r.value);
  }
  return best;
}

TruncationSeries h_cover_series(const ShiftSpace& shift, const CylinderCover& cover,
                                int n_min, int n_max,
                                const std::optional<SlidingBlockCode>& code,
                                const CountingOptions& opts) {
  TruncationSeries ts;
  ts.quantity = code ? "h_cover_cond" : "h_cover";
  ts.coeffs = "";
  for (int n = n_min; n <= n_max; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    LatticeWindow fn = folner_window(n, shift.dimension);
    double norm = static_cast<double>(fn.size());
    SeriesRecord rec;
    rec.n = n;
    try {
      if (!code && is_symbol_partition(shift, cover) && shift.dimension == 1) {
        rec.value = log_big(count_words(shift, fn)) / norm;
        rec.certified = true;
      } else {
        SubsetMask full{&fn, fn.size() >= 64 ? ~0ull : ((1ull << fn.size()) - 1ull)};
        CountResult r = code ? n_conditional(shift, cover, full, *code, fn, opts)
                             : n_join(shift, cover, full, opts);
        rec.value = std::log(static_cast<double>(r.value)) / norm;
        rec.certified = r.certified;
        if (code) rec.v = n;
      }
    } catch (const std::exception& e) {
      ts.error = std::string("n=") + std::to_string(n) + ": " + e.what();
      break;
    }
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ts.records.push_back(rec);
  }
  return ts;
}

}  // namespace intricacy
