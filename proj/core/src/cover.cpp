#include "intricacy/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace intricacy {

CylinderCover symbol_partition(const ShiftSpace& shift) {
  CylinderCover c;
  c.name = "symbols";
  c.base = folner_window(1, shift.dimension);
  c.elements.resize(shift.alphabet);
  for (int s = 0; s < shift.alphabet; ++s) c.elements[s] = {static_cast<Word>(s)};
  c.is_partition = true;
  return c;
}

CoverValidation validate_cover(const ShiftSpace& shift, const CylinderCover& cover,
                               const LanguageLimits& limits) {
  CoverValidation report;
  if (cover.elements.empty()) {
    report.message = "cover has no elements";
    return report;
  }
  for (auto& e : cover.elements)
    if (e.empty()) {
      report.message = "cover has an empty element";
      return report;
    }
  Language lang = language(shift, cover.base, limits);
  std::vector<int> membership_count(lang.size(), 0);
  for (auto& e : cover.elements) {
    for (Word w : e) {
      std::size_t idx = lang.index_of(w);
      if (idx == Language::npos) continue;  // patterns outside the language are inert
      ++membership_count[idx];
    }
  }
  for (std::size_t i = 0; i < lang.size(); ++i) {
    if (membership_count[i] == 0) {
      report.uncovered = lang.words[i];
      report.message = "pattern not covered by any element";
      return report;
    }
  }
  report.valid = true;
  report.partition = true;
  for (int c : membership_count)
    if (c != 1) report.partition = false;
  return report;
}

JoinStructure join_structure(const ShiftSpace& shift, const CylinderCover& cover,
                             const SubsetMask& S, const LanguageLimits& limits) {
  JoinStructure js;
  LatticeWindow spts = subset_points(S);
  js.subset_pts = spts.points;
  js.combined = spts.empty()
                    ? LatticeWindow{cover.base.dimension, {}}
                    : minkowski_sum(spts, cover.base);
  js.universe = language(shift, js.combined, limits);

  // pattern on W -> element ids containing it
  std::unordered_map<Word, std::vector<int>> member;
  for (std::size_t e = 0; e < cover.elements.size(); ++e)
    for (Word w : cover.elements[e]) member[w].push_back(static_cast<int>(e));

  std::size_t m = js.subset_pts.size();
  std::size_t wsize = cover.base.size();
  // index map: (subset position, base position) -> combined index
  std::vector<std::vector<int>> at(m, std::vector<int>(wsize));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t j = 0; j < wsize; ++j) {
      int idx = js.combined.index_of(js.subset_pts[g] + cover.base.points[j]);
      if (idx < 0) throw std::logic_error("join_structure: combined window misses a translate");
      at[g][j] = idx;
    }

  js.base_universe = language(shift, cover.base, limits);
  js.choices.resize(js.universe.size());
  js.restriction.resize(js.universe.size());
  std::vector<int> syms, sub(wsize);
  for (std::size_t a = 0; a < js.universe.size(); ++a) {
    syms = decode_word(js.universe.words[a], js.combined.size(), js.universe.alphabet);
    js.choices[a].resize(m);
    js.restriction[a].resize(m);
    for (std::size_t g = 0; g < m; ++g) {
      for (std::size_t j = 0; j < wsize; ++j) sub[j] = syms[at[g][j]];
      Word rw = encode_word(sub, js.universe.alphabet);
      auto it = member.find(rw);
      if (it == member.end())
        throw std::runtime_error("join_structure: restriction not covered; validate the cover");
      js.choices[a][g] = it->second;
      std::size_t ri = js.base_universe.index_of(rw);
      js.restriction[a][g] = ri == Language::npos ? -1 : static_cast<int>(ri);
    }
  }
  return js;
}

JoinUniverse join_materialize(const ShiftSpace& shift, const CylinderCover& cover,
                              const SubsetMask& S, const LanguageLimits& limits,
                              std::size_t max_tuple_expansions) {
  JoinStructure js = join_structure(shift, cover, S, limits);
  JoinUniverse ju;
  ju.combined = js.combined;
  ju.universe = std::move(js.universe);
  ju.is_partition = cover.is_partition;

  std::size_t m = js.subset_pts.size();
  std::map<std::vector<int>, std::vector<std::uint32_t>> sets;
  std::vector<int> tuple(m);
  std::size_t expansions = 0;
  for (std::size_t a = 0; a < ju.universe.size(); ++a) {
    const auto& ch = js.choices[a];
    // enumerate the product of element choices across subset points
    std::vector<std::size_t> pos(m, 0);
    while (true) {
      for (std::size_t g = 0; g < m; ++g) tuple[g] = ch[g][pos[g]];
      sets[tuple].push_back(static_cast<std::uint32_t>(a));
      if (++expansions > max_tuple_expansions)
        throw std::runtime_error("join_materialize: tuple expansion budget exceeded");
      std::size_t g = 0;
      while (g < m && ++pos[g] == ch[g].size()) pos[g++] = 0;
      if (g == m) break;
      if (m == 0) break;
    }
    if (m == 0) {
      // S = empty: the single empty tuple covers the whole universe; the
      // loop above already inserted atom a once
    }
  }
  for (auto& [t, atoms] : sets) {
    ju.set_tuples.push_back(t);
    ju.covered_sets.push_back(std::move(atoms));
  }
  return ju;
}

CylinderCover lift_cover(const ShiftSpace& shift, const CylinderCover& cover,
                         const LatticeWindow& enlarged, const LanguageLimits& limits) {
  if (!window_subset(cover.base, enlarged))
    throw std::invalid_argument("lift_cover: enlarged window must contain the base");
  Language lang = language(shift, enlarged, limits);
  std::vector<int> proj;
  for (Point p : cover.base.points) proj.push_back(enlarged.index_of(p));
  CylinderCover out;
  out.name = cover.name + "@" + std::to_string(enlarged.size());
  out.base = enlarged;
  out.elements.resize(cover.elements.size());
  std::vector<int> sub(proj.size());
  for (Word w : lang.words) {
    std::vector<int> syms = decode_word(w, enlarged.size(), shift.alphabet);
    for (std::size_t i = 0; i < proj.size(); ++i) sub[i] = syms[proj[i]];
    Word rw = encode_word(sub, shift.alphabet);
    for (std::size_t e = 0; e < cover.elements.size(); ++e)
      if (std::binary_search(cover.elements[e].begin(), cover.elements[e].end(), rw))
        out.elements[e].push_back(w);
  }
  out.is_partition = cover.is_partition;
  return out;
}

bool refines(const CylinderCover& a, const CylinderCover& b, int alphabet) {
  if (b.base == a.base) {
    for (auto& ea : a.elements) {
      bool contained = false;
      for (auto& eb : b.elements)
        if (std::includes(eb.begin(), eb.end(), ea.begin(), ea.end())) {
          contained = true;
          break;
        }
      if (!contained) return false;
    }
    return true;
  }
  if (!window_subset(b.base, a.base))
    throw std::invalid_argument("refines: incompatible base windows");
  // lift b by restriction: a pattern on a.base lies in lifted element eb
  // iff its projection to b.base lies in eb
  std::vector<int> proj;
  for (Point p : b.base.points) proj.push_back(a.base.index_of(p));
  auto project = [&](Word w) {
    std::vector<int> syms = decode_word(w, a.base.size(), alphabet);
    std::vector<int> sub(proj.size());
    for (std::size_t i = 0; i < proj.size(); ++i) sub[i] = syms[proj[i]];
    return encode_word(sub, alphabet);
  };
  for (auto& ea : a.elements) {
    bool contained = false;
    for (auto& eb : b.elements) {
      bool all = true;
      for (Word w : ea)
        if (!std::binary_search(eb.begin(), eb.end(), project(w))) {
          all = false;
          break;
        }
      if (all) {
        contained = true;
        break;
      }
    }
    if (!contained) return false;
  }
  return true;
}

std::uint64_t encode_tuple(std::span<const int> tuple, int base) {
  std::uint64_t code = 0;
  for (int t : tuple) code = code * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(t);
  return code;
}

AssignmentSpace assignment_space(const ShiftSpace& shift, const CylinderCover& cover,
                                 const LatticeWindow& window, const LanguageLimits& limits) {
  // subset S = window in base-window translate coordinates
  LatticeWindow win = window;
  SubsetMask full{&win, win.size() >= 64 ? ~0ull : ((1ull << win.size()) - 1ull)};
  JoinStructure js = join_structure(shift, cover, full, limits);
  AssignmentSpace as;
  as.atoms = std::move(js.universe);
  as.choices.resize(as.atoms.size());
  int base = static_cast<int>(cover.elements.size());
  std::size_t m = js.subset_pts.size();
  std::vector<int> tuple(m);
  for (std::size_t a = 0; a < as.atoms.size(); ++a) {
    const auto& ch = js.choices[a];
    std::vector<std::size_t> pos(m, 0);
    double n_choices = 1.0;
    for (std::size_t g = 0; g < m; ++g) n_choices *= static_cast<double>(ch[g].size());
    if (n_choices > (1u << 22))
      throw std::runtime_error("assignment_space: atom choice product too large");
    while (true) {
      for (std::size_t g = 0; g < m; ++g) tuple[g] = ch[g][pos[g]];
      as.choices[a].push_back(encode_tuple(tuple, base));
      std::size_t g = 0;
      while (g < m && ++pos[g] == ch[g].size()) pos[g++] = 0;
      if (g == m || m == 0) break;
    }
    std::sort(as.choices[a].begin(), as.choices[a].end());
    as.log2_size += std::log2(static_cast<double>(as.choices[a].size()));
  }
  return as;
}

}  // namespace intricacy
