// cover.hpp -- finite covers/partitions of the shift space by unions of
// cylinders on a base window, their joins U_S and assignment spaces.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intricacy/shift.hpp"

namespace intricacy {

struct CylinderCover {
  std::string name;
  LatticeWindow base;  // W
  // per element, sorted encoded patterns on W
  std::vector<std::vector<Word>> elements;
  bool is_partition = false;  // maintained by validate_cover
};

// one element per symbol, base window {0}
CylinderCover symbol_partition(const ShiftSpace& shift);

struct CoverValidation {
  bool valid = false;
  bool partition = false;
  std::optional<Word> uncovered;  // counterexample pattern
  std::string message;
};

CoverValidation validate_cover(const ShiftSpace& shift, const CylinderCover& cover,
                               const LanguageLimits& limits = {});

// Per-atom membership structure of the join U_S over the combined window S+W.
struct JoinStructure {
  LatticeWindow combined;          // S + W
  Language universe;               // language(shift, S + W)
  std::vector<Point> subset_pts;   // points of S, canonical order
  // choices[atom][k] = ids of cover elements containing the restriction of
  // atom to subset_pts[k] + W
  std::vector<std::vector<std::vector<int>>> choices;
  Language base_universe;  // language(shift, W)
  // restriction[atom][k] = index into base_universe of that restriction
  std::vector<std::vector<int>> restriction;
};

JoinStructure join_structure(const ShiftSpace& shift, const CylinderCover& cover,
                             const SubsetMask& S, const LanguageLimits& limits = {});

// Covered sets of the join: one per nonempty element tuple (e_g)_{g in S}.
struct JoinUniverse {
  LatticeWindow combined;
  Language universe;
  bool is_partition = false;
  std::vector<std::vector<int>> set_tuples;                // element per subset point
  std::vector<std::vector<std::uint32_t>> covered_sets;    // atom indices
};

JoinUniverse join_materialize(const ShiftSpace& shift, const CylinderCover& cover,
                              const SubsetMask& S, const LanguageLimits& limits = {},
                              std::size_t max_tuple_expansions = std::size_t(1) << 26);

// Same cover re-expressed on an enlarged base window containing the original:
// each element becomes the set of enlarged-window patterns whose restriction
// to the original base lies in it. Partitions stay partitions.
CylinderCover lift_cover(const ShiftSpace& shift, const CylinderCover& cover,
                         const LatticeWindow& enlarged, const LanguageLimits& limits = {});

// true iff every element of a is contained in some element of b.
// b may live on a sub-window of a's base; it is lifted by restriction
// (the alphabet is needed to decode patterns for the lift).
bool refines(const CylinderCover& a, const CylinderCover& b, int alphabet = 2);

struct AssignmentSpace {
  Language atoms;
  // per atom, the ids (tuple codes in lexicographic order) of the covering
  // join tuples it may be assigned to
  std::vector<std::vector<std::uint64_t>> choices;
  double log2_size = 0.0;  // log2 of prod |choices|
};

// Assignment space of the join of `cover` over subset S = window (base
// window translates); window = W itself gives the plain cover assignment.
AssignmentSpace assignment_space(const ShiftSpace& shift, const CylinderCover& cover,
                                 const LatticeWindow& window,
                                 const LanguageLimits& limits = {});

// tuple <-> integer code, base |elements|
std::uint64_t encode_tuple(std::span<const int> tuple, int base);

}  // namespace intricacy
