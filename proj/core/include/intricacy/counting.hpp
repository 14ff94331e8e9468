// counting.hpp -- minimal subcover counts N(U_S), conditional N(U_S|Y) and
// the cover entropy-rate series.

#pragma once

#include <optional>

#include "intricacy/code.hpp"
#include "intricacy/cover.hpp"
#include "intricacy/series.hpp"
#include "intricacy/set_cover.hpp"

namespace intricacy {

struct CountingOptions {
  long budget = 1'000'000;
  LanguageLimits lang;
  bool prune_dominated = true;
};

// N(U_S). Partition covers bypass the solver (count of nonempty join cells);
// the symbol partition additionally uses transfer-matrix word counting.
CountResult n_join(const ShiftSpace& shift, const CylinderCover& cover,
                   const SubsetMask& S, const CountingOptions& opts = {});

// Windowed N(U_S|Y): max over factor patterns y on V of the minimal subcover
// of the fiber over y. Non-increasing as V grows. d=1 only, V must contain
// the combined window S + W.
CountResult n_conditional(const ShiftSpace& shift, const CylinderCover& cover,
                          const SubsetMask& S, const SlidingBlockCode& code,
                          const LatticeWindow& V, const CountingOptions& opts = {});

// (1/|F_n|) ln N(U_{F_n}[|Y]) for n in [n_min, n_max].
TruncationSeries h_cover_series(const ShiftSpace& shift, const CylinderCover& cover,
                                int n_min, int n_max,
                                const std::optional<SlidingBlockCode>& code = {},
                                const CountingOptions& opts = {});

// true when the cover is the one-point-window partition into single symbols
bool is_symbol_partition(const ShiftSpace& shift, const CylinderCover& cover);

}  // namespace intricacy
