#pragma once

#include <optional>
#include <utility>

#include "pic/model.hpp"

namespace pic {

struct FeasibilityResult {
  bool feasible = false;
  /// Lexicographically smallest uncovered pair (i, j) with i ∉ a_j.
  std::optional<std::pair<int, int>> witness;
};

/// A structure is feasible iff every ordered pair (i, j) with i ∉ a_j has a
/// pattern b with b_i = 1 and b_j = 0.
FeasibilityResult is_feasible(const SideInfoGraph& g, const KeyAccessStructure& ks);

/// One-time-pad construction: q = 2, n = 1, r = N; transmission i carries
/// x_i plus coordinate i of every key whose pattern includes user i. Each
/// key block has width N. Throws ModelError with the witness pair when the
/// structure is infeasible.
LinearScheme canonical_scheme(const SideInfoGraph& g, const KeyAccessStructure& ks);

}  // namespace pic
