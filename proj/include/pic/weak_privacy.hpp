#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "pic/model.hpp"

namespace pic {

/// Pairwise necessary condition: a witness (i, j) with i ∉ s_j and
/// s_i ⊆ a_j means keyless per-message privacy is impossible. Returns the
/// lexicographically smallest witness, or nullopt.
std::optional<std::pair<int, int>> subset_condition_violation(const SideInfoGraph& g);

struct WeakInfeasibilityCertificate {
  int user = 0;  // the user i whose every covering subset is blocked
  /// For each S ⊆ a_i with i ∈ S (as bitmask), a pair (j, k) with k ∈ S,
  /// k ∉ a_j and S \ {k} ⊆ a_j.
  std::map<uint32_t, std::pair<int, int>> per_subset;
};

/// Strengthened necessary condition. "infeasible" (a certificate) means no
/// keyless scheme can be weakly private; nullopt is inconclusive — the
/// condition is one-sided.
std::optional<WeakInfeasibilityCertificate> necessary_condition_infeasible(
    const SideInfoGraph& g);

}  // namespace pic
