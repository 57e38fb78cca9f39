#include "pic/weak_privacy.hpp"

namespace pic {

std::optional<std::pair<int, int>> subset_condition_violation(const SideInfoGraph& g) {
  for (int i = 1; i <= g.n(); ++i)
    for (int j = 1; j <= g.n(); ++j) {
      if (i == j || g.knows(j, i)) continue;  // need i ∉ s_j
      // s_i ⊆ a_j ?
      if ((g.s_mask(i) & ~g.a_mask(j)) == 0) return std::make_pair(i, j);
    }
  return std::nullopt;
}

std::optional<WeakInfeasibilityCertificate> necessary_condition_infeasible(
    const SideInfoGraph& g) {
  if (g.n() > 20)
    throw ModelError("necessary_condition_infeasible: graphs beyond 20 users unsupported");
  for (int i = 1; i <= g.n(); ++i) {
    const uint32_t ai = g.a_mask(i);
    const uint32_t others = ai & ~(1u << (i - 1));
    WeakInfeasibilityCertificate cert;
    cert.user = i;
    bool all_blocked = true;
    // every S ⊆ a_i with i ∈ S must have some (j, k): k ∈ S, k ∉ a_j, S\{k} ⊆ a_j
    for (uint32_t sub = others;; sub = (sub - 1) & others) {
      const uint32_t s_set = sub | (1u << (i - 1));
      bool found = false;
      for (int j = 1; j <= g.n() && !found; ++j) {
        if (j == i) continue;
        const uint32_t aj = g.a_mask(j);
        for (int k = 1; k <= g.n() && !found; ++k) {
          if (!((s_set >> (k - 1)) & 1u)) continue;     // k ∈ S
          if ((aj >> (k - 1)) & 1u) continue;           // k ∉ a_j
          if ((s_set & ~(1u << (k - 1))) & ~aj) continue;  // S \ {k} ⊆ a_j
          cert.per_subset[s_set] = {j, k};
          found = true;
        }
      }
      if (!found) {
        all_blocked = false;
        break;
      }
      if (sub == 0) break;
    }
    if (all_blocked) return cert;
  }
  return std::nullopt;
}

}  // namespace pic
