#include "pic/feasibility.hpp"

namespace pic {

FeasibilityResult is_feasible(const SideInfoGraph& g, const KeyAccessStructure& ks) {
  if (ks.n() != 0 && ks.n() != g.n())
    throw ModelError("is_feasible: pattern length does not match graph");
  for (int i = 1; i <= g.n(); ++i) {
    for (int j = 1; j <= g.n(); ++j) {
      if ((g.a_mask(j) >> (i - 1)) & 1u) continue;  // i ∈ a_j
      bool covered = false;
      for (const auto& p : ks.patterns())
        if (p.has_user(i) && !p.has_user(j)) {
          covered = true;
          break;
        }
      if (!covered) return {false, std::make_pair(i, j)};
    }
  }
  return {true, std::nullopt};
}

LinearScheme canonical_scheme(const SideInfoGraph& g, const KeyAccessStructure& ks) {
  const auto feas = is_feasible(g, ks);
  if (!feas.feasible)
    throw ModelError("canonical_scheme: structure infeasible, witness pair (" +
                     std::to_string(feas.witness->first) + "," +
                     std::to_string(feas.witness->second) + ")");
  const int n_users = g.n();
  LinearScheme s;
  s.q = 2;
  s.n = 1;
  s.r = n_users;
  for (int i = 1; i <= n_users; ++i) {
    GFMatrix gi(2, n_users, 1);
    gi.set(i - 1, 0, 1);
    s.G.push_back(std::move(gi));
  }
  for (const auto& p : ks.patterns()) {
    GFMatrix h(2, n_users, n_users);
    for (int i = 1; i <= n_users; ++i)
      if (p.has_user(i)) h.set(i - 1, i - 1, 1);  // coordinate i pads transmission i
    s.keys.push_back({p, std::move(h)});
  }
  s.validate();
  return s;
}

}  // namespace pic
