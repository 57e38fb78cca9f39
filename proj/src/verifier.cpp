#include "pic/verifier.hpp"

namespace pic {

namespace {

GFMatrix unknown_span(const LinearScheme& s, const SideInfoGraph& g, int user,
                      bool include_keys) {
  GFMatrix u(s.q, s.r, 0);
  for (int j = 1; j <= g.n(); ++j)
    if (!((g.a_mask(user) >> (j - 1)) & 1u)) u.append_columns(s.G[j - 1]);
  if (include_keys)
    for (const auto& kb : s.keys)
      if (!kb.pattern.has_user(user)) u.append_columns(kb.columns);
  return u;
}

}  // namespace

Verdict verify_private(const LinearScheme& s, const SideInfoGraph& g) {
  s.validate();
  if (s.n_users() != g.n()) throw ModelError("verify: scheme and graph disagree on N");
  for (int i = 1; i <= g.n(); ++i) {
    GFMatrix g_out(s.q, s.r, 0);
    for (int j = 1; j <= g.n(); ++j)
      if (!((g.a_mask(i) >> (j - 1)) & 1u)) g_out.append_columns(s.G[j - 1]);
    GFMatrix h_out(s.q, s.r, 0);
    for (const auto& kb : s.keys)
      if (!kb.pattern.has_user(i)) h_out.append_columns(kb.columns);
    if (!subspace_contained(g_out, h_out))
      return {Verdict::Status::PrivacyViolation, i, 0,
              "unknown messages of user " + std::to_string(i) +
                  " are not fully masked by keys it lacks"};
    GFMatrix acc = h_out;
    acc.append_columns(g_out);
    int base_rank = rank_of(acc);
    for (int k = 0; k < s.n; ++k) {
      acc.append_column(s.G[i - 1].column(k));
      const int grown = rank_of(acc);
      if (grown == base_rank)
        return {Verdict::Status::DecodeViolation, i, k + 1,
                "message column " + std::to_string(k + 1) + " of user " +
                    std::to_string(i) + " is not recoverable"};
      base_rank = grown;
    }
  }
  return {Verdict::Status::Ok, 0, 0, "ok"};
}

Verdict verify_weak_private(const LinearScheme& s, const SideInfoGraph& g) {
  s.validate();
  if (!s.keys.empty()) throw ModelError("verify_weak_private: scheme must be keyless");
  if (s.n_users() != g.n()) throw ModelError("verify: scheme and graph disagree on N");
  for (int i = 1; i <= g.n(); ++i) {
    for (int j = 1; j <= g.n(); ++j) {
      if ((g.a_mask(i) >> (j - 1)) & 1u) continue;
      GFMatrix others(s.q, s.r, 0);
      for (int l = 1; l <= g.n(); ++l)
        if (l != j && !((g.a_mask(i) >> (l - 1)) & 1u)) others.append_columns(s.G[l - 1]);
      if (!subspace_contained(s.G[j - 1], others))
        return {Verdict::Status::PrivacyViolation, i, 0,
                "user " + std::to_string(i) + " can isolate message " +
                    std::to_string(j)};
    }
    GFMatrix acc = unknown_span(s, g, i, /*include_keys=*/false);
    int base_rank = rank_of(acc);
    for (int k = 0; k < s.n; ++k) {
      acc.append_column(s.G[i - 1].column(k));
      const int grown = rank_of(acc);
      if (grown == base_rank)
        return {Verdict::Status::DecodeViolation, i, k + 1,
                "message column " + std::to_string(k + 1) + " of user " +
                    std::to_string(i) + " is not recoverable"};
      base_rank = grown;
    }
  }
  return {Verdict::Status::Ok, 0, 0, "ok"};
}

RateTuple scheme_rate(const LinearScheme& s) {
  RateTuple t;
  t.n_users = s.n_users();
  t.transmission_rate = Rat(s.r, s.n);
  for (const auto& kb : s.keys) {
    if (kb.columns.cols() == 0) continue;
    t.key_rates[kb.pattern.mask()] = Rat(kb.columns.cols(), s.n);
  }
  return t;
}

}  // namespace pic
