#include "pic/bounds.hpp"

#include <algorithm>

#include "pic/coloring.hpp"
#include "pic/gf.hpp"

namespace pic {

MaisResult mais(const SideInfoGraph& g) {
  const int n = g.n();
  if (n > 24) throw ModelError("mais: graphs beyond 24 users are not supported");
  std::vector<uint32_t> adj(n);
  for (int i = 1; i <= n; ++i) adj[i - 1] = g.s_mask(i);
  auto acyclic = [&](uint32_t mask) {
    uint32_t rem = mask;
    bool changed = true;
    while (rem && changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!((rem >> v) & 1u)) continue;
        if ((adj[v] & rem) == 0) {  // no out-edge inside, cannot be on a cycle
          rem &= ~(1u << v);
          changed = true;
        }
      }
    }
    return rem == 0;
  };
  auto to_list = [&](uint32_t mask) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1u) out.push_back(v + 1);
    return out;
  };
  MaisResult best{0, {}};
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size < best.size) continue;
    if (!acyclic(mask)) continue;
    auto lst = to_list(mask);
    if (size > best.size || lst < best.witness) best = {size, std::move(lst)};
  }
  return best;
}

lp::Problem keyrate_lp_problem(const SideInfoGraph& g, bool include_triples) {
  const int n = g.n();
  if (n > 6) throw ModelError("keyrate_lp: graphs beyond 6 users are not supported");
  lp::Problem p;
  const auto patterns = all_key_patterns(n);
  for (const auto& pat : patterns) {
    const int v = p.add_var(pat.str());
    p.set_objective(v, 1);
  }
  auto pattern_index = [&](uint32_t mask) {
    for (size_t k = 0; k < patterns.size(); ++k)
      if (patterns[k].mask() == mask) return static_cast<int>(k);
    return -1;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if ((g.a_mask(j) >> (i - 1)) & 1u) continue;
      std::vector<lp::Term> terms;
      for (const auto& pat : patterns)
        if (pat.has_user(i) && !pat.has_user(j))
          terms.push_back({pattern_index(pat.mask()), 1});
      p.add_constraint(std::move(terms), lp::Rel::Ge, 1,
                       "pair(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  if (include_triples) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const bool ij = !((g.a_mask(j) >> (i - 1)) & 1u);
        const bool ji = !((g.a_mask(i) >> (j - 1)) & 1u);
        if (!ij && !ji) continue;
        for (int l = 1; l <= n; ++l) {
          if (l == i || l == j) continue;
          if (((g.a_mask(l) >> (i - 1)) & 1u) || ((g.a_mask(l) >> (j - 1)) & 1u)) continue;
          std::vector<lp::Term> terms;
          for (const auto& pat : patterns)
            if ((pat.has_user(i) || pat.has_user(j)) && !pat.has_user(l))
              terms.push_back({pattern_index(pat.mask()), 1});
          p.add_constraint(std::move(terms), lp::Rel::Ge, 2,
                           "triple(" + std::to_string(i) + "," + std::to_string(j) + "," +
                               std::to_string(l) + ")");
        }
      }
  }
  return p;
}

lp::Result keyrate_lp(const SideInfoGraph& g, bool include_triples) {
  return lp::solve(keyrate_lp_problem(g, include_triples));
}

SumKeyBracket sum_keyrate_bracket(const SideInfoGraph& g) {
  const Rat from_mais = Rat(mais(g).size - 1);
  const lp::Result kr = keyrate_lp(g, false);
  const Rat from_lp = kr.status == lp::Status::Optimal ? kr.value : Rat(0);
  const FractionalChromatic chi = fractional_chromatic(conflict_graph(g));
  SumKeyBracket out{from_lp, SumKeyLowerTag::KeyrateLp, chi.value};
  if (from_mais > from_lp) {
    out.lower = from_mais;
    out.lower_tag = SumKeyLowerTag::MaisMinusOne;
  }
  return out;
}

// ------------------------------------------------------------- polymatroid

namespace {

/// Ground set for the system: bits 0..N-1 are users, bits N.. are the key
/// support patterns; a variable id is exactly its ground-element mask.
struct PmSpace {
  int n_users = 0;
  std::vector<KeyPattern> support;
  int ground = 0;

  int var_count() const { return 1 << ground; }
  int key_bit(int idx) const { return n_users + idx; }
  /// Mask of the support patterns available to user i (b^(i) = 1).
  uint32_t supp_of_user(int user) const {
    uint32_t m = 0;
    for (size_t k = 0; k < support.size(); ++k)
      if (support[k].has_user(user)) m |= 1u << k;
    return m;
  }
  int id(uint32_t users, uint32_t keys) const {
    return static_cast<int>(users | (keys << n_users));
  }
};

PmSpace make_space(const PolymatroidInstance& inst) {
  PmSpace sp;
  sp.n_users = inst.graph.n();
  sp.support = inst.key_support;
  sp.ground = sp.n_users + static_cast<int>(sp.support.size());
  if (sp.ground > 16)
    throw ModelError("polymatroid_check: instance too large (2^" +
                     std::to_string(sp.ground) + " variables)");
  return sp;
}

std::vector<PmRow> base_rows(const PolymatroidInstance& inst, const PmSpace& sp) {
  std::vector<PmRow> rows;
  const int N = sp.n_users;
  const uint32_t all_users = (1u << N) - 1;
  const uint32_t all_keys = sp.support.empty() ? 0 : (1u << sp.support.size()) - 1;
  // f([N], support) = 0
  rows.push_back({{{sp.id(all_users, all_keys), 1}}, lp::Rel::Eq, 0});
  // f(empty, empty) <= R
  rows.push_back({{{sp.id(0, 0), 1}}, lp::Rel::Le, inst.tuple.transmission_rate});
  for (int i = 1; i <= N; ++i) {
    const uint32_t ki = sp.supp_of_user(i);
    const int f_s = sp.id(inst.graph.s_mask(i), ki);
    const int f_a = sp.id(inst.graph.a_mask(i), ki);
    const int f_n = sp.id(all_users, ki);
    rows.push_back({{{f_s, 1}, {f_a, -1}}, lp::Rel::Ge, 1});   // decode
    rows.push_back({{{f_a, 1}, {f_n, -1}}, lp::Rel::Eq, 0});   // privacy flatness
  }
  // key capacity: f([N], support \ T) <= sum of rates over T
  for (uint32_t t = 0; t <= all_keys; ++t) {
    Rat cap = 0;
    for (size_t k = 0; k < sp.support.size(); ++k)
      if ((t >> k) & 1u) cap += inst.tuple.key_rate(sp.support[k].mask());
    rows.push_back({{{sp.id(all_users, all_keys & ~t), 1}}, lp::Rel::Le, cap});
    if (sp.support.empty()) break;
  }
  return rows;
}

Rat eval_row_lhs(const PmRow& row, const std::vector<Rat>& f) {
  Rat lhs = 0;
  for (const auto& [v, c] : row.terms) lhs += Rat(c) * f[v];
  return lhs;
}

bool row_satisfied(const PmRow& row, const std::vector<Rat>& f) {
  const int cmp = sgn(eval_row_lhs(row, f) - row.rhs);
  switch (row.rel) {
    case lp::Rel::Le: return cmp <= 0;
    case lp::Rel::Ge: return cmp >= 0;
    default: return cmp == 0;
  }
}

}  // namespace

std::vector<PmRow> pm4_generation(const PolymatroidInstance& inst, PmMode mode) {
  const PmSpace sp = make_space(inst);
  const uint32_t full = (1u << sp.ground) - 1;
  std::vector<PmRow> rows;
  if (mode == PmMode::Elemental) {
    for (uint32_t base = 0; base <= full; ++base) {
      const uint32_t rest = full & ~base;
      // singleton monotonicity: f(base) >= f(base + e)
      for (int e = 0; e < sp.ground; ++e) {
        if (!((rest >> e) & 1u)) continue;
        rows.push_back({{{static_cast<int>(base), 1},
                         {static_cast<int>(base | (1u << e)), -1}},
                        lp::Rel::Ge,
                        0});
      }
      // pairwise-singleton submodularity
      for (int e1 = 0; e1 < sp.ground; ++e1) {
        if (!((rest >> e1) & 1u)) continue;
        for (int e2 = e1 + 1; e2 < sp.ground; ++e2) {
          if (!((rest >> e2) & 1u)) continue;
          rows.push_back({{{static_cast<int>(base), 1},
                           {static_cast<int>(base | (1u << e1) | (1u << e2)), 1},
                           {static_cast<int>(base | (1u << e1)), -1},
                           {static_cast<int>(base | (1u << e2)), -1}},
                          lp::Rel::Le,
                          0});
        }
      }
      if (base == full) break;
    }
  } else {
    // full disjoint-extension family: f(B) + f(B|P|D) <= f(B|P) + f(B|D)
    for (uint32_t base = 0; base <= full; ++base) {
      const uint32_t rest = full & ~base;
      for (uint32_t p = rest; p; p = (p - 1) & rest) {
        const uint32_t rest2 = rest & ~p;
        for (uint32_t d = rest2; d; d = (d - 1) & rest2) {
          if (d > p) continue;  // unordered pair {P, D}
          rows.push_back({{{static_cast<int>(base), 1},
                           {static_cast<int>(base | p | d), 1},
                           {static_cast<int>(base | p), -1},
                           {static_cast<int>(base | d), -1}},
                          lp::Rel::Le,
                          0});
        }
      }
      // singleton monotonicity still carries the pm3 side
      for (int e = 0; e < sp.ground; ++e) {
        if (!((rest >> e) & 1u)) continue;
        rows.push_back({{{static_cast<int>(base), 1},
                         {static_cast<int>(base | (1u << e)), -1}},
                        lp::Rel::Ge,
                        0});
      }
      if (base == full) break;
    }
  }
  return rows;
}

PolymatroidInstance PolymatroidInstance::make(SideInfoGraph g, RateTuple t,
                                              std::optional<std::vector<KeyPattern>> support,
                                              PmMode mode) {
  PolymatroidInstance inst{std::move(g), std::move(t), {}, mode};
  if (support) {
    inst.key_support = std::move(*support);
  } else if (inst.graph.n() <= 3) {
    inst.key_support = all_key_patterns(inst.graph.n());
  } else {
    for (const auto& [mask, rate] : inst.tuple.key_rates)
      if (sgn(rate) > 0) inst.key_support.emplace_back(inst.graph.n(), mask);
  }
  std::sort(inst.key_support.begin(), inst.key_support.end(),
            [](const KeyPattern& a, const KeyPattern& b) { return a.mask() < b.mask(); });
  for (size_t i = 0; i + 1 < inst.key_support.size(); ++i)
    if (inst.key_support[i].mask() == inst.key_support[i + 1].mask())
      throw ModelError("polymatroid: duplicate support pattern");
  for (const auto& [mask, rate] : inst.tuple.key_rates) {
    if (sgn(rate) == 0) continue;
    bool found = false;
    for (const auto& p : inst.key_support) found = found || p.mask() == mask;
    if (!found) throw ModelError("polymatroid: tuple has rate outside key support");
  }
  return inst;
}

PolymatroidVerdict polymatroid_check(const PolymatroidInstance& inst,
                                     const LinearScheme* hint) {
  const PmSpace sp = make_space(inst);
  std::vector<PmRow> base = base_rows(inst, sp);
  std::vector<PmRow> family = pm4_generation(inst, inst.mode);
  const size_t total_rows = base.size() + family.size();

  // A scheme achieving a dominated rate tuple yields a feasible point
  // directly: f(S,T) = rank of the generator columns outside (S,T), over n.
  if (hint && hint->n_users() == sp.n_users) {
    bool applicable = true;
    const RateTuple hr = [&] {
      RateTuple t;
      t.n_users = hint->n_users();
      t.transmission_rate = Rat(hint->r, hint->n);
      for (const auto& kb : hint->keys)
        if (kb.columns.cols() > 0) t.key_rates[kb.pattern.mask()] = Rat(kb.columns.cols(), hint->n);
      return t;
    }();
    if (hr.transmission_rate > inst.tuple.transmission_rate) applicable = false;
    for (const auto& [mask, rate] : hr.key_rates) {
      if (rate > inst.tuple.key_rate(mask)) applicable = false;
      bool in_supp = false;
      for (const auto& p : sp.support) in_supp = in_supp || p.mask() == mask;
      if (!in_supp) applicable = false;
    }
    if (applicable) {
      std::vector<Rat> f(sp.var_count());
      for (int id = 0; id < sp.var_count(); ++id) {
        const uint32_t users = static_cast<uint32_t>(id) & ((1u << sp.n_users) - 1);
        const uint32_t keys = static_cast<uint32_t>(id) >> sp.n_users;
        GFMatrix cols(hint->q, hint->r, 0);
        for (int u = 1; u <= sp.n_users; ++u)
          if (!((users >> (u - 1)) & 1u)) cols.append_columns(hint->G[u - 1]);
        for (const auto& kb : hint->keys) {
          bool excluded = false;
          for (size_t k = 0; k < sp.support.size(); ++k)
            if (((keys >> k) & 1u) && sp.support[k].mask() == kb.pattern.mask())
              excluded = true;
          if (!excluded) cols.append_columns(kb.columns);
        }
        f[id] = Rat(rank_of(cols), hint->n);
      }
      bool all_ok = true;
      for (const auto& row : base) all_ok = all_ok && row_satisfied(row, f);
      for (const auto& row : family)
        if (all_ok) all_ok = row_satisfied(row, f);
      if (all_ok) return {true, total_rows};
      // fall through to the LP when the hint does not certify
    }
  }

  // Row generation: solve with the structural rows, then admit violated
  // family rows in canonical order until none remain.
  std::vector<char> in_working(family.size(), 0);
  std::vector<size_t> working;  // indices into family
  for (;;) {
    lp::Problem p;
    for (int v = 0; v < sp.var_count(); ++v) p.add_var();
    auto add = [&](const PmRow& row) {
      std::vector<lp::Term> terms;
      for (const auto& [v, c] : row.terms) terms.push_back({v, Rat(c)});
      p.add_constraint(std::move(terms), row.rel, row.rhs);
    };
    for (const auto& row : base) add(row);
    for (size_t idx : working) add(family[idx]);
    const lp::Result res = lp::solve(p);
    if (res.status == lp::Status::Infeasible) return {false, base.size() + working.size()};
    if (res.status != lp::Status::Optimal)
      throw ModelError("polymatroid: unexpected LP status");
    size_t added = 0;
    for (size_t idx = 0; idx < family.size() && added < 256; ++idx) {
      if (in_working[idx] || row_satisfied(family[idx], res.point)) continue;
      in_working[idx] = 1;
      working.push_back(idx);
      ++added;
    }
    if (added == 0) return {true, total_rows};
  }
}

}  // namespace pic
