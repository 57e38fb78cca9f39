#include "pic/coloring.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>

#include "pic/lp.hpp"

namespace pic {

UndirectedGraph::UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges)
    : n_(n), adj_(n, 0) {
  if (n < 1 || n > 31) throw ModelError("undirected graph: bad vertex count");
  for (auto [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n) throw ModelError("undirected graph: bad edge");
    if (u == v) throw ModelError("undirected graph: self-loop");
    adj_[u - 1] |= 1u << (v - 1);
    adj_[v - 1] |= 1u << (u - 1);
  }
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 1; u <= n_; ++u)
    for (int v = u + 1; v <= n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

UndirectedGraph conflict_graph(const SideInfoGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= g.n(); ++i)
    for (int j = i + 1; j <= g.n(); ++j)
      if (!(g.knows(i, j) && g.knows(j, i))) edges.emplace_back(i, j);
  return UndirectedGraph(g.n(), edges);
}

std::vector<uint32_t> maximal_independent_sets(const UndirectedGraph& g) {
  const int n = g.n();
  if (n > 20) throw ModelError("independent sets: graphs beyond 20 vertices unsupported");
  // Bron-Kerbosch on the complement: cliques there are independent sets here.
  std::vector<uint32_t> comp(n);
  const uint32_t full = (n == 31) ? ~0u : ((1u << n) - 1);
  for (int v = 1; v <= n; ++v) comp[v - 1] = full & ~g.neighbors(v) & ~(1u << (v - 1));
  std::vector<uint32_t> out;
  auto expand = [&](auto&& self, uint32_t r, uint32_t p, uint32_t x) -> void {
    if (p == 0 && x == 0) {
      out.push_back(r);
      return;
    }
    uint32_t iter = p;
    while (iter) {
      const int v = __builtin_ctz(iter);
      iter &= iter - 1;
      self(self, r | (1u << v), p & comp[v], x & comp[v]);
      p &= ~(1u << v);
      x |= 1u << v;
    }
  };
  expand(expand, 0, full, 0);
  std::sort(out.begin(), out.end());
  return out;
}

FractionalChromatic fractional_chromatic(const UndirectedGraph& g) {
  const auto sets = maximal_independent_sets(g);
  lp::Problem p;
  for (size_t k = 0; k < sets.size(); ++k) {
    const int v = p.add_var("w" + std::to_string(k));
    p.set_objective(v, 1);
  }
  for (int v = 1; v <= g.n(); ++v) {
    std::vector<lp::Term> terms;
    for (size_t k = 0; k < sets.size(); ++k)
      if ((sets[k] >> (v - 1)) & 1u) terms.push_back({static_cast<int>(k), 1});
    p.add_constraint(std::move(terms), lp::Rel::Ge, 1, "cover v" + std::to_string(v));
  }
  const lp::Result res = lp::solve(p);
  if (res.status != lp::Status::Optimal)
    throw ModelError("fractional_chromatic: covering LP did not solve");
  FractionalChromatic out{res.value, {}};
  for (size_t k = 0; k < sets.size(); ++k)
    if (sgn(res.point[k]) > 0) out.weights[sets[k]] = res.point[k];
  return out;
}

bool coloring_valid(const UndirectedGraph& g, const FoldColoring& c) {
  if (static_cast<int>(c.assignment.size()) != g.n()) return false;
  for (int v = 1; v <= g.n(); ++v) {
    const auto& mine = c.assignment[v - 1];
    if (static_cast<int>(mine.size()) != c.fold) return false;
    for (size_t i = 0; i < mine.size(); ++i) {
      if (mine[i] < 1 || mine[i] > c.palette) return false;
      if (i > 0 && mine[i] <= mine[i - 1]) return false;
    }
  }
  for (int u = 1; u <= g.n(); ++u)
    for (int v = u + 1; v <= g.n(); ++v) {
      if (!g.adjacent(u, v)) continue;
      const auto& a = c.assignment[u - 1];
      const auto& b = c.assignment[v - 1];
      std::vector<int> inter;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(inter));
      if (!inter.empty()) return false;
    }
  return true;
}

namespace {

bool try_b_fold(const UndirectedGraph& g, int fold, int palette, FoldColoring& out) {
  const int n = g.n();
  if (palette >= 120) throw ModelError("b_fold_chromatic: palette too large");
  std::vector<std::vector<int>> chosen(n);
  int max_used = 0;

  auto rec = [&](auto&& self, int v) -> bool {
    if (v > n) return true;
    std::bitset<128> neighbor_used;
    for (int u = 1; u < v; ++u)
      if (g.adjacent(u, v))
        for (int c : chosen[u - 1]) neighbor_used.set(c);
    // choose `fold` colors; fresh colors only in increasing canonical order
    std::vector<int> pick;
    auto choose = [&](auto&& inner, int from, int fresh_floor) -> bool {
      if (static_cast<int>(pick.size()) == fold) {
        chosen[v - 1] = pick;
        const int prev_max = max_used;
        for (int c : pick) max_used = std::max(max_used, c);
        if (self(self, v + 1)) return true;
        max_used = prev_max;
        chosen[v - 1].clear();
        return false;
      }
      const int need = fold - static_cast<int>(pick.size());
      for (int c = from; c <= palette; ++c) {
        if (palette - c + 1 < need) break;
        if (neighbor_used.test(c)) continue;
        if (c > max_used && c != fresh_floor) continue;  // introduce new colors in order
        pick.push_back(c);
        const int next_fresh = (c > max_used) ? c + 1 : fresh_floor;
        if (inner(inner, c + 1, next_fresh)) return true;
        pick.pop_back();
      }
      return false;
    };
    return choose(choose, 1, max_used + 1);
  };
  if (!rec(rec, 1)) return false;
  out.fold = fold;
  out.palette = palette;
  out.assignment = chosen;
  return true;
}

}  // namespace

BFoldResult b_fold_chromatic(const UndirectedGraph& g, int fold) {
  if (fold < 1) throw ModelError("b_fold_chromatic: fold must be positive");
  if (g.n() > 12) throw ModelError("b_fold_chromatic: graphs beyond 12 vertices unsupported");
  if (fold > 6) throw ModelError("b_fold_chromatic: fold beyond 6 unsupported");
  const FractionalChromatic chi = fractional_chromatic(g);
  // L >= b * chi_f, rounded up
  const Rat bound = chi.value * fold;
  mpz_class lceil = bound.get_num() / bound.get_den();
  if (lceil * bound.get_den() < bound.get_num()) lceil += 1;
  int palette = std::max<int>(fold, static_cast<int>(lceil.get_si()));
  for (;; ++palette) {
    FoldColoring col;
    if (try_b_fold(g, fold, palette, col)) return {palette, std::move(col)};
  }
}

MulticastPlan multicast_min_sessions(const SideInfoGraph& g) {
  const UndirectedGraph cg = conflict_graph(g);
  const FractionalChromatic chi = fractional_chromatic(cg);
  // scale the optimal weights to integers: fold = lcm of denominators
  mpz_class fold_z = chi.value.get_den();
  for (const auto& [mask, w] : chi.weights) fold_z = lcm(fold_z, w.get_den());
  const int fold = static_cast<int>(fold_z.get_si());
  MulticastPlan plan{chi.value, fold, 0, {}};

  std::vector<uint32_t> color_set;  // color index -> independent set mask
  for (const auto& [mask, w] : chi.weights) {
    const Rat copies = w * fold;
    for (mpz_class c = 0; c < copies.get_num(); ++c) color_set.push_back(mask);
  }
  plan.palette = static_cast<int>(color_set.size());
  plan.coloring.fold = fold;
  plan.coloring.palette = plan.palette;
  plan.coloring.assignment.assign(g.n(), {});
  for (int v = 1; v <= g.n(); ++v) {
    auto& mine = plan.coloring.assignment[v - 1];
    for (int c = 0; c < plan.palette && static_cast<int>(mine.size()) < fold; ++c)
      if ((color_set[c] >> (v - 1)) & 1u) mine.push_back(c + 1);
    if (static_cast<int>(mine.size()) != fold)
      throw ModelError("multicast: covering weights failed to color a vertex");
  }
  return plan;
}

MulticastScheme multicast_scheme_from_coloring(const SideInfoGraph& g,
                                               const FoldColoring& coloring) {
  const UndirectedGraph cg = conflict_graph(g);
  if (!coloring_valid(cg, coloring))
    throw ModelError("multicast: coloring is not a valid fold coloring of the conflict graph");
  MulticastScheme ms;
  ms.q = 2;
  ms.n = coloring.fold;
  ms.n_users = g.n();
  for (int color = 1; color <= coloring.palette; ++color) {
    MulticastSession sess;
    for (int v = 1; v <= g.n(); ++v) {
      const auto& mine = coloring.assignment[v - 1];
      const auto it = std::find(mine.begin(), mine.end(), color);
      if (it == mine.end()) continue;
      sess.recipients.push_back(v);
      const int coord = static_cast<int>(it - mine.begin()) + 1;
      sess.terms.push_back({v, coord, 1});
    }
    if (!sess.recipients.empty()) ms.sessions.push_back(std::move(sess));
  }
  ms.validate();
  return ms;
}

bool secure_cover_valid(const SideInfoGraph& g, const SecureCliqueCover& cover) {
  uint32_t seen = 0;
  for (const auto& block : cover.blocks) {
    if (block.empty()) return false;
    for (int v : block) {
      if (v < 1 || v > g.n()) return false;
      if ((seen >> (v - 1)) & 1u) return false;
      seen |= 1u << (v - 1);
    }
    for (int u : block)
      for (int v : block)
        if (u != v && !g.knows(u, v)) return false;  // mutual clique
    for (int v = 1; v <= g.n(); ++v) {
      bool inside = std::find(block.begin(), block.end(), v) != block.end();
      if (inside) continue;
      int out_edges = 0;
      for (int u : block)
        if (g.knows(v, u)) ++out_edges;
      if (out_edges == static_cast<int>(block.size()) - 1) return false;
    }
  }
  return seen == (g.n() == 31 ? ~0u : (1u << g.n()) - 1u);
}

namespace {

bool cover_search(const SideInfoGraph& g, uint32_t assigned,
                  std::vector<std::vector<int>>& blocks) {
  if (assigned == (1u << g.n()) - 1u) return true;
  int v = 1;
  while ((assigned >> (v - 1)) & 1u) ++v;
  // candidates that could join v's block: mutual neighbors of v, unassigned
  std::vector<int> cands;
  for (int u = v + 1; u <= g.n(); ++u)
    if (!((assigned >> (u - 1)) & 1u) && g.knows(u, v) && g.knows(v, u))
      cands.push_back(u);

  std::vector<int> block{v};
  auto try_block = [&](auto&& self_block, size_t from) -> bool {
    // first try the current block as-is (lex order: shorter prefixes first)
    bool mutual = true;
    for (int a : block)
      for (int b : block)
        if (a != b && !g.knows(a, b)) mutual = false;
    if (mutual) {
      bool secure = true;
      for (int w = 1; w <= g.n() && secure; ++w) {
        if (std::find(block.begin(), block.end(), w) != block.end()) continue;
        int out_edges = 0;
        for (int u : block)
          if (g.knows(w, u)) ++out_edges;
        if (out_edges == static_cast<int>(block.size()) - 1) secure = false;
      }
      if (secure) {
        uint32_t mask = 0;
        for (int u : block) mask |= 1u << (u - 1);
        blocks.push_back(block);
        if (cover_search(g, assigned | mask, blocks)) return true;
        blocks.pop_back();
      }
    }
    for (size_t k = from; k < cands.size(); ++k) {
      block.push_back(cands[k]);
      if (self_block(self_block, k + 1)) return true;
      block.pop_back();
    }
    return false;
  };
  return try_block(try_block, 0);
}

}  // namespace

std::optional<SecureCliqueCover> secure_clique_cover(const SideInfoGraph& g) {
  if (g.n() > 12) throw ModelError("secure_clique_cover: graphs beyond 12 users unsupported");
  std::vector<std::vector<int>> blocks;
  if (!cover_search(g, 0, blocks)) return std::nullopt;
  return SecureCliqueCover{std::move(blocks)};
}

LinearScheme scheme_from_secure_cover(const SideInfoGraph& g,
                                      const SecureCliqueCover& cover) {
  if (!secure_cover_valid(g, cover))
    throw ModelError("scheme_from_secure_cover: cover is not a secure clique cover");
  LinearScheme s;
  s.q = 2;
  s.n = 1;
  s.r = static_cast<int>(cover.blocks.size());
  s.G.assign(g.n(), GFMatrix(2, s.r, 1));
  for (size_t b = 0; b < cover.blocks.size(); ++b)
    for (int v : cover.blocks[b]) s.G[v - 1].set(static_cast<int>(b), 0, 1);
  s.validate();
  return s;
}

}  // namespace pic
