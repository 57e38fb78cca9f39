#include <functional>
#include <random>

#include "doctest.h"
#include "pic/catalogue.hpp"
#include "pic/coloring.hpp"
#include "pic/oracle.hpp"
#include "pic/verifier.hpp"

using namespace pic;

namespace {

SideInfoGraph complete_graph(int n) {
  std::vector<std::vector<int>> sets(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (j != i) sets[i - 1].push_back(j);
  return SideInfoGraph(n, sets);
}

UndirectedGraph clique(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  return UndirectedGraph(n, edges);
}

UndirectedGraph c5() {
  return UndirectedGraph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}});
}

/// Independent re-check of "no secure clique cover": enumerate every
/// partition of [N] into mutual cliques recursively.
bool exists_secure_cover_bruteforce(const SideInfoGraph& g) {
  std::vector<std::vector<int>> blocks;
  std::function<bool(uint32_t)> rec = [&](uint32_t assigned) -> bool {
    if (assigned == (1u << g.n()) - 1u) {
      return secure_cover_valid(g, SecureCliqueCover{blocks});
    }
    int v = 1;
    while ((assigned >> (v - 1)) & 1u) ++v;
    std::vector<int> cands;
    for (int u = v + 1; u <= g.n(); ++u)
      if (!((assigned >> (u - 1)) & 1u)) cands.push_back(u);
    const int m = static_cast<int>(cands.size());
    for (uint32_t pick = 0; pick < (1u << m); ++pick) {
      std::vector<int> block{v};
      uint32_t mask = 1u << (v - 1);
      bool ok = true;
      for (int k = 0; k < m; ++k)
        if ((pick >> k) & 1u) {
          for (int u : block) ok = ok && g.knows(u, cands[k]) && g.knows(cands[k], u);
          block.push_back(cands[k]);
          mask |= 1u << (cands[k] - 1);
        }
      if (!ok) continue;
      blocks.push_back(block);
      if (rec(assigned | mask)) return true;
      blocks.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("conflict graphs") {
  const UndirectedGraph cf = conflict_graph(cycle5_graph());
  CHECK(cf.edges() == std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}});

  const UndirectedGraph k3 = conflict_graph(SideInfoGraph(3, {{2}, {3}, {1}}));
  CHECK(k3.edges().size() == 3);

  const UndirectedGraph none = conflict_graph(complete_graph(4));
  CHECK(none.edges().empty());
}

TEST_CASE("fractional chromatic numbers") {
  CHECK(fractional_chromatic(c5()).value == Rat(5, 2));
  CHECK(fractional_chromatic(conflict_graph(circulant5_graph())).value == 5);
  for (int n : {1, 2, 3, 4, 5}) CHECK(fractional_chromatic(clique(n)).value == n);
  CHECK(fractional_chromatic(UndirectedGraph(4, {})).value == 1);
}

TEST_CASE("b-fold chromatic numbers") {
  CHECK(b_fold_chromatic(c5(), 1).palette == 3);
  CHECK(b_fold_chromatic(c5(), 2).palette == 5);
  for (int n : {2, 3, 4})
    for (int b : {1, 2, 3}) CHECK(b_fold_chromatic(clique(n), b).palette == b * n);

  // the returned colorings are valid, chi_f <= chi_b / b, and subadditivity
  const auto one = b_fold_chromatic(c5(), 1);
  const auto two = b_fold_chromatic(c5(), 2);
  const auto three = b_fold_chromatic(c5(), 3);
  CHECK(coloring_valid(c5(), one.coloring));
  CHECK(coloring_valid(c5(), two.coloring));
  CHECK(fractional_chromatic(c5()).value <= Rat(one.palette, 1));
  CHECK(fractional_chromatic(c5()).value <= Rat(two.palette, 2));
  CHECK(three.palette <= one.palette + two.palette);
}

TEST_CASE("minimum multicast sessions") {
  const MulticastPlan five = multicast_min_sessions(cycle5_graph());
  CHECK(five.kappa == Rat(5, 2));
  CHECK(five.fold == 2);
  CHECK(five.palette == 5);

  const MulticastPlan cyc = multicast_min_sessions(SideInfoGraph(3, {{2}, {3}, {1}}));
  CHECK(cyc.kappa == 3);
  CHECK(cyc.fold == 1);
  CHECK(cyc.palette == 3);

  for (int n = 1; n <= 6; ++n) {
    const MulticastPlan kn = multicast_min_sessions(complete_graph(std::max(n, 1)));
    CHECK(kn.kappa == 1);
    CHECK(kn.fold == 1);
    CHECK(kn.palette == 1);
  }
}

TEST_CASE("multicast schemes from colorings") {
  const MulticastPlan plan = multicast_min_sessions(cycle5_graph());
  const MulticastScheme ms = multicast_scheme_from_coloring(cycle5_graph(), plan.coloring);
  CHECK(ms.sessions.size() == 5);
  CHECK(oracle_check_multicast(ms, cycle5_graph()).clean());

  const MulticastPlan kn = multicast_min_sessions(complete_graph(4));
  const MulticastScheme single = multicast_scheme_from_coloring(complete_graph(4), kn.coloring);
  REQUIRE(single.sessions.size() == 1);
  CHECK(single.sessions[0].recipients == std::vector<int>{1, 2, 3, 4});

  FoldColoring bad;
  bad.fold = 1;
  bad.palette = 1;
  bad.assignment = {{1}, {1}, {1}, {1}, {1}};  // conflict-adjacent share a color
  CHECK_THROWS_AS(multicast_scheme_from_coloring(cycle5_graph(), bad), ModelError);
}

TEST_CASE("secure clique covers") {
  const auto cover = secure_clique_cover(secure_cover_demo_graph());
  REQUIRE(cover.has_value());
  CHECK(cover->blocks == std::vector<std::vector<int>>{{1, 2, 4}, {3, 5}});
  CHECK(secure_cover_valid(secure_cover_demo_graph(), *cover));

  CHECK_FALSE(secure_clique_cover(no_cover_demo_graph()).has_value());

  const auto kn = secure_clique_cover(complete_graph(4));
  REQUIRE(kn.has_value());
  CHECK(kn->blocks == std::vector<std::vector<int>>{{1, 2, 3, 4}});
}

TEST_CASE("secure cover search matches brute force") {
  std::mt19937_64 rng(73);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = 2 + int(rng() % 4);
    std::vector<std::vector<int>> sets(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (j != i && rng() % 2) sets[i - 1].push_back(j);
    const SideInfoGraph g(n, sets);
    const auto found = secure_clique_cover(g);
    CHECK(found.has_value() == exists_secure_cover_bruteforce(g));
    if (found) CHECK(secure_cover_valid(g, *found));
  }
}

TEST_CASE("schemes from secure covers") {
  const auto cover = secure_clique_cover(secure_cover_demo_graph());
  REQUIRE(cover.has_value());
  const LinearScheme s = scheme_from_secure_cover(secure_cover_demo_graph(), *cover);
  CHECK(s.r == 2);
  CHECK(verify_weak_private(s, secure_cover_demo_graph()).ok());
  CHECK(oracle_check_weak(s, secure_cover_demo_graph()).clean());

  const auto kn_cover = secure_clique_cover(complete_graph(3));
  const LinearScheme sum = scheme_from_secure_cover(complete_graph(3), *kn_cover);
  CHECK(sum.r == 1);
  CHECK(verify_weak_private(sum, complete_graph(3)).ok());

  SecureCliqueCover insecure{{{1}, {2}, {3}, {4}, {5}}};
  CHECK_THROWS_AS(scheme_from_secure_cover(secure_cover_demo_graph(), insecure), ModelError);
}
