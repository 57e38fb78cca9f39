#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pic/model.hpp"
#include "pic/oracle.hpp"

namespace pic {

/// Simple undirected graph on vertices 1..n, no self-loops.
class UndirectedGraph {
 public:
  UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }
  bool adjacent(int u, int v) const { return (adj_[u - 1] >> (v - 1)) & 1u; }
  uint32_t neighbors(int v) const { return adj_[v - 1]; }
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_;
  std::vector<uint32_t> adj_;
};

/// Conflict graph of a side-information graph: edge {i,j} unless i and j
/// mutually hold each other's message. Its independent sets are exactly the
/// mutual cliques of the directed graph.
UndirectedGraph conflict_graph(const SideInfoGraph& g);

/// All maximal independent sets, as bitmasks in deterministic order.
std::vector<uint32_t> maximal_independent_sets(const UndirectedGraph& g);

struct FractionalChromatic {
  Rat value;
  std::map<uint32_t, Rat> weights;  // independent set mask -> weight
};

/// Exact LP optimum of the fractional covering formulation over maximal
/// independent sets.
FractionalChromatic fractional_chromatic(const UndirectedGraph& g);

/// b-fold coloring: every vertex gets exactly `fold` colors from [palette],
/// adjacent vertices get disjoint sets.
struct FoldColoring {
  int fold = 1;
  int palette = 0;
  std::vector<std::vector<int>> assignment;  // per vertex, sorted color lists
};

bool coloring_valid(const UndirectedGraph& g, const FoldColoring& c);

struct BFoldResult {
  int palette = 0;
  FoldColoring coloring;
};

/// Minimal palette size admitting a b-fold coloring (exact backtracking).
BFoldResult b_fold_chromatic(const UndirectedGraph& g, int fold);

struct MulticastPlan {
  Rat kappa;               // = fractional chromatic of the conflict graph
  int fold = 1;            // realizing block length b
  int palette = 0;         // palette size L with L/b = kappa
  FoldColoring coloring;   // witness coloring of the conflict graph
};

MulticastPlan multicast_min_sessions(const SideInfoGraph& g);

/// One session per used color; the session for color k goes to the vertices
/// holding k and carries the GF(2) sum of their designated coordinates.
MulticastScheme multicast_scheme_from_coloring(const SideInfoGraph& g,
                                               const FoldColoring& coloring);

struct SecureCliqueCover {
  std::vector<std::vector<int>> blocks;  // partition of [N] into mutual cliques
};

/// True iff blocks partition [N] into mutual cliques of g and no outside
/// vertex has exactly |c|-1 outgoing edges into a block c.
bool secure_cover_valid(const SideInfoGraph& g, const SecureCliqueCover& cover);

/// Exhaustive backtracking over partitions into mutual cliques; returns the
/// lexicographically smallest secure cover (block-sorted order) or nullopt.
std::optional<SecureCliqueCover> secure_clique_cover(const SideInfoGraph& g);

/// Keyless scheme transmitting the sum of each block (q = 2, n = 1). Throws
/// ModelError when the cover is invalid or insecure.
LinearScheme scheme_from_secure_cover(const SideInfoGraph& g,
                                      const SecureCliqueCover& cover);

}  // namespace pic
