#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pic/lp.hpp"
#include "pic/model.hpp"

namespace pic {

struct MaisResult {
  int size = 0;
  std::vector<int> witness;  // lexicographically smallest maximizer
};

/// Largest vertex set whose induced directed subgraph is acyclic
/// (bidirectional edges count as 2-cycles). Brute force over subsets.
MaisResult mais(const SideInfoGraph& g);

/// Minimize the total key rate subject to the pairwise covering constraints
/// (one per ordered pair (i, j) with i ∉ a_j) and, optionally, the triple
/// constraints for (i, j, l) with i ∉ a_j and i, j ∉ a_l.
lp::Result keyrate_lp(const SideInfoGraph& g, bool include_triples = false);

/// Builds the LP of keyrate_lp without solving (exposed for inspection).
lp::Problem keyrate_lp_problem(const SideInfoGraph& g, bool include_triples);

enum class SumKeyLowerTag { MaisMinusOne, KeyrateLp };

struct SumKeyBracket {
  Rat lower;
  SumKeyLowerTag lower_tag;
  Rat upper;
};

SumKeyBracket sum_keyrate_bracket(const SideInfoGraph& g);

enum class PmMode { Elemental, Exhaustive };

/// Instance of the information-theoretic outer-bound feasibility system.
struct PolymatroidInstance {
  SideInfoGraph graph;
  RateTuple tuple;
  /// Patterns the set variable T ranges over; defaults to the positive-rate
  /// patterns, widened to all patterns when N <= 3.
  std::vector<KeyPattern> key_support;
  PmMode mode = PmMode::Elemental;

  static PolymatroidInstance make(SideInfoGraph g, RateTuple t,
                                  std::optional<std::vector<KeyPattern>> support = std::nullopt,
                                  PmMode mode = PmMode::Elemental);
};

struct PolymatroidVerdict {
  bool passes = false;
  /// Number of LP rows materialized (diagnostic only).
  size_t rows_considered = 0;
};

/// Decides feasibility of the outer-bound system for the instance's rate
/// tuple. "passes" means the system is feasible; otherwise the rate tuple is
/// certifiably not achievable. An optional scheme whose rate tuple is
/// dominated by the instance's provides a feasible candidate directly (its
/// span function), which is then verified against every generated row.
PolymatroidVerdict polymatroid_check(const PolymatroidInstance& inst,
                                     const LinearScheme* hint = nullptr);

/// One linear row of the feasibility system over variables f(S, T), indexed
/// by S | (T << N) where T is a bitmask over the instance's key support.
struct PmRow {
  std::vector<std::pair<int, int>> terms;  // (variable id, +-1 coefficient)
  lp::Rel rel;
  Rat rhs;
};

/// The monotonicity/submodularity family in the requested mode, canonical
/// deterministic order. Elemental: singleton-increment monotonicity plus
/// pairwise-singleton submodularity. Exhaustive: the full disjoint-extension
/// submodularity family (plus singleton monotonicity).
std::vector<PmRow> pm4_generation(const PolymatroidInstance& inst, PmMode mode);

}  // namespace pic
