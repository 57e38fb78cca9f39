#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pic/lp.hpp"
#include "pic/model.hpp"

namespace pic {

struct CatalogueVertex {
  RateTuple tuple;
  LinearScheme scheme;
};

/// One rate-region characterization: the graph, its inequality description
/// (variables: R first, then the key patterns in ascending mask order), and
/// the region's vertices together with codes achieving them.
struct CatalogueEntry {
  std::string name;
  SideInfoGraph graph;
  lp::Problem region;
  std::vector<CatalogueVertex> vertices;

  int dim() const { return 1 + (1 << graph.n()) - 2; }
};

/// The full catalogue: all two-user graphs, the three-user showcase entry,
/// and all sixteen three-user graphs up to isomorphism.
const std::vector<CatalogueEntry>& catalogue_entries();

struct CatalogueFailure {
  std::string entry;
  int vertex_index = -1;  // -1 = entry-level failure
  std::string what;
};

struct CatalogueReport {
  int entries = 0;
  int vertices = 0;
  std::vector<CatalogueFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks every vertex: the code verifies algebraically and against the
/// exhaustive oracle, its rate equals the printed tuple, the tuple satisfies
/// the region, and the tight constraints have full rank.
CatalogueReport verify_catalogue();
CatalogueReport verify_entries(const std::vector<CatalogueEntry>& entries);

/// JSON forms of a region (used for the shipped data tree).
std::string serialize_region(const lp::Problem& region, int n_users);
lp::Problem parse_region(const std::string& text, int n_users);

/// All key access structures of the given size that are feasible for g,
/// in canonical (lexicographic mask list) order.
std::vector<KeyAccessStructure> feasible_structures_of_size(const SideInfoGraph& g,
                                                            int size);

struct ScalarSearchResult {
  std::optional<LinearScheme> scheme;  // first hit in canonical order
  uint64_t nodes = 0;                  // search-tree nodes visited
};

/// Exhaustive search over single-block (n = 1) schemes with r transmissions:
/// one nonzero column per user and key blocks of strictly increasing nonzero
/// columns up to the per-pattern width caps. Zero or repeated key columns
/// never change a verdict (only spans enter the validity conditions), so the
/// canonical form is exhaustive. `canonical_pruning` additionally skips
/// prefixes whose decode condition already failed; disabling it is only
/// useful for cross-checking the pruning itself.
ScalarSearchResult scalar_search(const SideInfoGraph& g, int q, int r,
                                 const std::map<uint32_t, int>& key_caps,
                                 bool canonical_pruning = true);

// ---- named instances reused across analyses and tests ----

/// 5 users, user i holds the next two messages around the circle.
SideInfoGraph circulant5_graph();
/// Valid 3-transmission code for circulant5_graph (total key rate 4).
LinearScheme circulant5_code();

/// Bidirectional 5-cycle: user i holds messages i-1 and i+1.
SideInfoGraph cycle5_graph();
/// Block-2 code of rate 5/2 for cycle5_graph using five half-rate keys.
LinearScheme cycle5_block2_code();

/// 5-user graph covered by the secure partition {{1,2,4},{3,5}}.
SideInfoGraph secure_cover_demo_graph();
/// Keyless code {x1+x2+x4, x3+x5} for secure_cover_demo_graph.
LinearScheme secure_cover_demo_scheme();

/// 7-user graph admitting a keyless weakly-private linear code but no
/// secure clique cover.
SideInfoGraph no_cover_demo_graph();
/// The 7x7 generator over GF(2) for no_cover_demo_graph.
LinearScheme no_cover_demo_scheme();

/// 4-user instance separating block codes from single-block codes.
SideInfoGraph four_user_gap_graph();
/// Block-2 code of rate 5/2 for the 4-user instance.
LinearScheme four_user_gap_scheme();
/// Width caps matching that code's key usage (pattern mask -> cap).
std::map<uint32_t, int> four_user_gap_caps();

/// The 30 size-3 feasible structures of cycle5_graph as four rotation
/// classes (fixture for cross-checking the enumeration).
std::vector<KeyAccessStructure> cycle5_size3_structures();

struct FourUserGapReport {
  bool scheme_valid = false;
  RateTuple rate;
  bool rate_matches = false;
  bool scalar_none_q2 = false;
  std::optional<bool> scalar_none_q3;
  bool ok() const {
    return scheme_valid && rate_matches && scalar_none_q2 &&
           (!scalar_none_q3 || *scalar_none_q3);
  }
};

/// (a) The block-2 code verifies and achieves exactly rate
/// (5/2, 1/2, 1/2, 1/2, 1, 1/2, 1/2); (b) no single-block code with the
/// printed caps exists at r = 2 over GF(2) (optionally GF(3)).
FourUserGapReport four_user_gap_demo(bool include_q3 = false);

}  // namespace pic
