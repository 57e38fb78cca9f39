#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pic/gf.hpp"
#include "pic/rational.hpp"

namespace pic {

/// Raised on malformed input files and invariant violations of the
/// canonical domain types.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Directed side-information graph on users 1..N. side_info[i-1] holds
/// s_i as a sorted list; i itself never appears in s_i.
class SideInfoGraph {
 public:
  SideInfoGraph(int n_users, std::vector<std::vector<int>> side_info);

  int n() const { return n_; }
  const std::vector<int>& s(int user) const { return side_info_[user - 1]; }
  bool knows(int user, int msg) const {  // msg in s_user?
    return (adj_[user - 1] >> (msg - 1)) & 1u;
  }
  /// a_i = s_i ∪ {i} as a bitmask (bit u-1 = user u).
  uint32_t a_mask(int user) const { return adj_[user - 1] | (1u << (user - 1)); }
  uint32_t s_mask(int user) const { return adj_[user - 1]; }

  bool operator==(const SideInfoGraph& other) const;

 private:
  int n_;
  std::vector<std::vector<int>> side_info_;
  std::vector<uint32_t> adj_;
};

/// Characteristic vector of a proper nonempty user subset. Bit i-1 of
/// `mask` is user i; the string form is written leftmost = user 1.
class KeyPattern {
 public:
  KeyPattern(int n_users, uint32_t mask);
  static KeyPattern from_string(const std::string& bits);

  int n() const { return n_; }
  uint32_t mask() const { return mask_; }
  bool has_user(int user) const { return (mask_ >> (user - 1)) & 1u; }
  std::string str() const;

  auto operator<=>(const KeyPattern& other) const = default;

 private:
  int n_;
  uint32_t mask_;
};

/// A finite set of distinct key patterns over the same user count,
/// kept sorted by mask.
class KeyAccessStructure {
 public:
  KeyAccessStructure() = default;
  explicit KeyAccessStructure(std::vector<KeyPattern> patterns);

  int n() const;  // 0 when empty
  const std::vector<KeyPattern>& patterns() const { return patterns_; }
  bool contains(uint32_t mask) const;
  size_t size() const { return patterns_.size(); }

  bool operator==(const KeyAccessStructure& other) const = default;

 private:
  std::vector<KeyPattern> patterns_;
};

/// All 2^N - 2 admissible patterns for N users, in ascending mask order.
std::vector<KeyPattern> all_key_patterns(int n_users);

/// Transmission rate plus per-pattern key rates (absent pattern = rate 0).
struct RateTuple {
  int n_users = 0;
  Rat transmission_rate = 0;
  std::map<uint32_t, Rat> key_rates;  // keyed by pattern mask

  Rat key_rate(uint32_t mask) const;
  Rat sum_key_rate() const;
  bool operator==(const RateTuple& other) const;
};

struct KeyBlock {
  KeyPattern pattern;
  GFMatrix columns;  // r x w_b
};

/// Linear encoder: r transmitted symbols of an n-block code over GF(q).
struct LinearScheme {
  int q = 2;
  int n = 1;
  int r = 0;
  std::vector<GFMatrix> G;     // one r x n matrix per user
  std::vector<KeyBlock> keys;  // sorted by pattern mask, distinct

  int n_users() const { return static_cast<int>(G.size()); }
  const GFMatrix* key_block(uint32_t mask) const;
  void validate() const;  // throws ModelError on any invariant breach
};

struct MulticastTerm {
  int user = 0;
  int coordinate = 0;  // 1..n
  int coeff = 1;
};

struct MulticastSession {
  std::vector<int> recipients;       // sorted user list
  std::vector<MulticastTerm> terms;  // payload = sum coeff * x_user^(coord)
};

/// Block-n multicast code; each session carries exactly one GF(q) symbol.
struct MulticastScheme {
  int q = 2;
  int n = 1;
  int n_users = 0;
  std::vector<MulticastSession> sessions;

  void validate() const;
};

// ---- canonical file formats (JSON) ----

SideInfoGraph parse_graph(const std::string& text);
std::string serialize_graph(const SideInfoGraph& g);

LinearScheme parse_scheme(const std::string& text);
std::string serialize_scheme(const LinearScheme& s);

RateTuple parse_rate_tuple(const std::string& text);
std::string serialize_rate_tuple(const RateTuple& t);

MulticastScheme parse_multicast(const std::string& text);
std::string serialize_multicast(const MulticastScheme& m);

/// Key access structure from comma-separated pattern strings ("110,101").
KeyAccessStructure parse_key_structure(const std::string& csv, int n_users);

struct DerivedSets {
  std::vector<std::vector<int>> a_sets;       // a_i = s_i ∪ {i}, sorted
  std::vector<std::pair<int, int>> pairs;     // ordered (i,j) with i ∉ a_j, lex order
};

DerivedSets derived_sets(const SideInfoGraph& g);

}  // namespace pic
