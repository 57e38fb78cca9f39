#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pic/model.hpp"

namespace pic {

inline constexpr uint64_t kDefaultStateLimit = uint64_t(1) << 28;

struct LeakageFinding {
  int user = 0;
  /// Reproducible witness: the conditioning cell plus the two products of
  /// outcome counts whose inequality breaks the factorization.
  std::string witness;
};

struct OracleReport {
  bool decodable = true;
  int decode_failure_user = 0;  // first failing user, 0 when decodable
  std::vector<LeakageFinding> leaks;
  uint64_t enumerated_states = 0;

  bool clean() const { return decodable && leaks.empty(); }
};

struct WeakPairVerdict {
  int i = 0;  // observing user
  int j = 0;  // message index, j ∉ a_i
  bool leaks = false;
  std::string witness;
};

struct WeakOracleReport {
  bool decodable = true;
  int decode_failure_user = 0;
  std::vector<WeakPairVerdict> pairs;
  uint64_t enumerated_states = 0;

  bool clean() const;
};

/// Exhaustively enumerates all message/key realizations. Decodable iff each
/// x_i is a deterministic function of (m, x_{s_i}, k_{AK_i}); leakage-free at
/// user i iff m is exactly conditionally independent of the unknown messages
/// given (x_{s_i}, k_{AK_i}), established by integer count factorization in
/// every conditioning cell. Throws ModelError when q^(nN + sum w_b) exceeds
/// `state_limit`.
OracleReport oracle_check_private(const LinearScheme& s, const SideInfoGraph& g,
                                  uint64_t state_limit = kDefaultStateLimit);

/// Per-pair privacy for keyless schemes: verdict none at (i, j) iff m is
/// independent of x_j given x_{s_i}.
WeakOracleReport oracle_check_weak(const LinearScheme& s, const SideInfoGraph& g,
                                   uint64_t state_limit = kDefaultStateLimit);

/// Multicast variant: user i decodes from (M(i), x_{s_i}) where M(i) is the
/// set of sessions addressed to i, and M(i) must be conditionally independent
/// of the unknown messages given x_{s_i}.
OracleReport oracle_check_multicast(const MulticastScheme& ms, const SideInfoGraph& g,
                                    uint64_t state_limit = kDefaultStateLimit);

}  // namespace pic
