#pragma once

#include <string>

#include "pic/model.hpp"

namespace pic {

struct Verdict {
  enum class Status { Ok, DecodeViolation, PrivacyViolation };
  Status status = Status::Ok;
  int user = 0;        // violating user (when not ok)
  int coordinate = 0;  // violating block coordinate (decode violations)
  std::string reason;

  bool ok() const { return status == Status::Ok; }
};

/// Algebraic validity test for a keyed linear scheme. For each user i the
/// span of unknowns is U_i = <{G_j : j ∉ a_i} ∪ {H_b : b ∉ AK_i}> where the
/// key patterns range over the blocks present in the scheme. Condition 1
/// demands the n columns of G_i be jointly independent of U_i (checked
/// column by column, so the reported coordinate is the first that fails);
/// condition 2 demands <{G_j : j ∉ a_i}> ⊆ <{H_b : b ∉ AK_i}>. Users are
/// scanned in ascending order and the first failure is reported.
Verdict verify_private(const LinearScheme& s, const SideInfoGraph& g);

/// Validity test for a keyless scheme under the per-message privacy notion:
/// condition 1 as above with U_i = <{G_j : j ∉ a_i}>, and condition 2
/// demands, for every j ∉ a_i, <G_j> ⊆ <{G_l : l ∉ a_i, l ≠ j}>. Throws
/// ModelError if the scheme carries key blocks.
Verdict verify_weak_private(const LinearScheme& s, const SideInfoGraph& g);

/// R = r/n and R_b = w_b/n per key block.
RateTuple scheme_rate(const LinearScheme& s);

}  // namespace pic
