#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rarewalk/walk.hpp"

namespace rarewalk {

/// sigma = sup{0 < k <= length : S_k = level}, or nullopt when the level is
/// never visited after time 0.
std::optional<std::size_t> last_visit_time(const WalkPath& path,
                                           std::int64_t level = 1);

/// Reflects the suffix after the last visit to level 1 through that level:
/// S'_k = S_k for k <= sigma, S'_k = 2 - S_k for k > sigma. Involution on the
/// paths that visit level 1. Throws when sigma does not exist.
WalkPath flip_after_last_visit(const WalkPath& path);

/// Reflects the prefix through `level` up to the first hitting time of it:
/// S''_k = 2*level - S_k for k <= sigma_level, unchanged after. Moves the
/// start from s to 2*level - s. Throws when the level is never hit.
WalkPath reflect_before_first_hit(const WalkPath& path,
                                  std::int64_t level = -1);

struct InjectionClaim {
  std::string name;
  std::uint64_t count_left = 0;
  std::uint64_t count_right = 0;
  bool pass = false;
  std::string detail;
};

struct InjectionReport {
  std::int64_t n_plus_1 = 0;
  bool all_pass = false;
  std::vector<InjectionClaim> claims;
};

/// Exhaustively certifies the two path transformations at horizon n+1:
/// the flip map matches {L(0,n+1)=1, X1=1, sigma<n+1} with {L(0,n+1)=2, X1=1}
/// bijectively (with images having L exactly 2), and the reflection map gives
/// |{start 0, S_n=0, sigma_{-1}<=n}| = |{start -2, S_n=0}| = binom(n,(n+2)/2).
/// Requires n_plus_1 in [2, 20].
InjectionReport verify_injection_sets(std::int64_t n_plus_1);

}  // namespace rarewalk
