/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POSOPEN_ORACLE_HPP
#define POSOPEN_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "posopen/amounts.hpp"
#include "posopen/model.hpp"

namespace posopen {

/// What a coalition must satisfy to count.
struct CoalitionPredicate {
  enum Kind {
    /// combined power strictly exceeds `fraction` of total power
    ExceedsThreshold,
    /// combined power reaches at least `fraction` of total power
    ReachesQuorum,
    /// coalition size is exactly `exact_size` (minimum-stake search only)
    ExactSize,
  };
  Kind kind = ExceedsThreshold;
  Ratio fraction{1, 3};
  std::uint64_t exact_size = 0;
};

struct CoalitionResult {
  std::uint64_t size = 0;
  BigInt total_stake;
};

/// Exhaustive search over all 2^N coalitions for the minimum-size and,
/// among those, minimum-stake coalition satisfying the predicate. Test
/// oracle only; deliberately independent of the greedy implementations it
/// cross-checks. N is capped at 20.
inline std::optional<CoalitionResult> oracle_min_coalition(
    const ValidatorSet& set, const ConsensusModel& model,
    const CoalitionPredicate& pred) {
  if (set.validators.empty())
    throw Error(ErrorCode::EMPTY_SET, "validator set is empty");
  const size_t n = set.validators.size();
  if (n > 20)
    throw Error(ErrorCode::SET_TOO_LARGE,
                "oracle handles at most 20 validators, got " +
                    std::to_string(n));

  std::vector<BigInt> stake(n), power(n);
  BigInt total_power = 0;
  for (size_t i = 0; i < n; ++i) {
    stake[i] = set.validators[i].stake.base_units();
    power[i] = model.family == ConsensusFamily::StakeProportional
                   ? stake[i]
                   : BigInt(1);
    total_power += power[i];
  }

  std::optional<CoalitionResult> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint64_t size = 0;
    BigInt p = 0, s = 0;
    for (size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        ++size;
        p += power[i];
        s += stake[i];
      }
    }
    bool ok = false;
    switch (pred.kind) {
      case CoalitionPredicate::ExceedsThreshold:
        ok = p * pred.fraction.den > total_power * pred.fraction.num;
        break;
      case CoalitionPredicate::ReachesQuorum:
        ok = p * pred.fraction.den >= total_power * pred.fraction.num;
        break;
      case CoalitionPredicate::ExactSize:
        ok = size == pred.exact_size;
        break;
    }
    if (!ok) continue;
    if (!best || size < best->size ||
        (size == best->size && s < best->total_stake))
      best = CoalitionResult{size, s};
  }
  return best;
}

}  // namespace posopen

#endif  // POSOPEN_ORACLE_HPP
