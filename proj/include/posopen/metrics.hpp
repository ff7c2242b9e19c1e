/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POSOPEN_METRICS_HPP
#define POSOPEN_METRICS_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "posopen/amounts.hpp"
#include "posopen/model.hpp"

namespace posopen {

enum class AttackGoal { Disruption, Takeover };

inline const char* attack_goal_name(AttackGoal g) {
  return g == AttackGoal::Disruption ? "disruption" : "takeover";
}

enum class AttackPath { AcquireAndStake, AcquireExistingValidators };

inline const char* attack_path_name(AttackPath p) {
  return p == AttackPath::AcquireAndStake ? "acquire_and_stake"
                                          : "acquire_existing_validators";
}

/// Cost basis for registering attacker validators under count-proportional
/// consensus: the protocol minimum, or the smallest existing stake.
enum class AttackCosting { ProtocolMin, LeastStaked };

struct AttackOptions {
  AttackCosting costing = AttackCosting::ProtocolMin;
  /// Permit buying out existing validators when registration headroom is
  /// exhausted. When false, such attacks are reported infeasible.
  bool allow_acquire_existing = true;
  /// Disruption boundary: true treats reaching exactly 1 - quorum of total
  /// power as blocking (so q = ceil(S/2) at quorum 2/3); false requires
  /// strictly exceeding it.
  bool boundary_inclusive = true;
};

struct AttackEstimate {
  TokenAmount quantity;  // newly acquired tokens
  UsdAmount capital;
  AttackPath path = AttackPath::AcquireAndStake;
  bool feasible = true;
};

namespace detail {

/// Validators ordered by descending voting power, ties by id ascending.
inline std::vector<const Validator*> by_power_desc(const ValidatorSet& set,
                                                   ConsensusFamily family) {
  std::vector<const Validator*> v;
  v.reserve(set.validators.size());
  for (const auto& val : set.validators) v.push_back(&val);
  std::sort(v.begin(), v.end(), [family](const Validator* a, const Validator* b) {
    if (family == ConsensusFamily::StakeProportional &&
        a->stake.base_units() != b->stake.base_units())
      return a->stake.base_units() > b->stake.base_units();
    return a->id < b->id;
  });
  return v;
}

/// Validators ordered by ascending stake, ties by id ascending.
inline std::vector<const Validator*> by_stake_asc(const ValidatorSet& set) {
  std::vector<const Validator*> v;
  v.reserve(set.validators.size());
  for (const auto& val : set.validators) v.push_back(&val);
  std::sort(v.begin(), v.end(), [](const Validator* a, const Validator* b) {
    if (a->stake.base_units() != b->stake.base_units())
      return a->stake.base_units() < b->stake.base_units();
    return a->id < b->id;
  });
  return v;
}

inline BigInt power_of(const Validator& v, ConsensusFamily family) {
  return family == ConsensusFamily::StakeProportional ? v.stake.base_units()
                                                      : BigInt(1);
}

inline BigInt total_power(const ValidatorSet& set, ConsensusFamily family) {
  if (family == ConsensusFamily::ValidatorCountProportional)
    return BigInt(set.validators.size());
  BigInt t = 0;
  for (const auto& v : set.validators) t += v.stake.base_units();
  return t;
}

inline void require_non_empty(const ValidatorSet& set) {
  if (set.validators.empty())
    throw Error(ErrorCode::EMPTY_SET, "validator set is empty");
}

}  // namespace detail

/// Per-validator voting power under the chain's consensus family.
inline std::vector<std::pair<std::string, BigRational>> voting_power(
    const ValidatorSet& set, const ConsensusModel& model) {
  detail::require_non_empty(set);
  std::vector<std::pair<std::string, BigRational>> out;
  out.reserve(set.validators.size());
  for (const auto& v : set.validators)
    out.emplace_back(v.id, BigRational(detail::power_of(v, model.family)));
  return out;
}

/// Minimum number of validators whose combined power strictly exceeds
/// `threshold` of the total. Greedy descending selection is minimal for a
/// sum threshold over non-negative weights.
inline std::uint64_t nakamoto_coefficient(const ValidatorSet& set,
                                          const ConsensusModel& model,
                                          Ratio threshold = {1, 3}) {
  detail::require_non_empty(set);
  BigInt total = detail::total_power(set, model.family);
  auto order = detail::by_power_desc(set, model.family);
  BigInt sum = 0;
  std::uint64_t k = 0;
  for (const Validator* v : order) {
    sum += detail::power_of(*v, model.family);
    ++k;
    // sum / total > num / den
    if (sum * threshold.den > total * threshold.num) return k;
  }
  // Threshold < 1, so the full set always crosses it unless total power is
  // zero; treat the degenerate all-zero-stake set as needing everyone.
  return k;
}

/// Minimum number of validators whose combined power reaches the quorum
/// fraction of total power.
inline std::uint64_t quorum_validator_count(const ValidatorSet& set,
                                            const ConsensusModel& model) {
  detail::require_non_empty(set);
  BigInt total = detail::total_power(set, model.family);
  auto order = detail::by_power_desc(set, model.family);
  BigInt sum = 0;
  std::uint64_t k = 0;
  for (const Validator* v : order) {
    sum += detail::power_of(*v, model.family);
    ++k;
    // sum / total >= num / den
    if (sum * model.quorum.den >= total * model.quorum.num) return k;
  }
  return k;
}

/// Smallest total stake a coalition needs to finalize blocks.
/// Stake-proportional: ceil(quorum x total stake). Count-proportional: the
/// ceil(quorum x N) validators with the smallest stakes form the cheapest
/// quorum coalition.
inline TokenAmount quorum_stake(const ValidatorSet& set,
                                const ConsensusModel& model) {
  detail::require_non_empty(set);
  unsigned dec = set.validators.front().stake.decimals();
  if (model.family == ConsensusFamily::StakeProportional) {
    BigInt total = 0;
    for (const auto& v : set.validators) total += v.stake.base_units();
    return TokenAmount(
        div_ceil(total * model.quorum.num, BigInt(model.quorum.den)), dec);
  }
  BigInt n = static_cast<std::uint64_t>(set.validators.size());
  BigInt k = div_ceil(n * model.quorum.num, BigInt(model.quorum.den));
  auto order = detail::by_stake_asc(set);
  BigInt sum = 0;
  for (BigInt i = 0; i < k; ++i)
    sum += order[static_cast<size_t>(i)]->stake.base_units();
  return TokenAmount(sum, dec);
}

/// quorum_stake / tradable_supply, exact.
inline BigRational consensus_stake_fraction(const ChainSnapshot& s) {
  if (s.economics.tradable_supply.is_zero())
    throw Error(ErrorCode::ZERO_TRADABLE_SUPPLY, "tradable_supply is zero");
  TokenAmount q = quorum_stake(s.validator_set, s.consensus);
  return BigRational(q.base_units(), s.economics.tradable_supply.base_units());
}

/// staked_total / tradable_supply, exact.
inline BigRational staking_ratio(const ChainSnapshot& s) {
  if (s.economics.tradable_supply.is_zero())
    throw Error(ErrorCode::ZERO_TRADABLE_SUPPLY, "tradable_supply is zero");
  if (s.economics.staked_total.base_units() >
      s.economics.tradable_supply.base_units())
    throw Error(ErrorCode::STAKE_EXCEEDS_SUPPLY,
                "staked_total exceeds tradable_supply");
  return BigRational(s.economics.staked_total.base_units(),
                     s.economics.tradable_supply.base_units());
}

/// Tokens an attacker must newly acquire to reach the goal, and what they
/// cost at the snapshot price. All quantities are exact minima in base
/// units; see AttackOptions for the boundary and costing knobs.
inline AttackEstimate attack_quantity(const ChainSnapshot& s, AttackGoal goal,
                                      const AttackOptions& opts = {}) {
  const ValidatorSet& set = s.validator_set;
  detail::require_non_empty(set);
  unsigned dec = set.validators.front().stake.decimals();
  BigInt total_stake = 0;
  for (const auto& v : set.validators) total_stake += v.stake.base_units();
  if (total_stake == 0)
    throw Error(ErrorCode::ZERO_TOTAL_STAKE, "total stake is zero");

  const Ratio q = s.consensus.quorum;
  auto finish = [&s](TokenAmount quantity, AttackPath path, bool feasible) {
    AttackEstimate e;
    e.quantity = quantity;
    e.capital = token_value_usd(quantity, s.economics.price_usd_per_token);
    e.path = path;
    e.feasible = feasible;
    return e;
  };

  if (s.consensus.family == ConsensusFamily::StakeProportional) {
    BigInt quantity;
    if (goal == AttackGoal::Takeover) {
      // q_a / (S + q_a) >= num/den  =>  q_a >= num*S / (den - num)
      if (q.num >= q.den)
        return finish(TokenAmount(BigInt(0), dec), AttackPath::AcquireAndStake,
                      false);
      quantity = div_ceil(total_stake * q.num, BigInt(q.den - q.num));
    } else {
      // Blocking fraction t = 1 - quorum. Inclusive boundary:
      // q_a / (S + q_a) >= t  =>  q_a >= t*S / (1 - t); at quorum 2/3 this
      // is ceil(S/2). Strict boundary adds one base unit at exact ties.
      std::int64_t t_num = q.den - q.num;
      std::int64_t t_den = q.den;
      BigInt num = total_stake * t_num;
      BigInt den = BigInt(t_den - t_num);
      quantity = div_ceil(num, den);
      if (!opts.boundary_inclusive && quantity * den == num) quantity += 1;
    }
    return finish(TokenAmount(quantity, dec), AttackPath::AcquireAndStake, true);
  }

  // Count-proportional: prefer registering k fresh validators.
  BigInt n = static_cast<std::uint64_t>(set.validators.size());
  BigInt k;
  bool k_defined = true;
  if (goal == AttackGoal::Takeover) {
    // k / (N + k) >= num/den
    if (q.num >= q.den) k_defined = false;
    else k = div_ceil(n * q.num, BigInt(q.den - q.num));
  } else {
    // k / (N + k) > (den - num)/den  =>  k * num > (den - num) * N
    // At quorum 2/3 this is k = floor(N/2) + 1.
    k = (n * (q.den - q.num)) / BigInt(q.num) + 1;
  }

  std::uint64_t headroom = set.max_count
                               ? (*set.max_count > set.validators.size()
                                      ? *set.max_count - set.validators.size()
                                      : 0)
                               : ~std::uint64_t(0);
  if (k_defined && (!set.max_count || k <= headroom)) {
    BigInt per_unit;
    if (opts.costing == AttackCosting::LeastStaked) {
      per_unit = detail::by_stake_asc(set).front()->stake.base_units();
    } else {
      per_unit = set.min_stake_requirement.base_units();
    }
    if (per_unit < 1) per_unit = 1;  // a validator cannot stake nothing
    return finish(TokenAmount(k * per_unit, dec), AttackPath::AcquireAndStake,
                  true);
  }

  // No registration headroom: buy out existing validators, cheapest first.
  if (!opts.allow_acquire_existing)
    return finish(TokenAmount(BigInt(0), dec), AttackPath::AcquireAndStake,
                  false);
  std::uint64_t qvc = quorum_validator_count(set, s.consensus);
  std::uint64_t need;
  if (goal == AttackGoal::Takeover) {
    need = qvc;
  } else {
    need = static_cast<std::uint64_t>(set.validators.size()) - qvc + 1;
  }
  auto order = detail::by_stake_asc(set);
  BigInt sum = 0;
  for (std::uint64_t i = 0; i < need; ++i) sum += order[i]->stake.base_units();
  return finish(TokenAmount(sum, dec), AttackPath::AcquireExistingValidators,
                true);
}

/// USD capital for the attack at the snapshot price.
inline UsdAmount attack_capital(const ChainSnapshot& s, AttackGoal goal,
                                const AttackOptions& opts = {}) {
  return attack_quantity(s, goal, opts).capital;
}

struct EntryCapital {
  UsdAmount min_required_usd;
  UsdAmount least_staked_usd;
};

/// USD cost of the protocol minimum stake, and of matching the currently
/// least-staked validator. The latter can exceed the former on chains
/// where entry is competitive.
inline EntryCapital entry_capital(const ChainSnapshot& s) {
  detail::require_non_empty(s.validator_set);
  const PriceUsd& price = s.economics.price_usd_per_token;
  auto order = detail::by_stake_asc(s.validator_set);
  return EntryCapital{
      token_value_usd(s.validator_set.min_stake_requirement, price),
      token_value_usd(order.front()->stake, price)};
}

struct BreakEvenStake {
  UsdAmount stake_usd;
  TokenAmount stake_tokens;
};

/// Smallest staked value whose annual reward covers a year of hardware.
inline BreakEvenStake break_even_stake(const ChainSnapshot& s) {
  const Ratio apr = s.costs.reward_apr;
  if (apr.num <= 0)
    throw Error(ErrorCode::ZERO_APR, "break-even undefined at zero APR");
  // ceil_to_cents(12 * monthly / apr)
  BigInt cents = div_ceil(s.costs.hw_monthly_cost_usd.cents() * 12 * apr.den,
                          BigInt(apr.num));
  UsdAmount stake_usd{cents};
  unsigned dec = s.economics.staked_total.decimals();
  BigInt units =
      usd_to_base_units_ceil(stake_usd, s.economics.price_usd_per_token, dec);
  return BreakEvenStake{stake_usd, TokenAmount(units, dec)};
}

}  // namespace posopen

#endif  // POSOPEN_METRICS_HPP
