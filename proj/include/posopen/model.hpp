/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POSOPEN_MODEL_HPP
#define POSOPEN_MODEL_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "posopen/amounts.hpp"

namespace posopen {

/// Positive rational fraction, e.g. a quorum of 2/3.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  BigRational value() const { return BigRational(num, den); }
  bool operator==(const Ratio&) const = default;
};

enum class ConsensusFamily {
  StakeProportional,
  ValidatorCountProportional,
};

inline const char* consensus_family_name(ConsensusFamily f) {
  return f == ConsensusFamily::StakeProportional ? "stake_proportional"
                                                 : "validator_count";
}

/// Quorum rule: which quantity voting power is proportional to, and the
/// fraction of total power a coalition needs to finalize.
struct ConsensusModel {
  ConsensusFamily family = ConsensusFamily::StakeProportional;
  Ratio quorum{2, 3};
};

struct Validator {
  std::string id;
  TokenAmount stake;
};

/// How the fixture counts participants. `client` encodes the rule that
/// many validators behind one client count once.
enum class ValidatorUnit { Validator, Node, Client };

inline const char* validator_unit_name(ValidatorUnit u) {
  switch (u) {
    case ValidatorUnit::Validator: return "validator";
    case ValidatorUnit::Node: return "node";
    case ValidatorUnit::Client: return "client";
  }
  return "validator";
}

struct ValidatorSet {
  std::vector<Validator> validators;
  std::optional<std::uint64_t> max_count;
  TokenAmount min_stake_requirement;
  /// Admits legacy validators staked below the protocol minimum.
  bool min_stake_waived = false;
  /// The chain does not disclose its validator count; the set here is a
  /// synthetic stand-in and the count must not be scored.
  bool count_undisclosed = false;

  TokenAmount total_stake() const {
    TokenAmount sum(BigInt(0), min_stake_requirement.decimals());
    for (const auto& v : validators) sum = sum + v.stake;
    return sum;
  }
};

struct TokenEconomics {
  TokenAmount circulating_supply;
  TokenAmount tradable_supply;
  TokenAmount staked_total;
  PriceUsd price_usd_per_token;
};

struct CostModel {
  UsdAmount hw_monthly_cost_usd;
  Ratio reward_apr{0, 1};  // annual reward rate on staked value
};

struct ChainSnapshot {
  std::string chain_id;
  std::string taken_at;  // UTC timestamp, RFC 3339
  ConsensusModel consensus;
  ValidatorSet validator_set;
  TokenEconomics economics;
  CostModel costs;
  ValidatorUnit validator_unit = ValidatorUnit::Validator;
};

/// One broken invariant. Violations are data, not failures: validation is
/// total and reports everything it finds, in a deterministic order.
struct Violation {
  std::string code;
  std::string message;
  bool operator==(const Violation&) const = default;
};

inline std::vector<Violation> validate_snapshot(const ChainSnapshot& s) {
  std::vector<Violation> out;
  auto add = [&out](const char* code, std::string msg) {
    out.push_back({code, std::move(msg)});
  };

  if (s.chain_id.empty()) add("EMPTY_CHAIN_ID", "chain_id must be non-empty");

  if (s.consensus.quorum.num <= 0 || s.consensus.quorum.den <= 0) {
    add("BAD_QUORUM", "quorum numerator and denominator must be positive");
  } else {
    BigRational q = s.consensus.quorum.value();
    if (!(q > BigRational(1, 2) && q <= 1))
      add("BAD_QUORUM", "quorum must lie in (1/2, 1], got " +
                            std::to_string(s.consensus.quorum.num) + "/" +
                            std::to_string(s.consensus.quorum.den));
  }

  const ValidatorSet& vs = s.validator_set;
  std::set<std::string> seen;
  for (const auto& v : vs.validators) {
    if (v.id.empty()) add("EMPTY_VALIDATOR_ID", "validator id must be non-empty");
    if (!seen.insert(v.id).second)
      add("DUPLICATE_VALIDATOR_ID", "duplicate validator id: " + v.id);
  }
  if (vs.max_count) {
    if (*vs.max_count == 0)
      add("BAD_MAX_COUNT", "max_count must be positive when present");
    else if (vs.validators.size() > *vs.max_count)
      add("MAX_COUNT_EXCEEDED",
          std::to_string(vs.validators.size()) + " validators exceed max_count " +
              std::to_string(*vs.max_count));
  }
  if (!vs.min_stake_waived) {
    for (const auto& v : vs.validators) {
      if (v.stake.decimals() != vs.min_stake_requirement.decimals()) {
        add("DECIMALS_MISMATCH",
            "validator " + v.id + " stake decimals differ from min_stake_requirement");
      } else if (v.stake < vs.min_stake_requirement) {
        add("BELOW_MIN_STAKE",
            "validator " + v.id + " stakes below the protocol minimum");
      }
    }
  }

  const TokenEconomics& econ = s.economics;
  unsigned dec = econ.circulating_supply.decimals();
  if (econ.tradable_supply.decimals() != dec ||
      econ.staked_total.decimals() != dec) {
    add("DECIMALS_MISMATCH", "economics token amounts must share decimals");
  } else {
    if (econ.tradable_supply.base_units() > econ.circulating_supply.base_units())
      add("TRADABLE_EXCEEDS_CIRCULATING",
          "tradable_supply exceeds circulating_supply");
    // staked_total must equal the sum of attributed validator stakes
    BigInt stake_sum = 0;
    bool stake_dec_ok = true;
    for (const auto& v : vs.validators) {
      if (v.stake.decimals() != dec) { stake_dec_ok = false; break; }
      stake_sum += v.stake.base_units();
    }
    if (!stake_dec_ok)
      add("DECIMALS_MISMATCH", "validator stake decimals differ from economics");
    else if (stake_sum != econ.staked_total.base_units())
      add("STAKE_TOTAL_MISMATCH",
          "staked_total " + econ.staked_total.base_units().str() +
              " != sum of validator stakes " + stake_sum.str());
  }
  if (econ.price_usd_per_token.text().empty() ||
      econ.price_usd_per_token.value() <= 0)
    add("NONPOSITIVE_PRICE", "price_usd_per_token must be > 0");

  const CostModel& costs = s.costs;
  if (costs.reward_apr.num < 0 || costs.reward_apr.den <= 0)
    add("BAD_APR", "reward_apr must be a non-negative fraction");
  else if (costs.reward_apr.value() >= 10)
    add("BAD_APR", "reward_apr must be < 10 (rates are fractions, e.g. 0.10)");

  return out;
}

}  // namespace posopen

#endif  // POSOPEN_MODEL_HPP
