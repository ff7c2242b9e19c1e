/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POSOPEN_SCORING_HPP
#define POSOPEN_SCORING_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "posopen/amounts.hpp"
#include "posopen/metrics.hpp"
#include "posopen/model.hpp"

namespace posopen {

enum class Axis : unsigned {
  Validators = 0,
  EntryCapital = 1,
  CapitalConcentration = 2,
  OperatingCost = 3,
  EconomicStability = 4,
};

constexpr unsigned kAxisCount = 5;

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::Validators: return "validators";
    case Axis::EntryCapital: return "entry_capital";
    case Axis::CapitalConcentration: return "capital_concentration";
    case Axis::OperatingCost: return "operating_cost";
    case Axis::EconomicStability: return "economic_stability";
  }
  return "?";
}

enum class Direction { HigherIsBetter, LowerIsBetter };

/// Raw per-chain metric values feeding the openness score. A chain that
/// does not disclose a figure is excluded from that axis's cohort rather
/// than carrying a sentinel value.
struct MetricVector {
  std::optional<std::uint64_t> validator_count;  // absent when undisclosed
  UsdAmount entry_capital_usd;
  std::uint64_t nakamoto = 0;
  UsdAmount operating_cost_usd;
  BigRational staking_ratio;
  UsdAmount attack_capital_usd;
};

struct AxisScore {
  Axis axis;
  int score = 0;  // 1..5
  Direction direction;
};

struct ChainScores {
  std::string chain_id;
  /// Indexed by Axis; absent when the chain lacks the figure.
  std::array<std::optional<int>, kAxisCount> scores;
  int total = 0;  // sum over present axes
  bool partial = false;
};

struct OpennessReport {
  std::string cohort_id;
  /// Ordered by total descending, then chain_id ascending.
  std::vector<ChainScores> chains;
  /// Radar rows in the same order; missing axes plotted at 0.
  std::vector<std::array<int, kAxisCount>> radar;
};

/// Rank-normalize a cohort of comparable values to 1..5. A chain's score
/// is 1 + round(4r) half-up, where r is the fraction of other chains with
/// a strictly worse value once oriented by `direction`. Equal raw values
/// always tie.
inline std::map<std::string, int> rank_score(
    const std::vector<std::pair<std::string, BigRational>>& values,
    Direction direction) {
  const size_t n = values.size();
  if (n < 2)
    throw Error(ErrorCode::COHORT_TOO_SMALL,
                "rank_score needs at least 2 chains, got " + std::to_string(n));
  std::map<std::string, int> out;
  for (const auto& [id, v] : values) {
    std::uint64_t worse = 0;
    for (const auto& [oid, ov] : values) {
      if (oid == id) continue;
      bool other_worse = direction == Direction::HigherIsBetter ? ov < v : ov > v;
      if (other_worse) ++worse;
    }
    // score = 1 + round_half_up(4 * worse / (n - 1))
    BigInt num = 8 * BigInt(worse) + BigInt(n - 1);
    BigInt den = 2 * BigInt(n - 1);
    out[id] = 1 + static_cast<int>(num / den);
  }
  return out;
}

/// Mean of the staking-ratio and attack-capital rank scores, half-up,
/// clamped to [1,5].
inline std::map<std::string, int> economic_stability_score(
    const std::vector<std::pair<std::string, BigRational>>& staking_ratios,
    const std::vector<std::pair<std::string, BigRational>>& attack_capitals) {
  auto ratio_scores = rank_score(staking_ratios, Direction::HigherIsBetter);
  auto attack_scores = rank_score(attack_capitals, Direction::HigherIsBetter);
  if (ratio_scores.size() != attack_scores.size())
    throw Error(ErrorCode::COHORT_MISMATCH,
                "staking-ratio and attack-capital cohorts differ");
  std::map<std::string, int> out;
  for (const auto& [id, rs] : ratio_scores) {
    auto it = attack_scores.find(id);
    if (it == attack_scores.end())
      throw Error(ErrorCode::COHORT_MISMATCH,
                  "chain " + id + " missing from attack-capital cohort");
    int combined = (rs + it->second + 1) / 2;  // round half-up
    out[id] = std::clamp(combined, 1, 5);
  }
  return out;
}

struct ScoringOptions {
  Ratio nakamoto_threshold{1, 3};
  /// Attack goal scored on the economic-stability axis.
  AttackGoal goal = AttackGoal::Disruption;
  AttackOptions attack;
};

/// All raw metrics for one snapshot.
inline MetricVector compute_metrics(const ChainSnapshot& s,
                                    const ScoringOptions& opts = {}) {
  MetricVector m;
  if (!s.validator_set.count_undisclosed)
    m.validator_count = s.validator_set.validators.size();
  m.entry_capital_usd = entry_capital(s).min_required_usd;
  m.nakamoto = nakamoto_coefficient(s.validator_set, s.consensus,
                                    opts.nakamoto_threshold);
  m.operating_cost_usd = s.costs.hw_monthly_cost_usd;
  m.staking_ratio = staking_ratio(s);
  m.attack_capital_usd = attack_capital(s, opts.goal, opts.attack);
  return m;
}

/// Score a cohort of snapshots on the five openness axes.
inline OpennessReport openness_report(const std::vector<ChainSnapshot>& cohort,
                                      const std::string& cohort_id = "cohort",
                                      const ScoringOptions& opts = {}) {
  if (cohort.size() < 2)
    throw Error(ErrorCode::COHORT_TOO_SMALL,
                "openness report needs at least 2 chains, got " +
                    std::to_string(cohort.size()));

  struct Row {
    std::string chain_id;
    MetricVector metrics;
  };
  std::vector<Row> rows;
  rows.reserve(cohort.size());
  for (const auto& s : cohort) {
    try {
      rows.push_back({s.chain_id, compute_metrics(s, opts)});
    } catch (const Error& e) {
      throw Error(e.code(), "chain " + s.chain_id + ": " + e.what());
    }
  }
  // Deterministic regardless of input order.
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.chain_id < b.chain_id; });

  using Values = std::vector<std::pair<std::string, BigRational>>;
  Values validators, entry, nakamoto, opcost, ratios, attacks;
  for (const auto& r : rows) {
    if (r.metrics.validator_count)
      validators.emplace_back(r.chain_id, BigRational(*r.metrics.validator_count));
    entry.emplace_back(r.chain_id, BigRational(r.metrics.entry_capital_usd.cents()));
    nakamoto.emplace_back(r.chain_id, BigRational(r.metrics.nakamoto));
    opcost.emplace_back(r.chain_id,
                        BigRational(r.metrics.operating_cost_usd.cents()));
    ratios.emplace_back(r.chain_id, r.metrics.staking_ratio);
    attacks.emplace_back(r.chain_id,
                         BigRational(r.metrics.attack_capital_usd.cents()));
  }

  auto v_scores = validators.size() >= 2
                      ? rank_score(validators, Direction::HigherIsBetter)
                      : std::map<std::string, int>{};
  auto e_scores = rank_score(entry, Direction::LowerIsBetter);
  auto c_scores = rank_score(nakamoto, Direction::HigherIsBetter);
  auto o_scores = rank_score(opcost, Direction::LowerIsBetter);
  auto s_scores = economic_stability_score(ratios, attacks);

  OpennessReport report;
  report.cohort_id = cohort_id;
  for (const auto& r : rows) {
    ChainScores cs;
    cs.chain_id = r.chain_id;
    auto put = [&cs](Axis axis, const std::map<std::string, int>& scores,
                     const std::string& id) {
      auto it = scores.find(id);
      if (it != scores.end())
        cs.scores[static_cast<unsigned>(axis)] = it->second;
    };
    put(Axis::Validators, v_scores, r.chain_id);
    put(Axis::EntryCapital, e_scores, r.chain_id);
    put(Axis::CapitalConcentration, c_scores, r.chain_id);
    put(Axis::OperatingCost, o_scores, r.chain_id);
    put(Axis::EconomicStability, s_scores, r.chain_id);
    cs.total = 0;
    for (const auto& sc : cs.scores) {
      if (sc) cs.total += *sc;
      else cs.partial = true;
    }
    report.chains.push_back(std::move(cs));
  }

  std::sort(report.chains.begin(), report.chains.end(),
            [](const ChainScores& a, const ChainScores& b) {
              if (a.total != b.total) return a.total > b.total;
              return a.chain_id < b.chain_id;
            });
  for (const auto& cs : report.chains) {
    std::array<int, kAxisCount> row{};
    for (unsigned i = 0; i < kAxisCount; ++i)
      row[i] = cs.scores[i].value_or(0);
    report.radar.push_back(row);
  }
  return report;
}

}  // namespace posopen

#endif  // POSOPEN_SCORING_HPP
