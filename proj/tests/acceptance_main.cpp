/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Runs against the committed fixture pack and the CLI binary.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "posopen/ingest.hpp"
#include "posopen/metrics.hpp"
#include "posopen/oracle.hpp"
#include "posopen/radar.hpp"
#include "posopen/scoring.hpp"

using namespace posopen;

namespace {

const std::filesystem::path kFixtures = POSOPEN_FIXTURE_DIR;
const std::string kCli = POSOPEN_CLI_PATH;

int g_failures = 0;

struct Criterion {
  std::string name;
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  ~Criterion() {
    if (ok) {
      std::cout << "PASS " << name;
      if (!detail.empty()) std::cout << " [" << detail << "]";
      std::cout << "\n";
    } else {
      std::cout << "FAIL " << name << ": " << detail << "\n";
      ++g_failures;
    }
  }
};

ValidatorSet random_set(std::mt19937_64& rng, size_t max_n) {
  std::uniform_int_distribution<size_t> n_dist(1, max_n);
  std::uniform_int_distribution<std::uint64_t> stake_dist(0, 1'000'000'000);
  ValidatorSet set;
  set.min_stake_requirement = TokenAmount(BigInt(0), 0);
  size_t n = n_dist(rng);
  for (size_t i = 0; i < n; ++i)
    set.validators.push_back(
        {"v" + std::to_string(i), TokenAmount(BigInt(stake_dist(rng)), 0)});
  return set;
}

BigInt set_total(const ValidatorSet& set) {
  BigInt total = 0;
  for (const auto& v : set.validators) total += v.stake.base_units();
  return total;
}

ChainSnapshot snapshot_around(ValidatorSet set, ConsensusFamily family) {
  ChainSnapshot s;
  s.chain_id = "rand";
  s.taken_at = "2023-03-31T00:00:00Z";
  s.consensus = {family, {2, 3}};
  BigInt total = set_total(set);
  s.validator_set = std::move(set);
  s.economics.staked_total = TokenAmount(total, 0);
  s.economics.tradable_supply = TokenAmount(total * 5 + 1, 0);
  s.economics.circulating_supply = TokenAmount(total * 5 + 1, 0);
  s.economics.price_usd_per_token = PriceUsd::parse("3");
  s.costs.hw_monthly_cost_usd = UsdAmount(BigInt(10000));
  s.costs.reward_apr = {1, 10};
  return s;
}

void criterion_oracle_equivalence() {
  Criterion c{"1 oracle equivalence (nakamoto + quorum count, 1000 sets)"};
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20230331);
  int done = 0;
  while (done < 1000) {
    auto set = random_set(rng, 16);
    if (set_total(set) == 0) continue;
    ++done;
    for (auto family : {ConsensusFamily::StakeProportional,
                        ConsensusFamily::ValidatorCountProportional}) {
      ConsensusModel model{family, {2, 3}};
      auto nak = oracle_min_coalition(
          set, model, {CoalitionPredicate::ExceedsThreshold, {1, 3}});
      auto quo = oracle_min_coalition(
          set, model, {CoalitionPredicate::ReachesQuorum, {2, 3}});
      c.expect(nak && nakamoto_coefficient(set, model, {1, 3}) == nak->size,
               "nakamoto mismatch at trial " + std::to_string(done));
      c.expect(quo && quorum_validator_count(set, model) == quo->size,
               "quorum count mismatch at trial " + std::to_string(done));
      if (!c.ok) return;
    }
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start).count();
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
  std::ostringstream d;
  d.precision(1);
  d << std::fixed << secs << "s";
  c.detail = d.str();
}

void criterion_attack_minimality() {
  Criterion c{"2 attack-quantity minimality (1000 snapshots)"};
  std::mt19937_64 rng(42424242);
  int done = 0;
  while (done < 1000) {
    auto set = random_set(rng, 12);
    BigInt S = set_total(set);
    if (S == 0) continue;
    ++done;
    auto sp = snapshot_around(set, ConsensusFamily::StakeProportional);

    BigInt q_d = attack_quantity(sp, AttackGoal::Disruption)
                     .quantity.base_units();
    c.expect(q_d == div_ceil(S, 2), "disruption != ceil(S/2)");
    c.expect(q_d * 3 >= S + q_d, "disruption quantity misses the goal");
    c.expect((q_d - 1) * 3 < S + (q_d - 1), "disruption quantity not minimal");

    BigInt q_t =
        attack_quantity(sp, AttackGoal::Takeover).quantity.base_units();
    c.expect(q_t * 3 >= 2 * (S + q_t), "takeover quantity misses the goal");
    c.expect((q_t - 1) * 3 < 2 * (S + (q_t - 1)),
             "takeover quantity not minimal");

    // count-proportional registration path: k is minimal too
    auto vcp = snapshot_around(set, ConsensusFamily::ValidatorCountProportional);
    BigInt n = static_cast<std::uint64_t>(set.validators.size());
    auto est = attack_quantity(vcp, AttackGoal::Disruption);
    if (est.path == AttackPath::AcquireAndStake && est.feasible) {
      BigInt k = est.quantity.base_units();  // min stake 0 -> 1 unit each
      c.expect(k * 2 > n, "vcp disruption k does not block");
      c.expect((k - 1) * 2 <= n, "vcp disruption k not minimal");
    }
    if (!c.ok) return;
  }
}

void criterion_ethereum_anchor() {
  Criterion c{"3 ethereum anchor ($18B disruption, 32-token entry)"};
  auto s = load_snapshot(kFixtures / "cohort" / "ethereum.json");
  c.expect(attack_capital(s, AttackGoal::Disruption) ==
               UsdAmount::from_dollars(BigInt("18000000000")),
           "disruption capital != $18,000,000,000.00");
  auto entry = entry_capital(s);
  c.expect(entry.min_required_usd ==
               token_value_usd(TokenAmount::from_units(32, 18),
                               s.economics.price_usd_per_token),
           "entry capital != 32 x price");
  c.expect(entry.min_required_usd == UsdAmount::from_dollars(BigInt(64000)),
           "entry capital != $64,000.00");
}

void criterion_count_quorum_math() {
  Criterion c{"4 count-proportional quorum math + BNB coalition of 10"};
  for (std::uint64_t n = 1; n <= 100; ++n) {
    ValidatorSet set;
    set.min_stake_requirement = TokenAmount(BigInt(0), 0);
    for (std::uint64_t i = 0; i < n; ++i)
      set.validators.push_back({"v" + std::to_string(i),
                                TokenAmount(BigInt(5), 0)});
    c.expect(quorum_validator_count(
                 set, {ConsensusFamily::ValidatorCountProportional, {2, 3}}) ==
                 (2 * n + 2) / 3,
             "quorum count != ceil(2N/3) at N=" + std::to_string(n));
    if (!c.ok) return;
  }
  auto bnb = load_snapshot(kFixtures / "cohort" / "bnb-chain.json");
  c.expect(bnb.validator_set.max_count && *bnb.validator_set.max_count == 29,
           "bnb fixture must cap at 29");
  std::uint64_t n = bnb.validator_set.validators.size();
  std::uint64_t qvc = quorum_validator_count(bnb.validator_set, bnb.consensus);
  c.expect(n - qvc + 1 == 10, "blocking coalition is not 10 validators");
  auto est = attack_quantity(bnb, AttackGoal::Disruption);
  c.expect(est.path == AttackPath::AcquireExistingValidators,
           "expected acquire-existing path at the cap");
  // 10 smallest stakes, summed by hand from the fixture
  auto order = bnb.validator_set.validators;
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.stake.base_units() < b.stake.base_units();
  });
  BigInt expected = 0;
  for (int i = 0; i < 10; ++i) expected += order[i].stake.base_units();
  c.expect(est.quantity.base_units() == expected,
           "quantity != sum of the 10 smallest stakes");
}

void criterion_quorum_stake_ascending() {
  Criterion c{"5 quorum-stake ascending rule vs oracle (1000 sets)"};
  std::mt19937_64 rng(55555);
  int done = 0;
  while (done < 1000) {
    auto set = random_set(rng, 14);
    ++done;
    std::uint64_t n = set.validators.size();
    ConsensusModel model{ConsensusFamily::ValidatorCountProportional, {2, 3}};
    auto oracle = oracle_min_coalition(
        set, model, {CoalitionPredicate::ExactSize, {2, 3}, (2 * n + 2) / 3});
    c.expect(oracle.has_value(), "oracle found no coalition");
    c.expect(oracle &&
                 quorum_stake(set, model).base_units() == oracle->total_stake,
             "quorum_stake != oracle minimum at trial " + std::to_string(done));
    if (!c.ok) return;
  }
}

void criterion_heavy_tail() {
  Criterion c{"6 heavy-tail concentration on the Zipf(1.2) fixture"};
  auto s = load_snapshot(kFixtures / "extra" / "zipf_2000.json");
  std::uint64_t n = s.validator_set.validators.size();
  c.expect(n == 2000, "fixture must hold 2000 validators");
  std::uint64_t qvc = quorum_validator_count(s.validator_set, s.consensus);
  c.expect(qvc * 100 < 15 * n, "quorum count reaches 15% of N");
  // frozen regression number, first computed from this fixture
  c.expect(qvc == 27, "quorum count changed from the recorded 27");
  c.detail = "quorum count " + std::to_string(qvc) + "/2000";
}

void criterion_scoring_properties() {
  Criterion c{"7 scoring properties (500 random cohorts)"};
  std::mt19937_64 rng(777777);
  std::uniform_int_distribution<size_t> n_dist(3, 12);
  std::uniform_int_distribution<std::uint64_t> stake_dist(1, 1'000'000);
  std::uniform_int_distribution<std::uint64_t> hw_dist(1000, 50'000'000);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ChainSnapshot> cohort;
    size_t n = n_dist(rng);
    for (size_t i = 0; i < n; ++i) {
      ValidatorSet set;
      set.min_stake_requirement = TokenAmount(BigInt(0), 0);
      size_t v = 2 + stake_dist(rng) % 9;
      for (size_t j = 0; j < v; ++j)
        set.validators.push_back(
            {"v" + std::to_string(j), TokenAmount(BigInt(stake_dist(rng)), 0)});
      auto family = (stake_dist(rng) & 1)
                        ? ConsensusFamily::StakeProportional
                        : ConsensusFamily::ValidatorCountProportional;
      auto s = snapshot_around(std::move(set), family);
      s.chain_id = "chain" + std::to_string(i);
      s.costs.hw_monthly_cost_usd = UsdAmount(BigInt(hw_dist(rng)));
      cohort.push_back(std::move(s));
    }
    auto report = openness_report(cohort);
    for (const auto& ch : report.chains) {
      int sum = 0;
      for (const auto& sc : ch.scores) {
        c.expect(sc && *sc >= 1 && *sc <= 5, "axis score out of [1,5]");
        if (sc) sum += *sc;
      }
      c.expect(ch.total == sum && sum >= 5 && sum <= 25,
               "total out of [5,25]");
    }

    std::shuffle(cohort.begin(), cohort.end(), rng);
    auto permuted = openness_report(cohort);
    for (size_t i = 0; i < report.chains.size(); ++i)
      c.expect(report.chains[i].chain_id == permuted.chains[i].chain_id &&
                   report.chains[i].scores == permuted.chains[i].scores,
               "scores depend on cohort input order");

    auto rescaled = cohort;
    for (auto& s : rescaled) {
      s.economics.price_usd_per_token =
          PriceUsd::parse(s.economics.price_usd_per_token.text() + "000");
      s.costs.hw_monthly_cost_usd =
          UsdAmount(s.costs.hw_monthly_cost_usd.cents() * 1000);
    }
    auto scaled = openness_report(rescaled);
    for (size_t i = 0; i < report.chains.size(); ++i)
      c.expect(report.chains[i].scores == scaled.chains[i].scores,
               "USD rescaling changed a score");

    // improving one chain's operating cost never hurts it on that axis and
    // never helps the others
    auto improved = cohort;
    improved[0].costs.hw_monthly_cost_usd = UsdAmount(BigInt(1));
    auto after = openness_report(improved);
    constexpr unsigned axis = static_cast<unsigned>(Axis::OperatingCost);
    auto axis_score = [axis](const OpennessReport& r, const std::string& id) {
      for (const auto& ch : r.chains)
        if (ch.chain_id == id) return *ch.scores[axis];
      return -1;
    };
    const std::string& target = improved[0].chain_id;
    c.expect(axis_score(after, target) >= axis_score(report, target),
             "improvement lowered the improved chain's axis score");
    for (const auto& s : cohort)
      if (s.chain_id != target)
        c.expect(axis_score(after, s.chain_id) <=
                     axis_score(report, s.chain_id),
                 "improvement raised another chain's axis score");
    if (!c.ok) return;
  }
}

void criterion_cohort_ordering() {
  Criterion c{"8 cohort ordering (solana/avalanche above bnb/klaytn)"};
  auto cohort = load_cohort(kFixtures / "cohort");
  auto report = openness_report(cohort, "fixtures");
  auto total_of = [&report](const std::string& id) {
    for (const auto& ch : report.chains)
      if (ch.chain_id == id) return ch.total;
    return -1;
  };
  for (const char* open : {"solana", "avalanche"})
    for (const char* closed : {"bnb-chain", "klaytn"})
      c.expect(total_of(open) > total_of(closed),
               std::string(open) + " does not outrank " + closed);
  for (const auto& ch : report.chains) {
    if (ch.chain_id == "algorand") {
      c.expect(ch.partial, "algorand row must be partial");
      c.expect(!ch.scores[static_cast<unsigned>(Axis::Validators)].has_value(),
               "algorand must be excluded from the validators axis");
    } else {
      c.expect(!ch.partial, ch.chain_id + " unexpectedly partial");
    }
  }
}

int run_cli(const std::string& args) {
  std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

void criterion_roundtrip_determinism() {
  Criterion c{"9 round-trip identity + byte-deterministic CLI outputs"};
  std::mt19937_64 rng(909090);
  std::uniform_int_distribution<std::uint64_t> stake_dist(0, 1'000'000'000);
  std::uniform_int_distribution<unsigned> dec_dist(0, 30);
  for (int i = 0; i < 1000; ++i) {
    SnapshotDocument doc;
    unsigned dec = dec_dist(rng);
    ChainSnapshot& s = doc.snapshot;
    s.chain_id = "rt" + std::to_string(i);
    s.taken_at = "2023-03-31T00:00:00Z";
    s.consensus = {(i & 1) ? ConsensusFamily::StakeProportional
                           : ConsensusFamily::ValidatorCountProportional,
                   {2, 3}};
    s.validator_set.min_stake_requirement = TokenAmount(BigInt(0), dec);
    BigInt total = 0;
    for (int v = 0; v < 1 + i % 6; ++v) {
      BigInt st = BigInt(stake_dist(rng)) * stake_dist(rng);
      s.validator_set.validators.push_back(
          {"v" + std::to_string(v), TokenAmount(st, dec)});
      total += st;
    }
    if (i % 4 == 0) s.validator_set.max_count = s.validator_set.validators.size();
    s.economics.staked_total = TokenAmount(total, dec);
    s.economics.tradable_supply = TokenAmount(total * 2 + 7, dec);
    s.economics.circulating_supply = TokenAmount(total * 2 + 9, dec);
    s.economics.price_usd_per_token = PriceUsd::parse("0.137");
    s.costs.hw_monthly_cost_usd = UsdAmount(BigInt(stake_dist(rng)));
    s.costs.reward_apr = {1 + static_cast<std::int64_t>(i % 9), 100};
    for (const char* field :
         {"economics.circulating_supply", "economics.tradable_supply",
          "economics.staked_total", "economics.price_usd_per_token",
          "costs.hw_monthly_cost_usd_cents", "costs.reward_apr"})
      doc.provenance[field] = {"synthetic: acceptance", "2023-04-21T00:00:00Z"};

    std::string bytes = serialize_snapshot(doc);
    SnapshotDocument back = parse_snapshot(bytes);
    c.expect(serialize_snapshot(back) == bytes,
             "round-trip not identity at snapshot " + std::to_string(i));
    if (!c.ok) return;
  }

  auto tmp = std::filesystem::temp_directory_path() / "posopen_acceptance";
  std::filesystem::remove_all(tmp);
  std::filesystem::create_directories(tmp);
  std::string cohort = (kFixtures / "cohort").string();
  for (const char* mode : {"compare", "radar"}) {
    std::string a = (tmp / (std::string(mode) + "_a.out")).string();
    std::string b = (tmp / (std::string(mode) + "_b.out")).string();
    std::string flags = std::string(mode) == "compare" ? " --format machine" : "";
    int rc1 = run_cli(std::string(mode) + " " + cohort + flags + " --out " + a);
    int rc2 = run_cli(std::string(mode) + " " + cohort + flags + " --out " + b);
    c.expect(rc1 == 0 && rc2 == 0,
             std::string(mode) + " exited non-zero");
    c.expect(read_file(a) == read_file(b),
             std::string(mode) + " output differs between runs");
    c.expect(!read_file(a).empty(), std::string(mode) + " wrote no bytes");
  }
  std::filesystem::remove_all(tmp);
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_attack_minimality();
  criterion_ethereum_anchor();
  criterion_count_quorum_math();
  criterion_quorum_stake_ascending();
  criterion_heavy_tail();
  criterion_scoring_properties();
  criterion_cohort_ordering();
  criterion_roundtrip_determinism();
  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
