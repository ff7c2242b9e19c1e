/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posopen/ingest.hpp"
#include "posopen/metrics.hpp"
#include "posopen/radar.hpp"
#include "posopen/scoring.hpp"

namespace {

using namespace posopen;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

Ratio parse_ratio_flag(const std::string& text, const std::string& flag) {
  auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
    throw CLI::ValidationError(flag, "expected N/D, got '" + text + "'");
  try {
    Ratio r{std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
    if (r.num <= 0 || r.den <= 0)
      throw CLI::ValidationError(flag, "numerator and denominator must be positive");
    return r;
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError(flag, "expected N/D, got '" + text + "'");
  }
}

std::string rational_str(const BigRational& r) {
  // Fixed 6-digit decimal rendering alongside the exact fraction.
  BigInt scaled = div_round_half_up(numerator(r) * 1000000, denominator(r));
  std::string s = scaled.str();
  if (s.size() < 7) s.insert(s.begin(), 7 - s.size(), '0');
  s.insert(s.size() - 6, ".");
  return s + " (" + numerator(r).str() + "/" + denominator(r).str() + ")";
}

void write_output(const std::string& out_path, const std::string& bytes) {
  if (out_path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IO_ERROR, "cannot write " + out_path);
  out << bytes;
}

int run_validate(const std::vector<std::string>& paths) {
  bool any_violation = false;
  for (const auto& p : paths) {
    std::string bytes = read_file(p);
    try {
      SnapshotDocument doc = parse_snapshot(bytes);
      auto violations = validate_snapshot(doc.snapshot);
      if (violations.empty()) {
        std::cout << p << ": ok (" << doc.snapshot.chain_id << ")\n";
      } else {
        any_violation = true;
        for (const auto& v : violations)
          std::cout << p << ": " << v.code << " " << v.message << "\n";
      }
    } catch (const Error& e) {
      any_violation = true;
      std::cout << p << ": " << e.what() << "\n";
    }
  }
  return any_violation ? kExitDomain : kExitOk;
}

int run_analyze(const std::string& path, Ratio threshold,
                std::optional<Ratio> quorum, const std::string& format) {
  ChainSnapshot s = load_snapshot(path);
  if (quorum) s.consensus.quorum = *quorum;

  const auto& set = s.validator_set;
  auto entry = entry_capital(s);
  auto nak = nakamoto_coefficient(set, s.consensus, threshold);
  auto qvc = quorum_validator_count(set, s.consensus);
  auto qstake = quorum_stake(set, s.consensus);
  auto ratio = staking_ratio(s);
  auto fraction = consensus_stake_fraction(s);
  AttackEstimate disruption = attack_quantity(s, AttackGoal::Disruption);
  AttackEstimate takeover = attack_quantity(s, AttackGoal::Takeover);

  std::string break_even_usd = "infeasible (zero APR)";
  std::string break_even_tokens = "infeasible (zero APR)";
  try {
    auto be = break_even_stake(s);
    break_even_usd = be.stake_usd.to_string();
    break_even_tokens = be.stake_tokens.to_display_string();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZERO_APR) throw;
  }

  if (format == "machine") {
    nlohmann::ordered_json j{
        {"chain_id", s.chain_id},
        {"validator_count", set.validators.size()},
        {"validator_count_undisclosed", set.count_undisclosed},
        {"entry_capital_usd_cents", entry.min_required_usd.cents().str()},
        {"least_staked_usd_cents", entry.least_staked_usd.cents().str()},
        {"nakamoto_coefficient", nak},
        {"quorum_validator_count", qvc},
        {"quorum_stake_base_units", qstake.base_units().str()},
        {"staking_ratio",
         {{"num", numerator(ratio).str()}, {"den", denominator(ratio).str()}}},
        {"consensus_stake_fraction",
         {{"num", numerator(fraction).str()},
          {"den", denominator(fraction).str()}}},
        {"break_even_stake_usd_cents", break_even_usd},
        {"attacks",
         {{"disruption",
           {{"quantity_base_units", disruption.quantity.base_units().str()},
            {"capital_usd_cents", disruption.capital.cents().str()},
            {"path", attack_path_name(disruption.path)},
            {"feasible", disruption.feasible}}},
          {"takeover",
           {{"quantity_base_units", takeover.quantity.base_units().str()},
            {"capital_usd_cents", takeover.capital.cents().str()},
            {"path", attack_path_name(takeover.path)},
            {"feasible", takeover.feasible}}}}},
    };
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << "chain:                    " << s.chain_id << " (per "
            << validator_unit_name(s.validator_unit) << ")\n";
  std::cout << "consensus:                "
            << consensus_family_name(s.consensus.family) << ", quorum "
            << s.consensus.quorum.num << "/" << s.consensus.quorum.den << "\n";
  std::cout << "validators:               " << set.validators.size()
            << (set.count_undisclosed ? " (undisclosed; synthetic stand-in)" : "")
            << "\n";
  std::cout << "entry capital:            " << entry.min_required_usd.to_string()
            << "\n";
  std::cout << "least-staked validator:   " << entry.least_staked_usd.to_string()
            << "\n";
  std::cout << "nakamoto coefficient:     " << nak << "  (threshold "
            << threshold.num << "/" << threshold.den << ")\n";
  std::cout << "quorum validator count:   " << qvc << "\n";
  std::cout << "quorum stake:             " << qstake.to_display_string()
            << " tokens\n";
  std::cout << "staking ratio:            " << rational_str(ratio) << "\n";
  std::cout << "consensus stake fraction: " << rational_str(fraction) << "\n";
  std::cout << "break-even stake:         " << break_even_usd;
  if (break_even_usd[0] == '$')
    std::cout << " = " << break_even_tokens << " tokens";
  std::cout << "\n";
  for (auto [goal, est] : {std::pair{AttackGoal::Disruption, disruption},
                           std::pair{AttackGoal::Takeover, takeover}}) {
    std::cout << "attack (" << attack_goal_name(goal)
              << "):      " << (goal == AttackGoal::Disruption ? " " : "  ")
              << est.quantity.to_display_string() << " tokens = "
              << est.capital.to_string() << " via " << attack_path_name(est.path)
              << (est.feasible ? "" : " [infeasible]") << "\n";
  }
  return kExitOk;
}

int run_attack_cost(const std::string& path, const std::string& goal_name,
                    const std::string& costing_name,
                    std::optional<Ratio> quorum) {
  ChainSnapshot s = load_snapshot(path);
  if (quorum) s.consensus.quorum = *quorum;
  AttackGoal goal = goal_name == "takeover" ? AttackGoal::Takeover
                                            : AttackGoal::Disruption;
  AttackOptions opts;
  opts.costing = costing_name == "least-staked" ? AttackCosting::LeastStaked
                                                : AttackCosting::ProtocolMin;
  AttackEstimate est = attack_quantity(s, goal, opts);
  std::cout << "chain:    " << s.chain_id << "\n";
  std::cout << "goal:     " << attack_goal_name(goal) << "\n";
  std::cout << "quantity: " << est.quantity.to_display_string() << " tokens\n";
  std::cout << "capital:  " << est.capital.to_string() << "\n";
  std::cout << "path:     " << attack_path_name(est.path) << "\n";
  std::cout << "feasible: " << (est.feasible ? "yes" : "no") << "\n";
  return kExitOk;
}

int run_compare(const std::string& dir, Ratio threshold,
                const std::string& format, const std::string& out_path) {
  auto cohort = load_cohort(dir);
  ScoringOptions opts;
  opts.nakamoto_threshold = threshold;
  OpennessReport report = openness_report(
      cohort, std::filesystem::path(dir).filename().string(), opts);
  ReportFormat fmt =
      format == "machine" ? ReportFormat::Machine : ReportFormat::Human;
  write_output(out_path, export_report(report, fmt));
  return kExitOk;
}

int run_radar(const std::string& dir, Ratio threshold,
              const std::string& out_path) {
  auto cohort = load_cohort(dir);
  ScoringOptions opts;
  opts.nakamoto_threshold = threshold;
  OpennessReport report = openness_report(
      cohort, std::filesystem::path(dir).filename().string(), opts);
  write_output(out_path, radar_svg(report));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof-of-Stake network openness analyzer"};
  app.require_subcommand(1);

  std::vector<std::string> paths;
  std::string path, dir, out_path;
  std::string threshold_text = "1/3";
  std::string quorum_text;
  std::string goal = "disruption";
  std::string costing = "protocol-min";
  std::string format = "human";

  auto* validate = app.add_subcommand("validate", "Validate snapshot files");
  validate->add_option("paths", paths, "Snapshot files")->required();

  auto* analyze = app.add_subcommand("analyze", "Per-chain metric report");
  analyze->add_option("path", path, "Snapshot file")->required();
  analyze->add_option("--threshold", threshold_text, "Nakamoto threshold N/D");
  analyze->add_option("--quorum", quorum_text, "Override quorum N/D");
  analyze->add_option("--format", format, "human|machine")
      ->check(CLI::IsMember({"human", "machine"}));

  auto* attack = app.add_subcommand("attack-cost", "Attack cost estimate");
  attack->add_option("path", path, "Snapshot file")->required();
  attack->add_option("--goal", goal, "disruption|takeover")
      ->check(CLI::IsMember({"disruption", "takeover"}));
  attack->add_option("--costing", costing, "protocol-min|least-staked")
      ->check(CLI::IsMember({"protocol-min", "least-staked"}));
  attack->add_option("--quorum", quorum_text, "Override quorum N/D");

  auto* compare = app.add_subcommand("compare", "Score a cohort directory");
  compare->add_option("directory", dir, "Cohort directory")->required();
  compare->add_option("--threshold", threshold_text, "Nakamoto threshold N/D");
  compare->add_option("--format", format, "human|machine")
      ->check(CLI::IsMember({"human", "machine"}));
  compare->add_option("--out", out_path, "Output file (default stdout)");

  auto* radar = app.add_subcommand("radar", "Emit a radar-chart SVG");
  radar->add_option("directory", dir, "Cohort directory")->required();
  radar->add_option("--threshold", threshold_text, "Nakamoto threshold N/D");
  radar->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    Ratio threshold = parse_ratio_flag(threshold_text, "--threshold");
    std::optional<Ratio> quorum;
    if (!quorum_text.empty())
      quorum = parse_ratio_flag(quorum_text, "--quorum");

    if (validate->parsed()) return run_validate(paths);
    if (analyze->parsed()) return run_analyze(path, threshold, quorum, format);
    if (attack->parsed()) return run_attack_cost(path, goal, costing, quorum);
    if (compare->parsed()) return run_compare(dir, threshold, format, out_path);
    if (radar->parsed()) return run_radar(dir, threshold, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const posopen::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == posopen::ErrorCode::IO_ERROR ? kExitUsage : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
