/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POSOPEN_INGEST_HPP
#define POSOPEN_INGEST_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "posopen/model.hpp"
#include "posopen/scoring.hpp"

namespace posopen {

constexpr int kSnapshotFormatVersion = 1;
constexpr int kReportVersion = 1;

/// Where a data point came from: a URL or citation, and when it was read.
struct ProvenanceEntry {
  std::string source;
  std::string retrieved_at;
  bool operator==(const ProvenanceEntry&) const = default;
};

/// One on-disk snapshot: the chain state plus per-field provenance.
struct SnapshotDocument {
  int format_version = kSnapshotFormatVersion;
  ChainSnapshot snapshot;
  std::map<std::string, ProvenanceEntry> provenance;
};

namespace detail {

using json = nlohmann::ordered_json;

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      throw Error(ErrorCode::PARSE_ERROR,
                  "unknown field '" + it.key() + "' in " + where);
}

inline const json& require(const json& obj, const std::string& key,
                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw Error(ErrorCode::PARSE_ERROR,
                "missing field '" + key + "' in " + where);
  return *it;
}

inline BigInt parse_big(const json& v, const std::string& where) {
  if (!v.is_string())
    throw Error(ErrorCode::PARSE_ERROR,
                where + " must be a decimal string, not a number literal");
  const std::string& s = v.get_ref<const std::string&>();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::PARSE_ERROR,
                where + " is not a non-negative decimal string: '" + s + "'");
  return BigInt(s);
}

inline TokenAmount parse_token(const json& v, const std::string& where) {
  if (!v.is_object())
    throw Error(ErrorCode::PARSE_ERROR, where + " must be an object");
  reject_unknown_keys(v, {"base_units", "decimals"}, where);
  BigInt base = parse_big(require(v, "base_units", where), where + ".base_units");
  const json& dec = require(v, "decimals", where);
  if (!dec.is_number_unsigned() || dec.get<std::uint64_t>() > 30)
    throw Error(ErrorCode::PARSE_ERROR,
                where + ".decimals must be an integer in [0,30]");
  return TokenAmount(base, dec.get<unsigned>());
}

inline json token_json(const TokenAmount& t) {
  return json{{"base_units", t.base_units().str()}, {"decimals", t.decimals()}};
}

inline Ratio parse_ratio(const json& v, const std::string& where) {
  if (!v.is_object())
    throw Error(ErrorCode::PARSE_ERROR, where + " must be an object");
  reject_unknown_keys(v, {"num", "den"}, where);
  const json& num = require(v, "num", where);
  const json& den = require(v, "den", where);
  if (!num.is_number_integer() || !den.is_number_integer())
    throw Error(ErrorCode::PARSE_ERROR, where + " num/den must be integers");
  return Ratio{num.get<std::int64_t>(), den.get<std::int64_t>()};
}

inline json ratio_json(const Ratio& r) {
  return json{{"num", r.num}, {"den", r.den}};
}

}  // namespace detail

inline detail::json snapshot_to_json(const SnapshotDocument& doc) {
  using detail::json;
  const ChainSnapshot& s = doc.snapshot;
  json validators = json::array();
  for (const auto& v : s.validator_set.validators)
    validators.push_back(
        {{"id", v.id}, {"stake", detail::token_json(v.stake)}});

  json vset{
      {"min_stake_requirement",
       detail::token_json(s.validator_set.min_stake_requirement)},
      {"validators", std::move(validators)}};
  if (s.validator_set.max_count) vset["max_count"] = *s.validator_set.max_count;
  if (s.validator_set.min_stake_waived) vset["min_stake_waived"] = true;
  if (s.validator_set.count_undisclosed) vset["count_undisclosed"] = true;

  json prov = json::object();
  for (const auto& [field, entry] : doc.provenance)
    prov[field] = {{"source", entry.source},
                   {"retrieved_at", entry.retrieved_at}};

  return json{
      {"format_version", doc.format_version},
      {"chain",
       {{"chain_id", s.chain_id},
        {"taken_at", s.taken_at},
        {"validator_unit", validator_unit_name(s.validator_unit)}}},
      {"consensus",
       {{"family", consensus_family_name(s.consensus.family)},
        {"quorum", detail::ratio_json(s.consensus.quorum)}}},
      {"validator_set", std::move(vset)},
      {"economics",
       {{"circulating_supply", detail::token_json(s.economics.circulating_supply)},
        {"tradable_supply", detail::token_json(s.economics.tradable_supply)},
        {"staked_total", detail::token_json(s.economics.staked_total)},
        {"price_usd_per_token", s.economics.price_usd_per_token.text()}}},
      {"costs",
       {{"hw_monthly_cost_usd_cents", s.costs.hw_monthly_cost_usd.cents().str()},
        {"reward_apr", detail::ratio_json(s.costs.reward_apr)}}},
      {"provenance", std::move(prov)},
  };
}

/// Canonical bytes for a snapshot document. Round-trips exactly.
inline std::string serialize_snapshot(const SnapshotDocument& doc) {
  return snapshot_to_json(doc).dump(2) + "\n";
}

/// Strict parse of a snapshot document: unknown fields, float literals for
/// token amounts, and unsupported versions are all rejected with context.
inline SnapshotDocument parse_snapshot(const std::string& bytes) {
  using detail::json;
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::PARSE_ERROR, e.what());
  }
  if (!root.is_object())
    throw Error(ErrorCode::PARSE_ERROR, "document root must be an object");
  detail::reject_unknown_keys(root,
                              {"format_version", "chain", "consensus",
                               "validator_set", "economics", "costs",
                               "provenance"},
                              "document root");

  SnapshotDocument doc;
  const json& ver = detail::require(root, "format_version", "document root");
  if (!ver.is_number_integer())
    throw Error(ErrorCode::PARSE_ERROR, "format_version must be an integer");
  doc.format_version = ver.get<int>();
  if (doc.format_version != kSnapshotFormatVersion)
    throw Error(ErrorCode::UNSUPPORTED_VERSION,
                "unsupported format_version " +
                    std::to_string(doc.format_version));

  ChainSnapshot& s = doc.snapshot;

  const json& chain = detail::require(root, "chain", "document root");
  detail::reject_unknown_keys(chain, {"chain_id", "taken_at", "validator_unit"},
                              "chain");
  s.chain_id = detail::require(chain, "chain_id", "chain").get<std::string>();
  s.taken_at = detail::require(chain, "taken_at", "chain").get<std::string>();
  std::string unit =
      detail::require(chain, "validator_unit", "chain").get<std::string>();
  if (unit == "validator") s.validator_unit = ValidatorUnit::Validator;
  else if (unit == "node") s.validator_unit = ValidatorUnit::Node;
  else if (unit == "client") s.validator_unit = ValidatorUnit::Client;
  else
    throw Error(ErrorCode::PARSE_ERROR, "unknown validator_unit '" + unit + "'");

  const json& cons = detail::require(root, "consensus", "document root");
  detail::reject_unknown_keys(cons, {"family", "quorum"}, "consensus");
  std::string family =
      detail::require(cons, "family", "consensus").get<std::string>();
  if (family == "stake_proportional")
    s.consensus.family = ConsensusFamily::StakeProportional;
  else if (family == "validator_count")
    s.consensus.family = ConsensusFamily::ValidatorCountProportional;
  else
    throw Error(ErrorCode::PARSE_ERROR,
                "unknown consensus family '" + family + "'");
  s.consensus.quorum =
      detail::parse_ratio(detail::require(cons, "quorum", "consensus"),
                          "consensus.quorum");

  const json& vset = detail::require(root, "validator_set", "document root");
  detail::reject_unknown_keys(vset,
                              {"validators", "max_count",
                               "min_stake_requirement", "min_stake_waived",
                               "count_undisclosed"},
                              "validator_set");
  s.validator_set.min_stake_requirement = detail::parse_token(
      detail::require(vset, "min_stake_requirement", "validator_set"),
      "validator_set.min_stake_requirement");
  if (vset.contains("max_count")) {
    if (!vset["max_count"].is_number_unsigned() ||
        vset["max_count"].get<std::uint64_t>() == 0)
      throw Error(ErrorCode::PARSE_ERROR,
                  "validator_set.max_count must be a positive integer");
    s.validator_set.max_count = vset["max_count"].get<std::uint64_t>();
  }
  if (vset.contains("min_stake_waived")) {
    if (!vset["min_stake_waived"].is_boolean())
      throw Error(ErrorCode::PARSE_ERROR,
                  "validator_set.min_stake_waived must be a boolean");
    s.validator_set.min_stake_waived = vset["min_stake_waived"].get<bool>();
  }
  if (vset.contains("count_undisclosed")) {
    if (!vset["count_undisclosed"].is_boolean())
      throw Error(ErrorCode::PARSE_ERROR,
                  "validator_set.count_undisclosed must be a boolean");
    s.validator_set.count_undisclosed = vset["count_undisclosed"].get<bool>();
  }
  const json& vals = detail::require(vset, "validators", "validator_set");
  if (!vals.is_array())
    throw Error(ErrorCode::PARSE_ERROR, "validator_set.validators must be an array");
  for (size_t i = 0; i < vals.size(); ++i) {
    const json& v = vals[i];
    std::string where = "validators[" + std::to_string(i) + "]";
    detail::reject_unknown_keys(v, {"id", "stake"}, where);
    Validator out;
    out.id = detail::require(v, "id", where).get<std::string>();
    out.stake = detail::parse_token(detail::require(v, "stake", where),
                                    where + ".stake");
    s.validator_set.validators.push_back(std::move(out));
  }

  const json& econ = detail::require(root, "economics", "document root");
  detail::reject_unknown_keys(econ,
                              {"circulating_supply", "tradable_supply",
                               "staked_total", "price_usd_per_token"},
                              "economics");
  s.economics.circulating_supply = detail::parse_token(
      detail::require(econ, "circulating_supply", "economics"),
      "economics.circulating_supply");
  s.economics.tradable_supply =
      detail::parse_token(detail::require(econ, "tradable_supply", "economics"),
                          "economics.tradable_supply");
  s.economics.staked_total =
      detail::parse_token(detail::require(econ, "staked_total", "economics"),
                          "economics.staked_total");
  const json& price = detail::require(econ, "price_usd_per_token", "economics");
  if (!price.is_string())
    throw Error(ErrorCode::PARSE_ERROR,
                "economics.price_usd_per_token must be a decimal string");
  s.economics.price_usd_per_token =
      PriceUsd::parse(price.get<std::string>());

  const json& costs = detail::require(root, "costs", "document root");
  detail::reject_unknown_keys(costs, {"hw_monthly_cost_usd_cents", "reward_apr"},
                              "costs");
  s.costs.hw_monthly_cost_usd = UsdAmount(detail::parse_big(
      detail::require(costs, "hw_monthly_cost_usd_cents", "costs"),
      "costs.hw_monthly_cost_usd_cents"));
  s.costs.reward_apr = detail::parse_ratio(
      detail::require(costs, "reward_apr", "costs"), "costs.reward_apr");

  const json& prov = detail::require(root, "provenance", "document root");
  if (!prov.is_object())
    throw Error(ErrorCode::PARSE_ERROR, "provenance must be an object");
  for (auto it = prov.begin(); it != prov.end(); ++it) {
    const json& e = *it;
    std::string where = "provenance." + it.key();
    detail::reject_unknown_keys(e, {"source", "retrieved_at"}, where);
    doc.provenance[it.key()] = ProvenanceEntry{
        detail::require(e, "source", where).get<std::string>(),
        detail::require(e, "retrieved_at", where).get<std::string>()};
  }
  // Every economics and cost field must be sourced.
  for (const char* field :
       {"economics.circulating_supply", "economics.tradable_supply",
        "economics.staked_total", "economics.price_usd_per_token",
        "costs.hw_monthly_cost_usd_cents", "costs.reward_apr"}) {
    if (!doc.provenance.count(field))
      throw Error(ErrorCode::PARSE_ERROR,
                  std::string("missing provenance entry for ") + field);
  }
  return doc;
}

/// Parse + validate. Throws VALIDATION_ERROR with every violation listed.
inline ChainSnapshot load_snapshot_bytes(const std::string& bytes) {
  SnapshotDocument doc = parse_snapshot(bytes);
  auto violations = validate_snapshot(doc.snapshot);
  if (!violations.empty()) {
    std::string msg;
    for (const auto& v : violations) {
      if (!msg.empty()) msg += "; ";
      msg += v.code + " (" + v.message + ")";
    }
    throw Error(ErrorCode::VALIDATION_ERROR, msg);
  }
  return doc.snapshot;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IO_ERROR, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ChainSnapshot load_snapshot(const std::filesystem::path& path) {
  try {
    return load_snapshot_bytes(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IO_ERROR) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

/// Load every *.json snapshot in a directory, name-sorted. Duplicate
/// chain_ids are rejected; cohort-size rules are scoring's concern.
inline std::vector<ChainSnapshot> load_cohort(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorCode::IO_ERROR, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<ChainSnapshot> out;
  std::set<std::string> ids;
  for (const auto& f : files) {
    ChainSnapshot s = load_snapshot(f);
    if (!ids.insert(s.chain_id).second)
      throw Error(ErrorCode::DUPLICATE_CHAIN_ID,
                  "chain_id '" + s.chain_id + "' appears more than once (" +
                      f.string() + ")");
    out.push_back(std::move(s));
  }
  return out;
}

enum class ReportFormat { Machine, Human };

/// Stable report serialization. Machine output is versioned JSON; human
/// output is a fixed-width score table with a footnote for partial chains.
inline std::string export_report(const OpennessReport& report,
                                 ReportFormat format) {
  using detail::json;
  if (format == ReportFormat::Machine) {
    json axes = json::array();
    for (unsigned i = 0; i < kAxisCount; ++i)
      axes.push_back(axis_name(static_cast<Axis>(i)));
    json chains = json::array();
    json radar = json::array();
    for (size_t i = 0; i < report.chains.size(); ++i) {
      const auto& c = report.chains[i];
      json scores = json::array();
      for (const auto& s : c.scores)
        scores.push_back(s ? json(*s) : json(nullptr));
      chains.push_back({{"chain_id", c.chain_id},
                        {"scores", std::move(scores)},
                        {"total", c.total},
                        {"partial", c.partial}});
      json row = json::array();
      for (int v : report.radar[i]) row.push_back(v);
      radar.push_back({{"chain_id", c.chain_id}, {"values", std::move(row)}});
    }
    json root{{"report_version", kReportVersion},
              {"cohort_id", report.cohort_id},
              {"axes", std::move(axes)},
              {"chains", std::move(chains)},
              {"radar", std::move(radar)}};
    return root.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "Openness scores, cohort '" << report.cohort_id
      << "' (1 = least open, 5 = most open)\n\n";
  auto pad = [](std::string s, size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  size_t idw = 8;
  for (const auto& c : report.chains) idw = std::max(idw, c.chain_id.size() + 1);
  out << pad("chain", idw) << pad("validators", 12) << pad("entry", 7)
      << pad("concentr.", 11) << pad("op.cost", 9) << pad("econ.stab.", 12)
      << "total\n";
  bool any_partial = false;
  for (const auto& c : report.chains) {
    out << pad(c.chain_id, idw);
    const size_t widths[kAxisCount] = {12, 7, 11, 9, 12};
    for (unsigned i = 0; i < kAxisCount; ++i) {
      std::string cell = c.scores[i] ? std::to_string(*c.scores[i]) : "-";
      out << pad(cell, widths[i]);
    }
    out << c.total;
    if (c.partial) {
      out << "*";
      any_partial = true;
    }
    out << "\n";
  }
  if (any_partial)
    out << "\n* partial: one or more axes undisclosed and excluded from the "
           "total\n";
  return out.str();
}

}  // namespace posopen

#endif  // POSOPEN_INGEST_HPP
