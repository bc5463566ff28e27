#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "schreier/family.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

/// One verified (or failed) grid cell. `witness` is null on pass and carries
/// a replayable counterexample payload on fail.
struct CheckCell {
  nlohmann::ordered_json params;
  bool pass = false;
  nlohmann::ordered_json witness;
  std::int64_t micros = 0;
};

struct CheckReport {
  std::string name;
  nlohmann::ordered_json grid;
  std::vector<CheckCell> cells;

  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
  nlohmann::ordered_json to_json(bool timing) const;
};

/// Knobs shared by the whole campaign. Checks are pure and deterministic
/// given a config; rerunning a failing cell reproduces the same witness.
struct CampaignConfig {
  FundSeqPolicy policy = default_policy();
  std::uint32_t enum_window = 12;  // N for enumeration-backed cells
  std::uint32_t n_max = 8;         // n range of the F grids
  std::uint32_t scan_limit = 30;   // find_separation horizon
  BigNat g_cap = kDefaultGCap;
};

/// Ordinal sample used by the default grids: 0..5, w, w+1, w+5, w*2, w*3,
/// w^2, w^2+w, w^2*2, w^3 — every recursion branch (zero, successor, limit,
/// nested limit) is exercised.
std::vector<Ordinal> default_ordinal_grid();

CheckReport check_lemma_2_1(const CampaignConfig& config);   // F recursion clauses
CheckReport check_cor_2_2(const CampaignConfig& config);     // F(n, alpha+m) >= m
CheckReport check_lemma_2_3(const CampaignConfig& config);   // eventual strict domination
CheckReport check_lemma_3_1(const CampaignConfig& config);   // {n..n+F} bridge + g >= n+F
CheckReport check_lemma_4_1(const CampaignConfig& config);   // inclusion propagation
CheckReport check_lemma_4_3(const CampaignConfig& config);   // boosted policies reach h
CheckReport check_g_definition(const CampaignConfig& config);// G closed forms + both props

std::vector<std::string> check_names();
CheckReport run_check(const std::string& name, const CampaignConfig& config);
/// Full campaign, reports in name order.
std::vector<CheckReport> run_all(const CampaignConfig& config);

std::size_t total_failures(const std::vector<CheckReport>& reports);
nlohmann::ordered_json campaign_summary(const std::vector<CheckReport>& reports,
                                        const CampaignConfig& config, bool timing);

}  // namespace schreier
