#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schreier/family.hpp"
#include "schreier/finset.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

/// Non-decreasing function N -> N, tabulated on 1..size() and extended as a
/// constant beyond the last tabulated value.
class GrowthFn {
 public:
  GrowthFn() = default;
  /// Validates monotonicity; throws std::invalid_argument otherwise.
  explicit GrowthFn(std::vector<std::uint64_t> values);

  std::uint64_t operator()(std::uint64_t n) const;
  std::size_t tabulated() const { return values_.size(); }
  const std::vector<std::uint64_t>& values() const { return values_; }

 private:
  std::vector<std::uint64_t> values_;
};

/// New policy with rule (beta, m) -> base(beta, m) + g(m). Adding a natural
/// keeps every approximating term a successor and the sequence increasing.
FundSeqPolicy shift_policy(const FundSeqPolicy& base, const GrowthFn& g);

/// Per-ordinal shift: for beta in h_map the rule is base(beta, m) + h_beta(m),
/// otherwise base. Keys must be limit ordinals.
FundSeqPolicy boost_policy(const FundSeqPolicy& base, const std::map<Ordinal, GrowthFn>& h_map);

// ---------------------------------------------------------------------------
// Reports

struct ChainInclusionStep {
  std::uint64_t m = 0;
  Ordinal beta_m;
  Ordinal beta_m1;
  bool holds = false;
  std::vector<FinSet> counterexamples;  // members of S_{beta_m} missing from S_{beta_{m+1}}
};

struct ChainInclusionReport {
  Ordinal beta;
  std::uint64_t m_max = 0;
  std::uint32_t window = 0;
  std::vector<ChainInclusionStep> steps;
  bool all_hold() const;
  std::string text() const;
};

/// Checks S_{beta_m} subset of S_{beta_{m+1}} on {1..N} for 1 <= m < m_max
/// via the enumeration oracle. Outcomes are recorded, never presumed.
ChainInclusionReport check_chain_inclusion(const FundSeqPolicy& policy, const Ordinal& beta,
                                           std::uint64_t m_max, std::uint32_t n,
                                           std::uint32_t bound = 14);

struct UniformBoundEntry {
  std::size_t index = 0;        // position of h in the input list
  bool bounded = false;         // h(n) < g(n) holds for all N_h < n <= L
  std::uint64_t threshold = 0;  // the least such N_h when bounded
};

struct UniformBoundReport {
  std::size_t tabulation = 0;  // common length L
  std::vector<UniformBoundEntry> entries;
  bool all_bounded() const;
  std::string text() const;
};

/// For each h in H, the least N_h <= L with h(n) < g(n) for all N_h < n <= L,
/// or "unbounded within L". All functions must share the tabulation length.
UniformBoundReport uniform_bound_check(const std::vector<GrowthFn>& hs, const GrowthFn& g);

struct GapScanCell {
  Ordinal alpha;
  GValue value = GValue::overflow();
};

struct GapScanRow {
  std::uint64_t n = 0;
  std::vector<GapScanCell> cells;
  GValue max_g = GValue::overflow();  // max over the row; gap = {n .. max_g+1}
};

struct GapScanTable {
  std::vector<Ordinal> alphas;
  std::vector<GapScanRow> rows;
  std::string text() const;
};

/// For each n <= n_max: G(n, alpha) per alpha, the row maximum M, and thereby
/// the certified non-member interval {n,...,M+1} for the union family.
/// Overflow propagates per cell.
GapScanTable interval_gap_scan(const std::vector<Ordinal>& alphas, const FundSeqPolicy& policy,
                               std::uint64_t n_max, const BigNat& cap = kDefaultGCap);

nlohmann::ordered_json to_json(const ChainInclusionReport& report);
nlohmann::ordered_json to_json(const UniformBoundReport& report);
nlohmann::ordered_json to_json(const GapScanTable& table);

}  // namespace schreier
