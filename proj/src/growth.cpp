#include "schreier/growth.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "schreier/errors.hpp"

namespace schreier {

GrowthFn::GrowthFn(std::vector<std::uint64_t> values) : values_(std::move(values)) {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i - 1] > values_[i])
      throw std::invalid_argument("GrowthFn: values must be non-decreasing");
}

std::uint64_t GrowthFn::operator()(std::uint64_t n) const {
  if (values_.empty()) return 0;
  if (n == 0) throw std::invalid_argument("GrowthFn: domain starts at 1");
  return n <= values_.size() ? values_[n - 1] : values_.back();
}

FundSeqPolicy shift_policy(const FundSeqPolicy& base, const GrowthFn& g) {
  return FundSeqPolicy(base.name() + "+shift",
                       [base, g](const Ordinal& beta, std::uint64_t m) {
                         return base(beta, m) + Ordinal::natural(g(m));
                       });
}

FundSeqPolicy boost_policy(const FundSeqPolicy& base, const std::map<Ordinal, GrowthFn>& h_map) {
  for (const auto& [beta, h] : h_map)
    if (beta.kind() != Ordinal::Kind::limit)
      throw std::invalid_argument("boost_policy: key " + beta.str() + " is not a limit ordinal");
  return FundSeqPolicy(base.name() + "+boost",
                       [base, h_map](const Ordinal& beta, std::uint64_t m) {
                         Ordinal v = base(beta, m);
                         auto it = h_map.find(beta);
                         if (it != h_map.end()) v = v + Ordinal::natural(it->second(m));
                         return v;
                       });
}

// ---------------------------------------------------------------------------

bool ChainInclusionReport::all_hold() const {
  return std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.holds; });
}

std::string ChainInclusionReport::text() const {
  std::string out = "chain inclusion for beta=" + beta.str() + " on {1.." +
                    std::to_string(window) + "}\n";
  for (const auto& s : steps) {
    out += "  S_" + s.beta_m.str() + " subset S_" + s.beta_m1.str() + ": ";
    if (s.holds) {
      out += "holds\n";
    } else {
      out += "FAILS, e.g.";
      for (const auto& c : s.counterexamples) out += " " + c.str();
      out += "\n";
    }
  }
  if (steps.empty()) out += "  (vacuous: m_max <= 1)\n";
  return out;
}

ChainInclusionReport check_chain_inclusion(const FundSeqPolicy& policy, const Ordinal& beta,
                                           std::uint64_t m_max, std::uint32_t n,
                                           std::uint32_t bound) {
  if (beta.kind() != Ordinal::Kind::limit)
    throw std::invalid_argument("check_chain_inclusion: beta must be a limit ordinal");
  ChainInclusionReport report;
  report.beta = beta;
  report.m_max = m_max;
  report.window = n;
  FamilyEnumerator en(n, policy, bound);
  for (std::uint64_t m = 1; m + 1 <= m_max; ++m) {
    ChainInclusionStep step;
    step.m = m;
    step.beta_m = fund_seq(policy, beta, m);
    step.beta_m1 = fund_seq(policy, beta, m + 1);
    const auto& lo = en.table(step.beta_m);
    const auto& hi = en.table(step.beta_m1);
    step.holds = true;
    for (std::uint32_t mask = 0; mask < lo.size(); ++mask) {
      if (lo[mask] && !hi[mask]) {
        step.holds = false;
        if (step.counterexamples.size() < 5)
          step.counterexamples.push_back(FamilyEnumerator::mask_to_set(mask));
      }
    }
    report.steps.push_back(std::move(step));
  }
  return report;
}

bool UniformBoundReport::all_bounded() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.bounded; });
}

std::string UniformBoundReport::text() const {
  std::string out =
      "uniform boundedness over tabulation 1.." + std::to_string(tabulation) + "\n";
  for (const auto& e : entries) {
    out += "  h[" + std::to_string(e.index) + "]: ";
    out += e.bounded ? "N_h = " + std::to_string(e.threshold)
                     : std::string("unbounded within L");
    out += "\n";
  }
  return out;
}

UniformBoundReport uniform_bound_check(const std::vector<GrowthFn>& hs, const GrowthFn& g) {
  UniformBoundReport report;
  report.tabulation = g.tabulated();
  for (const auto& h : hs)
    if (h.tabulated() != report.tabulation)
      throw std::invalid_argument("uniform_bound_check: tabulation lengths differ");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const std::uint64_t L = report.tabulation;
    std::uint64_t last_bad = 0;
    for (std::uint64_t n = 1; n <= L; ++n)
      if (hs[i](n) >= g(n)) last_bad = n;
    UniformBoundEntry e;
    e.index = i;
    // A violation at L itself leaves no usable threshold below L.
    e.bounded = last_bad < L;
    e.threshold = e.bounded ? last_bad : 0;
    report.entries.push_back(e);
  }
  return report;
}

std::string GapScanTable::text() const {
  std::string out = "n";
  for (const auto& a : alphas) out += " | G(n," + a.str() + ")";
  out += " | gap interval\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n);
    for (const auto& c : row.cells) out += " | " + c.value.str();
    if (row.max_g.is_overflow())
      out += " | overflow\n";
    else
      out += " | {" + std::to_string(row.n) + ".." + BigNat(row.max_g.value() + 1).str() + "}\n";
  }
  return out;
}

nlohmann::ordered_json to_json(const ChainInclusionReport& report) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& s : report.steps) {
    nlohmann::ordered_json sj{{"m", s.m},
                              {"beta_m", s.beta_m.str()},
                              {"beta_m_plus_1", s.beta_m1.str()},
                              {"holds", s.holds}};
    if (!s.holds) {
      nlohmann::ordered_json cs = nlohmann::ordered_json::array();
      for (const auto& c : s.counterexamples) cs.push_back(c.str());
      sj["counterexamples"] = std::move(cs);
    }
    steps.push_back(std::move(sj));
  }
  return {{"beta", report.beta.str()},
          {"window", report.window},
          {"steps", std::move(steps)},
          {"all_hold", report.all_hold()}};
}

nlohmann::ordered_json to_json(const UniformBoundReport& report) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json ej{{"index", e.index}, {"bounded", e.bounded}};
    if (e.bounded) ej["N_h"] = e.threshold;
    entries.push_back(std::move(ej));
  }
  return {{"tabulation", report.tabulation},
          {"entries", std::move(entries)},
          {"all_bounded", report.all_bounded()}};
}

nlohmann::ordered_json to_json(const GapScanTable& table) {
  nlohmann::ordered_json alphas = nlohmann::ordered_json::array();
  for (const auto& a : table.alphas) alphas.push_back(a.str());
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& c : row.cells) cells.push_back(c.value.str());
    nlohmann::ordered_json rj{{"n", row.n}, {"G", std::move(cells)}};
    if (row.max_g.is_overflow()) {
      rj["gap"] = "overflow";
    } else {
      rj["gap"] = "{" + std::to_string(row.n) + ".." + BigNat(row.max_g.value() + 1).str() + "}";
    }
    rows.push_back(std::move(rj));
  }
  return {{"alphas", std::move(alphas)}, {"rows", std::move(rows)}};
}

GapScanTable interval_gap_scan(const std::vector<Ordinal>& alphas, const FundSeqPolicy& policy,
                               std::uint64_t n_max, const BigNat& cap) {
  GapScanTable table;
  table.alphas = alphas;
  std::vector<std::unique_ptr<SchreierHandle>> handles;
  handles.reserve(alphas.size());
  for (const auto& a : alphas) handles.push_back(std::make_unique<SchreierHandle>(a, policy));
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    GapScanRow row;
    row.n = n;
    bool overflow = false;
    BigNat best = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      GValue v = handles[i]->g_value(BigNat(n), cap);
      if (v.is_overflow())
        overflow = true;
      else
        best = std::max(best, v.value());
      row.cells.push_back({alphas[i], v});
    }
    row.max_g = (overflow || alphas.empty()) ? GValue::overflow() : GValue::of(best);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace schreier
