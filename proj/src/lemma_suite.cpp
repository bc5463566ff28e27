#include "schreier/lemma_suite.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>

#include "schreier/growth.hpp"
#include "schreier/ordtree.hpp"

namespace schreier {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t micros_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
}

// Handles are cached per ordinal so the member memo is shared across cells.
class HandleCache {
 public:
  explicit HandleCache(const FundSeqPolicy& policy) : policy_(policy) {}
  const SchreierHandle& get(const Ordinal& alpha) {
    auto it = handles_.find(alpha);
    if (it == handles_.end())
      it = handles_.emplace(alpha, std::make_unique<SchreierHandle>(alpha, policy_)).first;
    return *it->second;
  }

 private:
  const FundSeqPolicy& policy_;
  std::map<Ordinal, std::unique_ptr<SchreierHandle>> handles_;
};

}  // namespace

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const CheckCell& c) { return !c.pass; }));
}

nlohmann::ordered_json CheckReport::to_json(bool timing) const {
  nlohmann::ordered_json j;
  j["check"] = name;
  j["grid"] = grid;
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json cj;
    cj["params"] = c.params;
    cj["pass"] = c.pass;
    if (!c.witness.is_null()) cj["witness"] = c.witness;
    if (timing) cj["micros"] = c.micros;
    cs.push_back(std::move(cj));
  }
  j["cells"] = std::move(cs);
  j["failures"] = failures();
  return j;
}

std::vector<Ordinal> default_ordinal_grid() {
  std::vector<Ordinal> out;
  for (std::uint64_t k = 0; k <= 5; ++k) out.push_back(Ordinal::natural(k));
  const char* lits[] = {"w", "w+1", "w+5", "w*2", "w*3", "w^2", "w^2+w", "w^2*2", "w^3"};
  for (const char* s : lits) out.push_back(parse_ordinal(s));
  return out;
}

// ---------------------------------------------------------------------------

CheckReport check_lemma_2_1(const CampaignConfig& config) {
  CheckReport report;
  report.name = "check_lemma_2_1";
  report.grid = {{"ordinals", "default"}, {"n_max", config.n_max}};
  FEvaluator f(config.policy);
  for (const Ordinal& alpha : default_ordinal_grid()) {
    for (std::uint32_t n = 1; n <= config.n_max; ++n) {
      auto start = Clock::now();
      CheckCell cell;
      cell.params = {{"alpha", alpha.str()}, {"n", n}};
      const std::uint64_t actual = f.value(n, alpha);
      std::uint64_t expected = 0;
      switch (alpha.kind()) {
        case Ordinal::Kind::zero:
          expected = 0;
          break;
        case Ordinal::Kind::successor:
          expected = f.value(n, alpha.predecessor()) + 1;
          break;
        case Ordinal::Kind::limit:
          for (std::uint32_t m = 1; m <= n; ++m)
            expected = std::max(expected, f.value(n, fund_seq(config.policy, alpha, m)));
          break;
      }
      cell.pass = actual == expected;
      if (!cell.pass) cell.witness = {{"actual", actual}, {"clause_value", expected}};
      cell.micros = micros_since(start);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

CheckReport check_cor_2_2(const CampaignConfig& config) {
  CheckReport report;
  report.name = "check_cor_2_2";
  report.grid = {{"ordinals", "default"}, {"m_max", 10}, {"n_max", config.n_max}};
  FEvaluator f(config.policy);
  for (const Ordinal& alpha : default_ordinal_grid()) {
    for (std::uint64_t m = 1; m <= 10; ++m) {
      for (std::uint32_t n = 1; n <= config.n_max; ++n) {
        auto start = Clock::now();
        CheckCell cell;
        cell.params = {{"alpha", alpha.str()}, {"m", m}, {"n", n}};
        const std::uint64_t v = f.value(n, alpha + Ordinal::natural(m));
        cell.pass = v >= m;
        if (!cell.pass) cell.witness = {{"F", v}};
        cell.micros = micros_since(start);
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

CheckReport check_lemma_2_3(const CampaignConfig& config) {
  CheckReport report;
  report.name = "check_lemma_2_3";
  report.grid = {{"pairs", "default grid, all alpha < beta"}, {"scan_limit", config.scan_limit}};
  FEvaluator f(config.policy);
  const auto grid = default_ordinal_grid();
  for (const Ordinal& alpha : grid) {
    for (const Ordinal& beta : grid) {
      if (!(alpha < beta)) continue;
      auto start = Clock::now();
      CheckCell cell;
      cell.params = {{"alpha", alpha.str()}, {"beta", beta.str()}};
      auto sep = find_separation(alpha, beta, config.policy, config.scan_limit);
      if (!sep) {
        cell.pass = false;
        cell.witness = {{"separation", "not found within scan limit"}};
      } else {
        // Replay the domination claim independently of find_separation.
        bool ok = true;
        std::uint32_t bad = 0;
        for (std::uint32_t n = *sep + 1; n <= config.scan_limit; ++n) {
          if (f.value(n, alpha) >= f.value(n, beta)) {
            ok = false;
            bad = n;
            break;
          }
        }
        cell.pass = ok;
        if (ok)
          cell.params["N"] = *sep;
        else
          cell.witness = {{"N", *sep}, {"fails_at_n", bad}};
      }
      cell.micros = micros_since(start);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

CheckReport check_lemma_3_1(const CampaignConfig& config) {
  CheckReport report;
  report.name = "check_lemma_3_1";
  report.grid = {{"ordinals", "default"},
                 {"n_max", config.n_max},
                 {"note", "n = 1 cells are boundary cells decided by the enumeration oracle"}};
  FEvaluator f(config.policy);
  HandleCache handles(config.policy);
  for (const Ordinal& alpha : default_ordinal_grid()) {
    for (std::uint32_t n = 1; n <= config.n_max; ++n) {
      auto start = Clock::now();
      CheckCell cell;
      cell.params = {{"alpha", alpha.str()}, {"n", n}};
      const std::uint64_t F = f.value(n, alpha);
      const FinSet interval = FinSet::interval(n, n + F);
      const SchreierHandle& h = handles.get(alpha);
      const bool got = h.member(interval);

      bool member_ok;
      if (n >= 2) {
        member_ok = got;
      } else {
        // The two-block extension step behind the bridge needs n >= 2, so at
        // n = 1 the claim may genuinely fail; the oracle decides the cell.
        cell.params["boundary"] = true;
        FamilyEnumerator oracle(static_cast<std::uint32_t>(1 + F), config.policy, 14);
        const bool expected = oracle.member(alpha, interval);
        member_ok = got == expected;
        cell.params["oracle_member"] = expected;
      }

      // Second half of the bridge: G(n, alpha) >= n + F(n, alpha). An
      // overflow result means G exceeds the cap, which dwarfs n + F.
      GValue g = h.g_value(BigNat(n), config.g_cap);
      bool g_ok;
      if (n >= 2)
        g_ok = g.is_overflow() ? config.g_cap >= BigNat(n + F) : g.value() >= BigNat(n + F);
      else
        g_ok = true;  // boundary row: no claim

      cell.pass = member_ok && g_ok;
      if (!cell.pass)
        cell.witness = {{"interval", interval.str()},
                        {"member", got},
                        {"F", F},
                        {"G", g.str()}};
      cell.micros = micros_since(start);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

CheckReport check_lemma_4_1(const CampaignConfig& config) {
  CheckReport report;
  report.name = "check_lemma_4_1";
  const std::uint32_t N = std::min<std::uint32_t>(config.enum_window, 10);
  report.grid = {{"window", N}, {"k_max", 2}};
  const std::pair<const char*, const char*> cases[] = {
      {"w", "w"}, {"1", "2"}, {"2", "3"}, {"w", "w+1"}, {"w", "w*2"}, {"3", "w"}};
  FamilyEnumerator en(N, config.policy, 14);

  auto included = [&](const Ordinal& a, const Ordinal& b, FinSet* counterexample) {
    const auto& ta = en.table(a);
    const auto& tb = en.table(b);
    for (std::uint32_t mask = 0; mask < ta.size(); ++mask) {
      if (ta[mask] && !tb[mask]) {
        if (counterexample) *counterexample = FamilyEnumerator::mask_to_set(mask);
        return false;
      }
    }
    return true;
  };

  for (const auto& [sa, sb] : cases) {
    const Ordinal alpha = parse_ordinal(sa);
    const Ordinal beta = parse_ordinal(sb);
    auto start = Clock::now();
    if (!included(alpha, beta, nullptr)) {
      CheckCell cell;
      cell.params = {{"alpha", sa}, {"beta", sb}, {"verdict", "hypothesis fails"}};
      cell.pass = true;  // nothing to propagate; recorded, not presumed
      cell.micros = micros_since(start);
      report.cells.push_back(std::move(cell));
      continue;
    }
    for (std::uint64_t k = 1; k <= 2; ++k) {
      auto kstart = Clock::now();
      CheckCell cell;
      cell.params = {{"alpha", sa}, {"beta", sb}, {"k", k}};
      FinSet bad;
      cell.pass =
          included(alpha + Ordinal::natural(k), beta + Ordinal::natural(k), &bad);
      if (!cell.pass) cell.witness = {{"counterexample", bad.str()}};
      cell.micros = micros_since(kstart);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

CheckReport check_lemma_4_3(const CampaignConfig& config) {
  CheckReport report;
  report.name = "check_lemma_4_3";
  const std::uint32_t L = 20;
  report.grid = {{"boosts", "h_w(m)=2m, h_{w*2}(m)=m^2"}, {"L", L}};

  const Ordinal w = Ordinal::omega();
  const Ordinal w2 = Ordinal::omega(1, 2);
  std::vector<std::uint64_t> lin(L), sq(L);
  for (std::uint32_t i = 0; i < L; ++i) {
    lin[i] = 2 * (i + 1);
    sq[i] = static_cast<std::uint64_t>(i + 1) * (i + 1);
  }
  std::map<Ordinal, GrowthFn> h_map{{w, GrowthFn(lin)}, {w2, GrowthFn(sq)}};
  FundSeqPolicy boosted = boost_policy(config.policy, h_map);
  FEvaluator f(boosted);

  // Boosting with an empty map must reproduce the base policy.
  FundSeqPolicy trivially_boosted = boost_policy(config.policy, {});
  for (const Ordinal& beta : {w, w2, parse_ordinal("w^2")}) {
    for (std::uint64_t m = 1; m <= 5; ++m) {
      auto start = Clock::now();
      CheckCell cell;
      cell.params = {{"kind", "empty_map"}, {"beta", beta.str()}, {"m", m}};
      cell.pass = fund_seq(trivially_boosted, beta, m) == fund_seq(config.policy, beta, m);
      cell.micros = micros_since(start);
      report.cells.push_back(std::move(cell));
    }
  }

  for (const auto& [beta, h] : h_map) {
    for (std::uint32_t n = 1; n <= L; ++n) {
      auto start = Clock::now();
      CheckCell cell;
      cell.params = {{"beta", beta.str()}, {"n", n}};
      const std::uint64_t v = f.value(n, beta);
      cell.pass = v >= h(n);
      if (!cell.pass) cell.witness = {{"F", v}, {"h", h(n)}};
      cell.micros = micros_since(start);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

CheckReport check_g_definition(const CampaignConfig& config) {
  CheckReport report;
  report.name = "check_g_definition";
  report.grid = {{"rows", "alpha=0,1 (n<=50), alpha=2 (n<=10), alpha=w (n<=2), overflow cells"}};
  HandleCache handles(config.policy);

  // Verify the two defining properties and, where a closed form or an
  // enumeration window applies, the exact value.
  auto run_cell = [&](const Ordinal& alpha, std::uint64_t n, const BigNat* expected,
                      bool oracle_window) {
    auto start = Clock::now();
    CheckCell cell;
    cell.params = {{"alpha", alpha.str()}, {"n", n}};
    const SchreierHandle& h = handles.get(alpha);
    GValue g = h.g_value(BigNat(n), config.g_cap);
    bool ok = !g.is_overflow();
    if (ok && expected) ok = g.value() == *expected;
    if (ok) {
      const std::uint64_t gv = g.value().convert_to<std::uint64_t>();
      ok = h.member(FinSet::interval(n, gv)) && !h.member(FinSet::interval(n, gv + 1));
      if (ok && oracle_window) {
        // Independent route: largest interval end visible in the enumerated
        // family table.
        const auto w = static_cast<std::uint32_t>(gv + 1);
        FamilyEnumerator oracle(w, config.policy, 14);
        std::uint64_t largest = 0;
        for (std::uint64_t m = n; m <= w; ++m)
          if (oracle.member(alpha, FinSet::interval(n, m))) largest = m;
        ok = largest == gv;
        cell.params["oracle_window"] = w;
      }
    }
    cell.pass = ok;
    if (!ok) cell.witness = {{"G", g.str()}};
    cell.micros = micros_since(start);
    report.cells.push_back(std::move(cell));
  };

  for (std::uint64_t n = 1; n <= 50; ++n) {
    BigNat e0(n);
    run_cell(Ordinal(), n, &e0, false);
    BigNat e1 = 2 * BigNat(n) - 1;
    run_cell(Ordinal::natural(1), n, &e1, n <= 6);
  }
  for (std::uint64_t n = 1; n <= 10; ++n) {
    BigNat e2 = BigNat(n) * (BigNat(1) << n) - 1;
    run_cell(Ordinal::natural(2), n, &e2, n <= 2);
  }
  for (std::uint64_t n = 1; n <= 2; ++n) run_cell(Ordinal::omega(), n, nullptr, n <= 2);

  // Overflow is a reportable value: these grow past the default cap.
  for (const char* lit : {"3", "w"}) {
    auto start = Clock::now();
    CheckCell cell;
    cell.params = {{"alpha", lit}, {"n", 3}, {"expect", "overflow"}};
    GValue g = handles.get(parse_ordinal(lit)).g_value(BigNat(3), config.g_cap);
    cell.pass = g.is_overflow();
    if (!cell.pass) cell.witness = {{"G", g.str()}};
    cell.micros = micros_since(start);
    report.cells.push_back(std::move(cell));
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<std::string> check_names() {
  return {"check_cor_2_2",   "check_g_definition", "check_lemma_2_1", "check_lemma_2_3",
          "check_lemma_3_1", "check_lemma_4_1",    "check_lemma_4_3"};
}

CheckReport run_check(const std::string& name, const CampaignConfig& config) {
  if (name == "check_cor_2_2") return check_cor_2_2(config);
  if (name == "check_g_definition") return check_g_definition(config);
  if (name == "check_lemma_2_1") return check_lemma_2_1(config);
  if (name == "check_lemma_2_3") return check_lemma_2_3(config);
  if (name == "check_lemma_3_1") return check_lemma_3_1(config);
  if (name == "check_lemma_4_1") return check_lemma_4_1(config);
  if (name == "check_lemma_4_3") return check_lemma_4_3(config);
  throw std::invalid_argument("unknown check: " + name);
}

std::vector<CheckReport> run_all(const CampaignConfig& config) {
  std::vector<CheckReport> reports;
  for (const auto& name : check_names()) reports.push_back(run_check(name, config));
  return reports;
}

std::size_t total_failures(const std::vector<CheckReport>& reports) {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.failures();
  return n;
}

nlohmann::ordered_json campaign_summary(const std::vector<CheckReport>& reports,
                                        const CampaignConfig& config, bool timing) {
  nlohmann::ordered_json j;
  j["campaign"] = "schreier lemma suite";
  j["policy"] = config.policy.name();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& r : reports) checks.push_back(r.to_json(timing));
  j["checks"] = std::move(checks);
  j["failing_cells"] = total_failures(reports);
  j["untestable"] = nlohmann::ordered_json::array(
      {{{"claim", "pigeonhole over uncountably many ordinals (theorem 5.2 pattern)"},
        {"reason", "needs aleph_1-many ordinals; the growth tables cover only finite shadows"}},
       {{"claim", "existence of a non-uniformly-bounded aleph_1-sized function family"},
        {"reason", "set-theoretic hypothesis, independent of desk-scale computation"}},
       {{"claim", "union family over an uncountable defining set"},
        {"reason",
         "any finite surrogate collapses to the largest sampled order; the interval gap scan "
         "reports the finite union instead"}},
       {{"claim", "uniform bound for the full F-row family (lemma 3.4 / corollary 3.5)"},
        {"reason", "only finite tabulated shadows are computable; see uniform_bound_check"}}});
  return j;
}

}  // namespace schreier
