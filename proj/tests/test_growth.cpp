#include <doctest.h>

#include "schreier/errors.hpp"
#include "schreier/growth.hpp"
#include "schreier/ordtree.hpp"

using namespace schreier;

namespace {

Ordinal ord(const char* s) { return parse_ordinal(s); }

GrowthFn tabulate(std::uint64_t n, std::uint64_t (*fn)(std::uint64_t)) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t i = 1; i <= n; ++i) v.push_back(fn(i));
  return GrowthFn(std::move(v));
}

}  // namespace

TEST_CASE("GrowthFn: tabulation, extension, validation") {
  GrowthFn g({1, 3, 3, 8});
  CHECK(g(1) == 1);
  CHECK(g(4) == 8);
  CHECK(g(100) == 8);  // constant extension
  CHECK(g.tabulated() == 4);
  CHECK(GrowthFn()(5) == 0);
  CHECK_THROWS_AS(GrowthFn({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(g(0), std::invalid_argument);
}

TEST_CASE("shift_policy: spec examples") {
  const auto& base = default_policy();

  FundSeqPolicy zero_shift = shift_policy(base, GrowthFn({0, 0, 0}));
  for (const char* lit : {"w", "w*2", "w^2", "w^2+w", "w^3"})
    for (std::uint64_t m = 1; m <= 20; ++m)
      CHECK(fund_seq(zero_shift, ord(lit), m) == fund_seq(base, ord(lit), m));

  FundSeqPolicy id_shift = shift_policy(base, tabulate(50, [](std::uint64_t m) { return m; }));
  CHECK(fund_seq(id_shift, ord("w"), 3) == ord("6"));
  CHECK(fund_seq(id_shift, ord("w*2"), 2) == ord("w+4"));
}

TEST_CASE("boost_policy: spec examples and validated conclusion") {
  const auto& base = default_policy();

  CHECK(fund_seq(boost_policy(base, {}), ord("w^2"), 4) == fund_seq(base, ord("w^2"), 4));

  std::map<Ordinal, GrowthFn> h1{{ord("w"), tabulate(20, [](std::uint64_t m) { return 2 * m; })}};
  FEvaluator f1(boost_policy(base, h1));
  for (std::uint32_t n = 1; n <= 20; ++n) {
    CHECK(f1.value(n, ord("w")) >= 2 * n);
    CHECK(f1.value(n, ord("w")) == 3 * n);  // (w)_m = m + 2m under this boost
  }

  std::map<Ordinal, GrowthFn> h2{{ord("w"), tabulate(10, [](std::uint64_t m) { return m * m; })}};
  FEvaluator f2(boost_policy(base, h2));
  CHECK(f2.value(4, ord("w")) >= 16);

  CHECK_THROWS_AS(boost_policy(base, {{ord("w+1"), GrowthFn({1})}}), std::invalid_argument);
}

TEST_CASE("check_chain_inclusion: recorded outcomes") {
  auto r = check_chain_inclusion(default_policy(), ord("w"), 3, 8);
  CHECK(r.steps.size() == 2);
  CHECK(r.all_hold());

  auto vac = check_chain_inclusion(default_policy(), ord("w"), 1, 8);
  CHECK(vac.steps.empty());
  CHECK(vac.all_hold());
  CHECK(vac.text().find("vacuous") != std::string::npos);

  // Outcome computed by the oracle for the w^2 chain on {1..10}: the default
  // successorized sequences do nest at this truncation.
  auto r2 = check_chain_inclusion(default_policy(), ord("w^2"), 3, 10);
  CHECK(r2.steps.size() == 2);
  CHECK(r2.all_hold());

  CHECK_THROWS_AS(check_chain_inclusion(default_policy(), ord("w+1"), 3, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_chain_inclusion(default_policy(), ord("w"), 3, 15), BoundExceeded);
}

TEST_CASE("check_chain_inclusion: counterexamples are reported") {
  // A decreasing rule slips past the per-call policy validation (each term is
  // a successor below w) but breaks the chain: S_2 is not inside S_1.
  FundSeqPolicy decreasing("decreasing", [](const Ordinal& beta, std::uint64_t m) {
    if (beta == Ordinal::omega()) return Ordinal::natural(m == 1 ? 2 : m - 1);
    return default_policy()(beta, m);
  });
  auto r = check_chain_inclusion(decreasing, ord("w"), 2, 8);
  REQUIRE(r.steps.size() == 1);
  CHECK_FALSE(r.steps[0].holds);
  CHECK_FALSE(r.all_hold());
  REQUIRE(!r.steps[0].counterexamples.empty());
  CHECK(r.steps[0].counterexamples[0] == parse_finset("{2,3,4}"));
  CHECK(r.text().find("FAILS") != std::string::npos);
}

TEST_CASE("uniform_bound_check: spec examples") {
  GrowthFn ones({1, 1, 1, 1, 1, 1});
  GrowthFn succ({2, 3, 4, 5, 6, 7});  // n + 1
  GrowthFn id({1, 2, 3, 4, 5, 6});

  auto r1 = uniform_bound_check({ones}, succ);
  REQUIRE(r1.entries.size() == 1);
  CHECK(r1.entries[0].bounded);
  CHECK(r1.entries[0].threshold == 0);

  auto r2 = uniform_bound_check({id}, id);
  CHECK_FALSE(r2.entries[0].bounded);
  CHECK(r2.text().find("unbounded") != std::string::npos);

  // Tabulated F-rows, bounded by the pointwise max + 1.
  FEvaluator f(default_policy());
  const std::uint64_t L = 12;
  std::vector<GrowthFn> rows;
  for (const char* lit : {"1", "3", "w", "w*2", "w^2"}) {
    std::vector<std::uint64_t> vals;
    for (std::uint32_t n = 1; n <= L; ++n) vals.push_back(f.value(n, ord(lit)));
    rows.push_back(GrowthFn(std::move(vals)));
  }
  std::vector<std::uint64_t> top;
  for (std::uint32_t n = 1; n <= L; ++n) {
    std::uint64_t m = 0;
    for (const auto& h : rows) m = std::max(m, h(n));
    top.push_back(m + 1);
  }
  auto r3 = uniform_bound_check(rows, GrowthFn(std::move(top)));
  CHECK(r3.all_bounded());
  for (const auto& e : r3.entries) CHECK(e.threshold == 0);

  CHECK_THROWS_AS(uniform_bound_check({GrowthFn({1, 2})}, id), std::invalid_argument);
}

TEST_CASE("interval_gap_scan: spec examples") {
  auto t0 = interval_gap_scan({Ordinal()}, default_policy(), 5);
  REQUIRE(t0.rows.size() == 5);
  CHECK(t0.rows[4].n == 5);
  CHECK(t0.rows[4].max_g == GValue::of(5));  // gap {5,6}

  auto t12 = interval_gap_scan({ord("1"), ord("2")}, default_policy(), 2);
  CHECK(t12.rows[1].max_g == GValue::of(7));  // gap {2..8}
  // Certify the gap against the decision procedure for both orders.
  for (const char* lit : {"1", "2"}) {
    SchreierHandle h(ord(lit));
    CHECK_FALSE(h.member(FinSet::interval(2, 8)));
  }

  auto tw = interval_gap_scan({ord("w")}, default_policy(), 3);
  CHECK(tw.rows[2].cells[0].value.is_overflow());
  CHECK(tw.rows[2].max_g.is_overflow());  // overflow propagates to the row
  CHECK(tw.rows[1].max_g == GValue::of(7));

  CHECK(tw.text().find("overflow") != std::string::npos);
}

TEST_CASE("lemma 4.1 shadow on truncations") {
  FamilyEnumerator en(10);
  auto included = [&](const Ordinal& a, const Ordinal& b) {
    const auto& ta = en.table(a);
    const auto& tb = en.table(b);
    for (std::size_t i = 0; i < ta.size(); ++i)
      if (ta[i] && !tb[i]) return false;
    return true;
  };
  const std::pair<const char*, const char*> pairs[] = {{"1", "2"}, {"2", "3"}, {"w", "w*2"}};
  for (const auto& [a, b] : pairs) {
    REQUIRE(included(ord(a), ord(b)));
    for (std::uint64_t k = 1; k <= 2; ++k)
      CHECK(included(ord(a) + Ordinal::natural(k), ord(b) + Ordinal::natural(k)));
  }
}

TEST_CASE("reports serialize to JSON") {
  auto chain = to_json(check_chain_inclusion(default_policy(), ord("w"), 3, 8));
  CHECK(chain["all_hold"] == true);
  CHECK(chain["steps"].size() == 2);
  CHECK(chain["steps"][0]["beta_m"] == "1");

  auto bound = to_json(uniform_bound_check({GrowthFn({1, 1, 1})}, GrowthFn({2, 2, 2})));
  CHECK(bound["all_bounded"] == true);
  CHECK(bound["entries"][0]["N_h"] == 0);

  auto gaps = to_json(interval_gap_scan({ord("1"), ord("2")}, default_policy(), 2));
  CHECK(gaps["rows"][1]["gap"] == "{2..8}");
  auto overflowing = to_json(interval_gap_scan({ord("w")}, default_policy(), 3));
  CHECK(overflowing["rows"][2]["gap"] == "overflow");
}

TEST_CASE("finite shadow of the truncated power-set inclusion") {
  // When the tabulated F-values of the sampled orders reach N - n at start
  // n, every finite subset of {n..N} lands in the union of those families
  // (the interval {n..n+F} is a member and the families are hereditary).
  const std::uint32_t N = 12;
  FamilyEnumerator en(N);
  FEvaluator f(default_policy());
  const std::vector<Ordinal> sample{ord("1"), ord("2"), ord("w"), ord("w^2"), ord("w^3")};
  for (std::uint64_t n : {2, 3}) {
    std::uint64_t best_f = 0;
    for (const auto& a : sample) best_f = std::max(best_f, f.value(static_cast<std::uint32_t>(n), a));
    REQUIRE(best_f >= N - n);  // hypothesis of the shadow at this truncation
    // union membership table over the sample
    std::vector<char> in_union(1u << N, 0);
    for (const auto& a : sample) {
      const auto& t = en.table(a);
      for (std::uint32_t mask = 0; mask < t.size(); ++mask)
        if (t[mask]) in_union[mask] = 1;
    }
    for (std::uint32_t mask = 0; mask < in_union.size(); ++mask) {
      const FinSet e = FamilyEnumerator::mask_to_set(mask);
      if (!e.empty() && e.min() >= n) CHECK(in_union[mask]);
    }
  }
}
