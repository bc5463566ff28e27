#include <doctest.h>

#include <cmath>
#include <random>

#include "schreier/banach.hpp"

using namespace schreier;

namespace {

Ordinal ord(const char* s) { return parse_ordinal(s); }
FinSet fs(const char* s) { return parse_finset(s); }

Vector vec(std::initializer_list<double> values) {
  Vector x;
  std::uint64_t i = 1;
  for (double v : values) x.set(i++, v);
  return x;
}

template <class S>
BasicVector<S> add_vectors(const BasicVector<S>& a, const BasicVector<S>& b) {
  BasicVector<S> out = a;
  for (const auto& [i, v] : b.entries()) out.set(i, out.at(i) + v);
  return out;
}

Vector seeded_vector(std::mt19937_64& rng, std::uint32_t window) {
  Vector x;
  for (std::uint32_t i = 1; i <= window; ++i) {
    double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    x.set(i, 2.0 * u - 1.0);
  }
  return x;
}

}  // namespace

TEST_CASE("norm: spec examples") {
  NormEvaluator<double> s1(NormSpec::schreier_norm(ord("1"), 8));
  CHECK(s1(Vector::unit(5)) == 1.0);

  NormEvaluator<double> s1n3(NormSpec::schreier_norm(ord("1"), 3));
  CHECK(s1n3(vec({1, 1, 1})) == 2.0);  // best E = {2,3}

  NormEvaluator<double> summing(NormSpec::summing_norm(4));
  CHECK(summing(vec({1, -1, 1, -1})) == 1.0);  // partial sums 1,0,1,0

  NormEvaluator<double> sup(NormSpec::sup_norm(4));
  CHECK(sup(vec({1, -3, 2})) == 3.0);

  CHECK_THROWS_AS(summing(Vector::unit(9)), std::invalid_argument);
  CHECK_THROWS_AS(NormEvaluator<double>(NormSpec::schreier_norm(ord("1"), 17)), BoundExceeded);
}

TEST_CASE("norm axioms on sampled vectors") {
  std::mt19937_64 rng(0xaa11);
  NormEvaluator<double> evals[] = {
      NormEvaluator<double>(NormSpec::schreier_norm(ord("2"), 8)),
      NormEvaluator<double>(NormSpec::summing_norm(8)),
      NormEvaluator<double>(NormSpec::sup_norm(8)),
  };
  for (int rep = 0; rep < 40; ++rep) {
    const Vector x = seeded_vector(rng, 8);
    const Vector y = seeded_vector(rng, 8);
    const double lambda = 3.5 - static_cast<double>(rng() % 700) / 100.0;
    for (const auto& eval : evals) {
      // positive definiteness
      CHECK(eval(x) > 0.0);
      // homogeneity
      Vector lx;
      for (const auto& [i, v] : x.entries()) lx.set(i, lambda * v);
      CHECK(std::fabs(eval(lx) - std::fabs(lambda) * eval(x)) <= 1e-12);
      // triangle inequality
      CHECK(eval(add_vectors(x, y)) <= eval(x) + eval(y) + 1e-12);
    }
  }
}

TEST_CASE("projections: linear, idempotent, complementary") {
  const Vector x = vec({1, -2, 0, 4, -5});
  const FinSet a = fs("{2,4}");
  CHECK(project(project(x, a), a) == project(x, a));
  const Vector sum = add_vectors(project(x, a), without(x, a));
  CHECK(sum == x);
  // linearity entrywise
  const Vector y = vec({0.5, 0.25, 1, 0, 2});
  CHECK(project(add_vectors(x, y), a) == add_vectors(project(x, a), project(y, a)));
}

TEST_CASE("greedy_sets: spec examples") {
  auto g1 = greedy_sets(vec({3, 1, 2}), 1, 3);
  CHECK(g1.sets == std::vector<FinSet>{fs("{1}")});

  auto g2 = greedy_sets(vec({1, 1}), 1, 2);
  CHECK(g2.sets == std::vector<FinSet>{fs("{1}"), fs("{2}")});

  auto g3 = greedy_sets(vec({5, -5, 2}), 2, 3);
  CHECK(g3.sets == std::vector<FinSet>{fs("{1,2}")});

  // zero coordinates pad greedy sets beyond the support
  auto g4 = greedy_sets(Vector::unit(1), 2, 3);
  CHECK(g4.sets == std::vector<FinSet>{fs("{1,2}"), fs("{1,3}")});

  auto capped = greedy_sets(Vector(), 3, 12, 100);
  CHECK(capped.capped);
  CHECK(capped.sets.size() == 100);
  // cap exactly at the number of combinations: complete, not capped
  auto exact_fit = greedy_sets(Vector(), 1, 4, 4);
  CHECK_FALSE(exact_fit.capped);
  CHECK(exact_fit.sets.size() == 4);

  CHECK_THROWS_AS(greedy_sets(vec({1, 2}), 3, 2), std::invalid_argument);
}

TEST_CASE("uncond_constant: spec examples") {
  NormEvaluator<double> sup(NormSpec::sup_norm(6));
  auto all = uncond_constant_all(vec({0.5, -2, 1, 0, 3}), sup);
  CHECK(all.value == 1.0);  // coordinate-wise norm

  // e_n against any family: ratio <= 1
  NormEvaluator<double> summing(NormSpec::summing_norm(6));
  SchreierHandle s1(ord("1"));
  CHECK(uncond_constant(Vector::unit(3), s1, summing).value <= 1.0);

  CHECK_THROWS_AS(uncond_constant(Vector(), s1, summing), std::invalid_argument);
}

TEST_CASE("uncond_constant: summing-norm growth witness (m = 2, brute forced)") {
  // x = sum (-1)^i e_i over {1..8}; max over A in S_1 of ||x - P_A x|| is 3,
  // attained e.g. at A = {2,4}; the analytic witness A = {4,6,8} also reaches 3.
  const std::uint32_t m = 2, N = 4 * m;
  NormEvaluator<double> eval(NormSpec::summing_norm(N));
  const Vector x = alternating_vector<double>(N);
  SchreierHandle s1(ord("1"));

  auto r = uncond_constant(x, s1, eval);
  CHECK(r.value == 3.0);

  // Independent oracle: exhaust all subsets of {1..8}, filter by the
  // enumeration table for S_1.
  FamilyEnumerator oracle(N);
  const auto& table = oracle.table(ord("1"));
  double best = 0;
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    if (!table[mask]) continue;
    best = std::max(best, eval(without(x, FamilyEnumerator::mask_to_set(mask))) / eval(x));
  }
  CHECK(r.value == best);

  CHECK(removal_ratio(x, fs("{4,6,8}"), eval) == 3.0);

  // Exact route agrees.
  NormEvaluator<Rational> exact(NormSpec::summing_norm(N));
  auto rx = uncond_constant(alternating_vector<Rational>(N), s1, exact);
  CHECK(rx.value == Rational(3));
}

TEST_CASE("uncond_constant: family monotonicity under inclusion") {
  const std::uint32_t N = 8;
  // S_0 within the window is included in S_1 (checked via the oracle).
  FamilyEnumerator oracle(N);
  const auto& t0 = oracle.table(Ordinal());
  const auto& t1 = oracle.table(ord("1"));
  for (std::size_t i = 0; i < t0.size(); ++i)
    if (t0[i]) CHECK(t1[i]);

  NormEvaluator<double> eval(NormSpec::summing_norm(N));
  SchreierHandle s0{Ordinal()};
  SchreierHandle s1(ord("1"));
  std::mt19937_64 rng(0x51);
  for (int rep = 0; rep < 10; ++rep) {
    const Vector x = seeded_vector(rng, N);
    const double c_all = uncond_constant_all(x, eval).value;
    const double c1 = uncond_constant(x, s1, eval).value;
    const double c0 = uncond_constant(x, s0, eval).value;
    CHECK(c_all >= c1);
    CHECK(c1 >= c0);
    CHECK(c0 >= 1.0);  // A = {} is admissible
  }
}

TEST_CASE("uncond_constant: schreier norm is 1-unconditional on its basis") {
  NormEvaluator<double> eval(NormSpec::schreier_norm(ord("1"), 8));
  SchreierHandle s1(ord("1"));
  std::mt19937_64 rng(0x5eed);
  for (int rep = 0; rep < 100; ++rep) {
    const Vector x = seeded_vector(rng, 8);
    CHECK(uncond_constant(x, s1, eval).value <= 1.0 + 1e-9);
  }
}

TEST_CASE("optimized_removal: exact coordinate descent on the summing norm") {
  NormEvaluator<double> eval(NormSpec::summing_norm(2));
  const Vector x = vec({1, 1});
  // projection leaves (0,1) with norm 1; free coefficient at 1 reaches 1/2
  CHECK(eval(without(x, fs("{1}"))) == 1.0);
  CHECK(optimized_removal(x, fs("{1}"), eval) == doctest::Approx(0.5).epsilon(1e-9));

  // optimize never exceeds projection
  std::mt19937_64 rng(0x0b7);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector y = seeded_vector(rng, 6);
    NormEvaluator<double> ev6(NormSpec::summing_norm(6));
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      const FinSet a = FamilyEnumerator::mask_to_set(mask);
      CHECK(optimized_removal(y, a, ev6) <= ev6(without(y, a)) + 1e-12);
    }
  }
}

TEST_CASE("greedy_constant: strict |A| < m contract") {
  // x supported on exactly m coordinates whose support {2,3} is a family
  // member: admissible A in strict mode has |A| < m, so the denominator
  // stays positive; the non-strict flag admits A = supp(x) and reports the
  // zero denominator as the infinite sentinel.
  NormEvaluator<double> eval(NormSpec::schreier_norm(ord("1"), 3));
  SchreierHandle s1(ord("1"));
  Vector x;
  x.set(2, 1);
  x.set(3, 2);

  auto strict = greedy_constant(x, 2, s1, eval, DenomMode::projection);
  CHECK_FALSE(strict.infinite);
  CHECK(strict.value == 0.0);  // numerator: x - P_Lambda x = 0
  CHECK(strict.worst_lambda == fs("{2,3}"));

  auto lax = greedy_constant(x, 2, s1, eval, DenomMode::projection, false);
  CHECK(lax.infinite);  // A = {2,3} wipes x out
  CHECK(lax.best_a == fs("{2,3}"));
}

TEST_CASE("greedy_constant: schreier basis is not 1-greedy (frozen counterexample)") {
  // Numerator: Lambda = {2,3}, remainder E = {5,6,7,8} sums to 4.
  // Denominator: A = {5} leaves max E-sum 3.3 (E = {3,7,8}).
  NormEvaluator<double> eval(NormSpec::schreier_norm(ord("1"), 8));
  SchreierHandle s1(ord("1"));
  Vector x;
  x.set(2, 1.3);
  x.set(3, 1.3);
  for (std::uint64_t i = 5; i <= 8; ++i) x.set(i, 1.0);

  auto proj = greedy_constant(x, 2, s1, eval, DenomMode::projection);
  CHECK(proj.value == doctest::Approx(40.0 / 33.0).epsilon(1e-12));
  CHECK(proj.worst_lambda == fs("{2,3}"));
  CHECK(proj.best_a == fs("{5}"));

  // The schreier norm is 1-unconditional, so optimizing coefficients cannot
  // beat the projection: optimize mode returns the same ratio.
  auto opt = greedy_constant(x, 2, s1, eval, DenomMode::optimize);
  CHECK(opt.value == doctest::Approx(proj.value).epsilon(1e-12));

  // Exact mode pins the rational value 40/33.
  NormEvaluator<Rational> exact(NormSpec::schreier_norm(ord("1"), 8));
  RationalVector rx;
  rx.set(2, Rational(13, 10));
  rx.set(3, Rational(13, 10));
  for (std::uint64_t i = 5; i <= 8; ++i) rx.set(i, Rational(1));
  auto er = greedy_constant(rx, 2, s1, exact, DenomMode::optimize);
  CHECK(er.value == Rational(40, 33));
}

TEST_CASE("greedy_constant: optimize ratio >= projection ratio (summing norm)") {
  NormEvaluator<double> eval(NormSpec::summing_norm(8));
  SchreierHandle s1(ord("1"));
  std::mt19937_64 rng(0x6e33);
  for (int rep = 0; rep < 10; ++rep) {
    const Vector x = seeded_vector(rng, 8);
    for (std::uint64_t m : {2, 3}) {
      auto proj = greedy_constant(x, m, s1, eval, DenomMode::projection);
      auto opt = greedy_constant(x, m, s1, eval, DenomMode::optimize);
      if (!proj.infinite && !opt.infinite) CHECK(opt.value >= proj.value - 1e-9);
    }
  }
}

TEST_CASE("constant_growth_table") {
  // schreier(1) basis rows stay at 1 regardless of the family order.
  auto rows = constant_growth_table(NormSpec::schreier_norm(ord("1"), 8),
                                    {ord("1"), ord("2")}, {6, 8});
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.constant <= 1.0 + 1e-9);

  // summing norm, family S_1, N = 4m: entry >= m (alternating witness).
  auto srows = constant_growth_table(NormSpec::summing_norm(8), {ord("1")}, {8, 12});
  REQUIRE(srows.size() == 2);
  CHECK(srows[0].constant >= 2.0);
  CHECK(srows[1].constant >= 3.0);
  CHECK(srows[0].witness.find("alternating") != std::string::npos);

  CHECK(constant_growth_table(NormSpec::summing_norm(8), {}, {8}).empty());
}

TEST_CASE("exact and floating routes agree to 1e-9 at desk scale") {
  SchreierHandle s1(ord("1"));
  std::mt19937_64 rng(0xacc);
  for (int rep = 0; rep < 5; ++rep) {
    // small dyadic coefficients are exactly representable both ways
    Vector xd;
    RationalVector xr;
    for (std::uint64_t i = 1; i <= 10; ++i) {
      const std::int64_t num = static_cast<std::int64_t>(rng() % 33) - 16;
      xd.set(i, static_cast<double>(num) / 8.0);
      xr.set(i, Rational(num, 8));
    }
    if (xd.zero()) continue;
    NormEvaluator<double> ed(NormSpec::summing_norm(10));
    NormEvaluator<Rational> er(NormSpec::summing_norm(10));
    const double vd = uncond_constant(xd, s1, ed).value;
    const double vr = scalar_to_double(uncond_constant(xr, s1, er).value);
    CHECK(std::fabs(vd - vr) <= 1e-9 * std::max(1.0, std::fabs(vr)));
  }
}

TEST_CASE("vector JSON literals") {
  Vector x = vector_from_json_text(R"({"1": 0.5, "3": -2})");
  CHECK(x.at(1) == 0.5);
  CHECK(x.at(3) == -2.0);
  CHECK(x.at(2) == 0.0);

  RationalVector rx = rational_vector_from_json_text(R"({"2": "-3/4", "5": 7, "6": "0.25"})");
  CHECK(rx.at(2) == Rational(-3, 4));
  CHECK(rx.at(5) == Rational(7));
  CHECK(rx.at(6) == Rational(1, 4));

  CHECK_THROWS_AS(vector_from_json_text(R"({"0": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(vector_from_json_text(R"({"x": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(rational_vector_from_json_text(R"({"1": 0.5})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("greedy_constant: summing-norm ratio grows with m") {
  // All coordinates of the alternating vector tie, so every m-subset is a
  // greedy set; the worst one removes m of the +1 entries, pushing a partial
  // sum to -(m+1), while no removal of fewer entries drops the norm below 1
  // (first kept coordinate). Hence projection ratio = m+1 exactly. With
  // optimized coefficients the best denominator is 1/2 (A = {1},
  // coefficient -1/2 centers the 0/1 tail), so the ratio doubles.
  SchreierHandle s1(ord("1"));
  double prev_proj = 0, prev_opt = 0;
  for (std::uint64_t m = 2; m <= 4; ++m) {
    const auto n = static_cast<std::uint32_t>(4 * m);
    NormEvaluator<double> eval(NormSpec::summing_norm(n));
    const Vector x = alternating_vector<double>(n);
    auto proj = greedy_constant(x, m, s1, eval, DenomMode::projection);
    auto opt = greedy_constant(x, m, s1, eval, DenomMode::optimize);
    CHECK(proj.value == doctest::Approx(static_cast<double>(m + 1)).epsilon(1e-12));
    CHECK(opt.value == doctest::Approx(2.0 * static_cast<double>(m + 1)).epsilon(1e-12));
    CHECK(proj.value > prev_proj);
    CHECK(opt.value > prev_opt);
    prev_proj = proj.value;
    prev_opt = opt.value;
  }
}
