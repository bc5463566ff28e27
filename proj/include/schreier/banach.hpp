#pragma once

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "schreier/errors.hpp"
#include "schreier/family.hpp"
#include "schreier/finset.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

using Rational = boost::multiprecision::cpp_rational;

template <class S>
S scalar_abs(const S& v) {
  return v < S(0) ? S(-v) : v;
}

double scalar_to_double(double v);
double scalar_to_double(const Rational& v);

/// Finitely supported coefficient sequence x = sum over i of x_i e_i.
/// Only nonzero entries are stored; indices start at 1.
template <class S>
class BasicVector {
 public:
  BasicVector() = default;

  static BasicVector unit(std::uint64_t i) {
    BasicVector v;
    v.set(i, S(1));
    return v;
  }

  void set(std::uint64_t i, const S& value) {
    if (i == 0) throw std::invalid_argument("Vector: indices start at 1");
    if (value == S(0))
      entries_.erase(i);
    else
      entries_[i] = value;
  }

  S at(std::uint64_t i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? S(0) : it->second;
  }

  bool zero() const { return entries_.empty(); }
  std::uint64_t max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
  const std::map<std::uint64_t, S>& entries() const { return entries_; }

  FinSet support() const {
    std::vector<std::uint64_t> idx;
    for (const auto& [i, v] : entries_) idx.push_back(i);
    return FinSet(std::move(idx));
  }

  friend bool operator==(const BasicVector&, const BasicVector&) = default;

 private:
  std::map<std::uint64_t, S> entries_;
};

using Vector = BasicVector<double>;
using RationalVector = BasicVector<Rational>;

/// P_A x: the restriction of x to the coordinate set A.
template <class S>
BasicVector<S> project(const BasicVector<S>& x, const FinSet& a) {
  BasicVector<S> out;
  for (const auto& [i, v] : x.entries())
    if (a.contains(i)) out.set(i, v);
  return out;
}

/// x - P_A x.
template <class S>
BasicVector<S> without(const BasicVector<S>& x, const FinSet& a) {
  BasicVector<S> out;
  for (const auto& [i, v] : x.entries())
    if (!a.contains(i)) out.set(i, v);
  return out;
}

/// Declarative norm description on vectors supported inside {1..window}.
///   schreier: ||x|| = max over E in S_alpha, E within the window, of
///             sum_{i in E} |x_i|  (the Schreier-space norm of order alpha);
///   summing:  ||x|| = max_k |sum_{i<=k} x_i|;
///   sup:      ||x|| = max_i |x_i|.
struct NormSpec {
  enum class Variant { schreier, summing, sup };

  Variant variant = Variant::sup;
  Ordinal alpha;           // schreier variant only
  std::uint32_t window = 8;

  static NormSpec schreier_norm(Ordinal alpha, std::uint32_t window) {
    return {Variant::schreier, std::move(alpha), window};
  }
  static NormSpec summing_norm(std::uint32_t window) { return {Variant::summing, Ordinal(), window}; }
  static NormSpec sup_norm(std::uint32_t window) { return {Variant::sup, Ordinal(), window}; }

  std::string str() const;
};

/// Enumerates the members of `family` within {1..window} (empty set first,
/// then depth-first by extension); `size_limit` prunes by cardinality.
void for_each_family_member(const SchreierHandle& family, std::uint32_t window,
                            std::size_t size_limit,
                            const std::function<void(const FinSet&)>& visit);

/// Evaluates one NormSpec. For the schreier variant the member sets of
/// S_alpha within the window are enumerated once up front (window <= 16), so
/// that each evaluation only scans actual members; hereditarity makes
/// maximal members the only candidates that can attain the max, but scanning
/// every member is exact either way.
template <class S>
class NormEvaluator {
 public:
  explicit NormEvaluator(NormSpec spec, const FundSeqPolicy& policy = default_policy())
      : spec_(std::move(spec)) {
    if (spec_.window == 0) throw std::invalid_argument("NormSpec: window must be >= 1");
    if (spec_.variant == NormSpec::Variant::schreier) {
      if (spec_.window > 16)
        throw BoundExceeded("schreier norm: window > 16 not supported");
      handle_ = std::make_shared<SchreierHandle>(spec_.alpha, policy);
      const std::uint32_t size = 1u << spec_.window;
      for (std::uint32_t mask = 1; mask < size; ++mask)
        if (handle_->member(FamilyEnumerator::mask_to_set(mask))) masks_.push_back(mask);
    }
  }

  const NormSpec& spec() const { return spec_; }
  std::shared_ptr<SchreierHandle> handle() const { return handle_; }

  S operator()(const BasicVector<S>& x) const {
    if (x.max_index() > spec_.window)
      throw std::invalid_argument("norm: support outside window {1.." +
                                  std::to_string(spec_.window) + "}");
    switch (spec_.variant) {
      case NormSpec::Variant::sup: {
        S best(0);
        for (const auto& [i, v] : x.entries()) best = std::max(best, scalar_abs(v));
        return best;
      }
      case NormSpec::Variant::summing: {
        // Zero coordinates leave the running sum unchanged, so visiting the
        // stored entries in index order sees every distinct partial sum.
        S best(0), run(0);
        for (const auto& [i, v] : x.entries()) {
          run += v;
          best = std::max(best, scalar_abs(run));
        }
        return best;
      }
      case NormSpec::Variant::schreier: {
        std::vector<S> vals(spec_.window + 1, S(0));
        for (const auto& [i, v] : x.entries()) vals[i] = scalar_abs(v);
        S best(0);
        for (std::uint32_t mask : masks_) {
          S sum(0);
          for (std::uint32_t m = mask; m;) {
            const int bit = std::countr_zero(m);
            m &= m - 1;
            sum += vals[bit + 1];
          }
          best = std::max(best, sum);
        }
        return best;
      }
    }
    throw std::logic_error("NormEvaluator: bad variant");
  }

 private:
  NormSpec spec_;
  std::shared_ptr<SchreierHandle> handle_;
  std::vector<std::uint32_t> masks_;
};

/// One-shot norm evaluation.
template <class S>
S norm(const BasicVector<S>& x, const NormSpec& spec,
       const FundSeqPolicy& policy = default_policy()) {
  return NormEvaluator<S>(spec, policy)(x);
}

// ---------------------------------------------------------------------------
// Greedy sets

struct GreedySets {
  std::vector<FinSet> sets;
  bool capped = false;  // tie enumeration hit the cap
};

/// All greedy sets of x of order m over the index window {1..window}: the m
/// largest coordinates in modulus, with ties producing every choice (at most
/// `cap` of them, lexicographically first).
template <class S>
GreedySets greedy_sets(const BasicVector<S>& x, std::uint64_t m, std::uint32_t window,
                       std::size_t cap = 10000) {
  if (x.max_index() > window)
    throw std::invalid_argument("greedy_sets: support outside window");
  if (m > window) throw std::invalid_argument("greedy_sets: m exceeds the window");

  GreedySets out;
  if (m == 0) {
    out.sets.push_back(FinSet());
    return out;
  }
  std::vector<S> vals(window + 1, S(0));
  for (const auto& [i, v] : x.entries()) vals[i] = scalar_abs(v);
  std::vector<std::uint64_t> order(window);
  for (std::uint32_t i = 0; i < window; ++i) order[i] = i + 1;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return vals[b] < vals[a]; });
  const S threshold = vals[order[m - 1]];

  std::vector<std::uint64_t> mandatory, tied;
  for (std::uint32_t i = 1; i <= window; ++i) {
    if (vals[i] > threshold)
      mandatory.push_back(i);
    else if (vals[i] == threshold)
      tied.push_back(i);
  }
  const std::size_t need = m - mandatory.size();

  // Lexicographic combinations of `need` elements from `tied`.
  std::vector<std::size_t> pick(need);
  for (std::size_t i = 0; i < need; ++i) pick[i] = i;
  while (true) {
    std::vector<std::uint64_t> elems = mandatory;
    for (std::size_t i : pick) elems.push_back(tied[i]);
    std::sort(elems.begin(), elems.end());
    out.sets.push_back(FinSet(std::move(elems)));
    // advance to the next combination, if any
    std::size_t j = need;
    while (j > 0 && pick[j - 1] == tied.size() - (need - j) - 1) --j;
    if (j == 0) break;
    if (out.sets.size() >= cap) {
      out.capped = true;  // further greedy sets exist beyond the cap
      break;
    }
    ++pick[j - 1];
    for (std::size_t i = j; i < need; ++i) pick[i] = pick[i - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unconditionality / greedy constants

template <class S>
struct UncondResult {
  S value{0};
  FinSet witness;  // an A attaining the max
};

/// ||x - P_A x|| / ||x||.
template <class S>
S removal_ratio(const BasicVector<S>& x, const FinSet& a, const NormEvaluator<S>& eval) {
  S denom = eval(x);
  if (denom == S(0)) throw std::invalid_argument("removal_ratio: zero vector");
  return eval(without(x, a)) / denom;
}

/// Max over A in the family (within the window) of ||x - P_A x|| / ||x||.
template <class S>
UncondResult<S> uncond_constant(const BasicVector<S>& x, const SchreierHandle& family,
                                const NormEvaluator<S>& eval) {
  const S normx = eval(x);
  if (normx == S(0)) throw std::invalid_argument("uncond_constant: zero vector");
  UncondResult<S> best;
  best.value = S(-1);
  for_each_family_member(family, eval.spec().window, eval.spec().window,
                         [&](const FinSet& a) {
                           S v = eval(without(x, a)) / normx;
                           if (v > best.value) {
                             best.value = v;
                             best.witness = a;
                           }
                         });
  return best;
}

/// Same, with A ranging over every subset of {1..window} (window <= 20).
template <class S>
UncondResult<S> uncond_constant_all(const BasicVector<S>& x, const NormEvaluator<S>& eval) {
  const std::uint32_t w = eval.spec().window;
  if (w > 20) throw BoundExceeded("uncond_constant_all: window > 20");
  const S normx = eval(x);
  if (normx == S(0)) throw std::invalid_argument("uncond_constant: zero vector");
  UncondResult<S> best;
  best.value = S(-1);
  for (std::uint32_t mask = 0; mask < (1u << w); ++mask) {
    FinSet a = FamilyEnumerator::mask_to_set(mask);
    S v = eval(without(x, a)) / normx;
    if (v > best.value) {
      best.value = v;
      best.witness = a;
    }
  }
  return best;
}

enum class DenomMode { projection, optimize };

template <class S>
struct GreedyConstResult {
  bool infinite = false;  // zero denominator; best_a is the witnessing A
  S value{0};
  FinSet worst_lambda;
  FinSet best_a;
  bool lambda_capped = false;
};

/// Best m-term approximation error restricted to coefficient sets in the
/// family: min over admissible A of ||x - sum_{n in A} a_n e_n||. In
/// projection mode a_n = x_n; optimize mode improves the coefficients by
/// exact coordinate descent (the norms are convex, and piecewise linear in
/// each coordinate, so the 1-d minimizer has a closed form).
template <class S>
S optimized_removal(const BasicVector<S>& x, const FinSet& a, const NormEvaluator<S>& eval,
                    int max_sweeps = 1000) {
  BasicVector<S> y = without(x, a);  // coefficients start at the projection
  S best = eval(y);
  if (a.empty()) return best;

  if (eval.spec().variant != NormSpec::Variant::summing) {
    // schreier and sup norms are 1-unconditional: shrinking any coordinate
    // in modulus never increases them, so the projection is already optimal.
    return best;
  }

  const std::uint32_t w = eval.spec().window;
  const S tol = S(1) / S(1000000);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::uint64_t j : a.elems()) {
      // With the j-coordinate of the residual set to r, the partial sums are
      // c_k for k < j and c_k + r for k >= j (c_k = sums with r = 0). The
      // tail maximum max_k |c_k + r| is minimized at r = -(max + min)/2.
      S run(0);
      bool have_tail = false;
      S tail_min(0), tail_max(0);
      BasicVector<S> base = y;
      base.set(j, S(0));
      for (std::uint64_t k = 1; k <= w; ++k) {
        run += base.at(k);
        if (k >= j) {
          if (!have_tail) {
            have_tail = true;
            tail_min = tail_max = run;
          } else {
            tail_min = std::min(tail_min, run);
            tail_max = std::max(tail_max, run);
          }
        }
      }
      y = base;
      y.set(j, S(0) - (tail_max + tail_min) / S(2));
    }
    S now = eval(y);
    if (best - now <= tol) {
      best = std::min(best, now);
      break;
    }
    best = now;
  }
  return best;
}

/// Def-style greedy constant: worst greedy set Lambda of order m against the
/// best family-supported approximation with |A| < m (strict per the printed
/// definition; pass strict_cardinality = false for |A| <= m).
template <class S>
GreedyConstResult<S> greedy_constant(const BasicVector<S>& x, std::uint64_t m,
                                     const SchreierHandle& family, const NormEvaluator<S>& eval,
                                     DenomMode mode, bool strict_cardinality = true) {
  const std::uint32_t w = eval.spec().window;
  GreedySets lambdas = greedy_sets(x, m, w);
  GreedyConstResult<S> out;
  out.lambda_capped = lambdas.capped;

  S numerator(-1);
  for (const auto& l : lambdas.sets) {
    S v = eval(without(x, l));
    if (v > numerator) {
      numerator = v;
      out.worst_lambda = l;
    }
  }

  const std::size_t size_limit = strict_cardinality ? (m == 0 ? 0 : m - 1) : m;
  bool have = false;
  S denominator(0);
  FinSet best_a;
  for_each_family_member(family, w, size_limit, [&](const FinSet& a) {
    S v = mode == DenomMode::projection ? eval(without(x, a)) : optimized_removal(x, a, eval);
    if (!have || v < denominator) {
      have = true;
      denominator = v;
      best_a = a;
    }
  });
  if (!have) throw std::invalid_argument("greedy_constant: no admissible A");

  out.best_a = best_a;
  if (denominator == S(0)) {
    out.infinite = true;
    return out;
  }
  out.value = numerator / denominator;
  return out;
}

// ---------------------------------------------------------------------------
// Witness vectors and the growth table

/// x_i = (-1)^i on {1..window}: the standard conditional-norm stress vector.
template <class S>
BasicVector<S> alternating_vector(std::uint32_t window) {
  BasicVector<S> x;
  for (std::uint32_t i = 1; i <= window; ++i) x.set(i, i % 2 == 0 ? S(1) : S(-1));
  return x;
}

template <class S>
BasicVector<S> ones_vector(std::uint32_t window) {
  BasicVector<S> x;
  for (std::uint32_t i = 1; i <= window; ++i) x.set(i, S(1));
  return x;
}

struct GrowthTableRow {
  Ordinal family_alpha;
  std::uint32_t window = 0;
  double constant = 0;
  std::string mode;
  std::string witness;
};

/// Grid of uncond_constant maxima over the standard witness vectors
/// (alternating and all-ones) per (family alpha, window).
std::vector<GrowthTableRow> constant_growth_table(const NormSpec& basis,
                                                  const std::vector<Ordinal>& alphas,
                                                  const std::vector<std::uint32_t>& windows,
                                                  const FundSeqPolicy& policy = default_policy());

// JSON vector literal {"index": value, ...}; exact mode accepts integers and
// strings ("7", "-3/4", "0.25") but rejects floating literals.
Vector vector_from_json_text(const std::string& text);
RationalVector rational_vector_from_json_text(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace schreier
