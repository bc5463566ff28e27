#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "schreier/finset.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

using BigNat = boost::multiprecision::cpp_int;

inline const BigNat kDefaultGCap = BigNat("1000000000000000000");  // 10^18

/// Result of G(n,alpha): either the exact value or "exceeds the cap".
/// Overflow is an expected, reportable outcome, not an error.
class GValue {
 public:
  static GValue overflow() { return GValue(true, 0); }
  static GValue of(BigNat v) { return GValue(false, std::move(v)); }

  bool is_overflow() const { return overflow_; }
  const BigNat& value() const;
  std::string str() const { return overflow_ ? "overflow" : value_.str(); }

  friend bool operator==(const GValue&, const GValue&) = default;

 private:
  GValue(bool o, BigNat v) : overflow_(o), value_(std::move(v)) {}
  bool overflow_;
  BigNat value_;
};

/// Certificate tree for E in S_alpha. Leaves certify order-0 membership
/// (empty set or singleton); a successor node records the block split
/// E = E_1 u ... u E_b with b <= min(E_1); a limit node records the chosen
/// (m, beta_m) with m <= min(E). Replaying the tree bottom-up re-proves
/// membership without consulting the decision procedure.
struct DecompWitness {
  enum class Kind { leaf, successor_split, limit_step };

  Kind kind = Kind::leaf;
  FinSet set;
  Ordinal alpha;
  std::vector<DecompWitness> children;  // blocks (successor) or single child (limit)
  std::uint64_t m = 0;                  // limit step index
  Ordinal beta_m;                       // limit step target

  /// Re-checks every node against the recursion clauses.
  bool replay(const FundSeqPolicy& policy) const;

  std::string text(int indent = 0) const;
  std::string json() const;
};

/// Decision procedure and G(n,alpha) for one Schreier family S_alpha under a
/// fixed approximating-sequence policy. Queries are memoized; the cache is
/// shared across queries and guarded, so concurrent reads behave as if run
/// in isolation.
class SchreierHandle {
 public:
  explicit SchreierHandle(Ordinal alpha, FundSeqPolicy policy = default_policy());

  const Ordinal& alpha() const { return alpha_; }
  const FundSeqPolicy& policy() const { return policy_; }

  /// E in S_alpha?  alpha = 0: |E| <= 1.  Successor: greedy peeling of
  /// longest prefixes in S_gamma, accepted iff the block count is <= min(E).
  /// Limit: exists m with 1 <= m <= min(E) and E in S_{beta_m}.  The empty
  /// set is a member at every order.
  bool member(const FinSet& e) const;

  /// Membership certificate; throws NotAMember when member(e) is false.
  DecompWitness decompose(const FinSet& e) const;

  /// True iff no superset E u {k} with k <= max(E)+1 stays in the family.
  /// Throws NotAMember unless E is a member.
  bool is_maximal(const FinSet& e) const;

  /// Largest m >= n with {n,...,m} in S_alpha, or overflow past `cap`.
  GValue g_value(const BigNat& n, const BigNat& cap = kDefaultGCap) const;

 private:
  bool member_impl(std::span<const std::uint64_t> e, const Ordinal& a) const;
  DecompWitness decompose_impl(std::span<const std::uint64_t> e, const Ordinal& a) const;
  GValue g_impl(const BigNat& n, const Ordinal& a, const BigNat& cap) const;
  std::uint32_t ordinal_id(const Ordinal& a) const;

  struct MemberKey {
    std::uint32_t ord;
    std::vector<std::uint64_t> set;
    friend bool operator==(const MemberKey&, const MemberKey&) = default;
  };
  struct MemberKeyHash {
    std::size_t operator()(const MemberKey& k) const;
  };
  // For g-results we remember either the exact value or the cap that was
  // exceeded, so answers stay correct under a different cap.
  struct GEntry {
    bool exact;
    BigNat value;  // exact value, or a cap known to be exceeded
  };

  Ordinal alpha_;
  FundSeqPolicy policy_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Ordinal, std::uint32_t> ordinal_ids_;
  mutable std::unordered_map<MemberKey, bool, MemberKeyHash> member_memo_;
  mutable std::map<std::pair<Ordinal, BigNat>, GEntry> g_memo_;
};

inline bool member(const FinSet& e, const SchreierHandle& h) { return h.member(e); }
inline DecompWitness decompose(const FinSet& e, const SchreierHandle& h) { return h.decompose(e); }
inline bool is_maximal(const FinSet& e, const SchreierHandle& h) { return h.is_maximal(e); }
inline GValue g_value(std::uint64_t n, const SchreierHandle& h, const BigNat& cap = kDefaultGCap) {
  return h.g_value(BigNat(n), cap);
}

/// Independent enumeration oracle: builds { E subset of {1..N} : E in S_alpha }
/// by exhaustive closure of the recursion, with no peeling heuristic. Keeps a
/// table per sub-ordinal so chained queries share work. Masks encode element
/// i+1 in bit i.
class FamilyEnumerator {
 public:
  FamilyEnumerator(std::uint32_t n, FundSeqPolicy policy = default_policy(),
                   std::uint32_t bound = 14);

  std::uint32_t window() const { return n_; }
  const FundSeqPolicy& policy() const { return policy_; }

  /// Membership table over all 2^N masks.
  const std::vector<char>& table(const Ordinal& alpha);
  /// The family as explicit sets, sorted.
  std::vector<FinSet> sets(const Ordinal& alpha);
  bool member(const Ordinal& alpha, const FinSet& e);

  static FinSet mask_to_set(std::uint32_t mask);
  static std::uint32_t set_to_mask(const FinSet& e, std::uint32_t n);

 private:
  const std::vector<char>& compute(const Ordinal& alpha);

  std::uint32_t n_;
  FundSeqPolicy policy_;
  std::map<Ordinal, std::vector<char>> tables_;
};

/// One-shot oracle call; throws BoundExceeded when N > bound (default 14).
std::vector<FinSet> enumerate_family(const Ordinal& alpha, std::uint32_t n,
                                     const FundSeqPolicy& policy = default_policy(),
                                     std::uint32_t bound = 14);

/// Optional diagnostic (not an invariant: whether S_alpha is spreading can
/// depend on the policy): the first member E together with a pointwise right
/// shift E' of the same size, within {1..N}, that is not a member. Returns
/// nullopt when the truncated family is closed under right shifts.
std::optional<std::pair<FinSet, FinSet>> find_spreading_counterexample(FamilyEnumerator& en,
                                                                       const Ordinal& alpha);

}  // namespace schreier
