#include "schreier/family.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "schreier/errors.hpp"

namespace schreier {

const BigNat& GValue::value() const {
  if (overflow_) throw std::logic_error("GValue: value() on overflow");
  return value_;
}

// ---------------------------------------------------------------------------
// SchreierHandle

SchreierHandle::SchreierHandle(Ordinal alpha, FundSeqPolicy policy)
    : alpha_(std::move(alpha)), policy_(std::move(policy)) {}

std::size_t SchreierHandle::MemberKeyHash::operator()(const MemberKey& k) const {
  std::size_t h = 0xcbf29ce484222325ull ^ k.ord;
  for (std::uint64_t x : k.set) h = (h ^ x) * 0x100000001b3ull;
  return h;
}

std::uint32_t SchreierHandle::ordinal_id(const Ordinal& a) const {
  auto it = ordinal_ids_.find(a);
  if (it != ordinal_ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(ordinal_ids_.size());
  ordinal_ids_.emplace(a, id);
  return id;
}

bool SchreierHandle::member(const FinSet& e) const { return member_impl(e.span(), alpha_); }

namespace {

// Largest l in [1, e.size()] such that the prefix of length l satisfies
// `pred`. Valid because the families are hereditary, so prefix membership is
// monotone in length, and singletons are members at every order.
template <class Pred>
std::size_t longest_member_prefix(std::span<const std::uint64_t> e, const Pred& pred) {
  std::size_t lo = 1, hi = e.size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (pred(e.first(mid)))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

bool SchreierHandle::member_impl(std::span<const std::uint64_t> e, const Ordinal& a) const {
  if (e.empty()) return true;
  if (a.is_zero()) return e.size() <= 1;

  MemberKey key;
  {
    std::lock_guard lk(mu_);
    key.ord = ordinal_id(a);
    key.set.assign(e.begin(), e.end());
    auto it = member_memo_.find(key);
    if (it != member_memo_.end()) return it->second;
  }

  bool result;
  if (a.kind() == Ordinal::Kind::successor) {
    const Ordinal gamma = a.predecessor();
    const std::uint64_t budget = e.front();
    std::span<const std::uint64_t> rest = e;
    std::uint64_t blocks = 0;
    result = true;
    while (!rest.empty()) {
      if (++blocks > budget) {
        result = false;
        break;
      }
      std::size_t len = longest_member_prefix(
          rest, [&](std::span<const std::uint64_t> p) { return member_impl(p, gamma); });
      rest = rest.subspan(len);
    }
  } else {
    result = false;
    for (std::uint64_t m = 1; m <= e.front(); ++m) {
      if (member_impl(e, fund_seq(policy_, a, m))) {
        result = true;
        break;
      }
    }
  }

  {
    std::lock_guard lk(mu_);
    member_memo_.emplace(std::move(key), result);
  }
  return result;
}

DecompWitness SchreierHandle::decompose(const FinSet& e) const {
  if (!member(e)) throw NotAMember("decompose(): " + e.str() + " is not in S_" + alpha_.str());
  return decompose_impl(e.span(), alpha_);
}

DecompWitness SchreierHandle::decompose_impl(std::span<const std::uint64_t> e,
                                             const Ordinal& a) const {
  DecompWitness w;
  w.set = FinSet(std::vector<std::uint64_t>(e.begin(), e.end()));
  w.alpha = a;
  if (e.empty() || a.is_zero()) {
    w.kind = DecompWitness::Kind::leaf;
    return w;
  }
  if (a.kind() == Ordinal::Kind::successor) {
    const Ordinal gamma = a.predecessor();
    w.kind = DecompWitness::Kind::successor_split;
    std::span<const std::uint64_t> rest = e;
    while (!rest.empty()) {
      std::size_t len = longest_member_prefix(
          rest, [&](std::span<const std::uint64_t> p) { return member_impl(p, gamma); });
      w.children.push_back(decompose_impl(rest.first(len), gamma));
      rest = rest.subspan(len);
    }
    return w;
  }
  for (std::uint64_t m = 1; m <= e.front(); ++m) {
    Ordinal bm = fund_seq(policy_, a, m);
    if (member_impl(e, bm)) {
      w.kind = DecompWitness::Kind::limit_step;
      w.m = m;
      w.beta_m = bm;
      w.children.push_back(decompose_impl(e, bm));
      return w;
    }
  }
  throw std::logic_error("decompose_impl: membership witness vanished");
}

bool SchreierHandle::is_maximal(const FinSet& e) const {
  if (!member(e)) throw NotAMember("is_maximal(): " + e.str() + " is not in S_" + alpha_.str());
  const std::uint64_t hi = e.empty() ? 1 : e.max() + 1;
  for (std::uint64_t k = 1; k <= hi; ++k) {
    if (e.contains(k)) continue;
    std::vector<std::uint64_t> bigger(e.elems());
    bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), k), k);
    if (member(FinSet(std::move(bigger)))) return false;
  }
  return true;
}

GValue SchreierHandle::g_value(const BigNat& n, const BigNat& cap) const {
  if (n < 1) throw std::invalid_argument("g_value(): n must be >= 1");
  return g_impl(n, alpha_, cap);
}

GValue SchreierHandle::g_impl(const BigNat& n, const Ordinal& a, const BigNat& cap) const {
  if (n > cap) return GValue::overflow();
  if (a.is_zero()) return GValue::of(n);
  // Every family of order >= 1 contains {n,...,2n-1} (n singleton blocks, and
  // at a limit the first approximating term already has order >= 1), so the
  // result exceeds the cap whenever 2n-1 does.
  if (2 * n - 1 > cap) return GValue::overflow();

  const auto key = std::make_pair(a, n);
  {
    std::lock_guard lk(mu_);
    auto it = g_memo_.find(key);
    if (it != g_memo_.end()) {
      if (it->second.exact)
        return it->second.value <= cap ? GValue::of(it->second.value) : GValue::overflow();
      if (it->second.value >= cap) return GValue::overflow();
      // Known only to exceed a smaller cap: fall through and recompute.
    }
  }

  GValue result = GValue::overflow();
  if (a.kind() == Ordinal::Kind::successor) {
    const Ordinal gamma = a.predecessor();
    if (gamma.is_zero()) {
      // n singleton blocks: {n}, {n+1}, ..., {2n-1}.
      result = GValue::of(2 * n - 1);
    } else {
      GValue v = g_impl(n, gamma, cap);
      // At most min(E) = n blocks, each extending to the S_gamma-maximal run
      // from the next start. For gamma >= 1 each step at least doubles, so
      // the loop is O(log cap) before overflow.
      for (BigNat i = 1; i < n && !v.is_overflow(); ++i) v = g_impl(v.value() + 1, gamma, cap);
      result = v;
    }
  } else {
    BigNat best = 0;
    bool saw_overflow = false;
    for (std::uint64_t m = 1; BigNat(m) <= n; ++m) {
      GValue sub = g_impl(n, fund_seq(policy_, a, m), cap);
      if (sub.is_overflow()) {
        saw_overflow = true;
        break;
      }
      best = std::max(best, sub.value());
    }
    result = saw_overflow ? GValue::overflow() : GValue::of(best);
  }

  {
    std::lock_guard lk(mu_);
    if (result.is_overflow())
      g_memo_[key] = GEntry{false, cap};
    else
      g_memo_[key] = GEntry{true, result.value()};
  }
  return result;
}

// ---------------------------------------------------------------------------
// DecompWitness

bool DecompWitness::replay(const FundSeqPolicy& policy) const {
  switch (kind) {
    case Kind::leaf:
      return set.empty() || (alpha.is_zero() && set.size() == 1);
    case Kind::successor_split: {
      if (alpha.kind() != Ordinal::Kind::successor) return false;
      if (children.empty() || set.empty()) return false;
      if (children.size() > set.min()) return false;
      const Ordinal gamma = alpha.predecessor();
      std::vector<std::uint64_t> joined;
      for (const auto& c : children) {
        if (c.set.empty()) return false;
        if (!(c.alpha == gamma)) return false;
        if (!joined.empty() && joined.back() >= c.set.min()) return false;
        joined.insert(joined.end(), c.set.elems().begin(), c.set.elems().end());
        if (!c.replay(policy)) return false;
      }
      return joined == set.elems();
    }
    case Kind::limit_step: {
      if (alpha.kind() != Ordinal::Kind::limit) return false;
      if (set.empty() || m < 1 || m > set.min()) return false;
      if (!(fund_seq(policy, alpha, m) == beta_m)) return false;
      if (children.size() != 1) return false;
      const auto& c = children.front();
      return c.set == set && c.alpha == beta_m && c.replay(policy);
    }
  }
  return false;
}

std::string DecompWitness::text(int indent) const {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string out;
  switch (kind) {
    case Kind::leaf:
      out = pad + set.str() + " in S_" + alpha.str() + "\n";
      break;
    case Kind::successor_split:
      out = pad + set.str() + " in S_" + alpha.str() + ": " + std::to_string(children.size()) +
            " blocks (<= min " + std::to_string(set.min()) + ")\n";
      for (const auto& c : children) out += c.text(indent + 1);
      break;
    case Kind::limit_step:
      out = pad + set.str() + " in S_" + alpha.str() + ": via m=" + std::to_string(m) +
            ", beta_m=" + beta_m.str() + "\n";
      out += children.front().text(indent + 1);
      break;
  }
  return out;
}

std::string DecompWitness::json() const {
  // Set/ordinal literals contain no characters that need JSON escaping.
  std::string out = "{\"set\":\"" + set.str() + "\",\"alpha\":\"" + alpha.str() + "\"";
  switch (kind) {
    case Kind::leaf:
      out += ",\"kind\":\"leaf\"";
      break;
    case Kind::successor_split: {
      out += ",\"kind\":\"successor\",\"blocks\":[";
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i > 0) out += ',';
        out += children[i].json();
      }
      out += "]";
      break;
    }
    case Kind::limit_step:
      out += ",\"kind\":\"limit\",\"m\":" + std::to_string(m) + ",\"beta_m\":\"" + beta_m.str() +
             "\",\"child\":" + children.front().json();
      break;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// FamilyEnumerator

FamilyEnumerator::FamilyEnumerator(std::uint32_t n, FundSeqPolicy policy, std::uint32_t bound)
    : n_(n), policy_(std::move(policy)) {
  if (n > bound)
    throw BoundExceeded("enumerate_family: N=" + std::to_string(n) + " exceeds bound " +
                        std::to_string(bound));
  if (n > 20) throw BoundExceeded("enumerate_family: N > 20 not supported");
}

FinSet FamilyEnumerator::mask_to_set(std::uint32_t mask) {
  std::vector<std::uint64_t> elems;
  for (std::uint32_t i = 0; mask >> i; ++i)
    if ((mask >> i) & 1u) elems.push_back(i + 1);
  return FinSet(std::move(elems));
}

std::uint32_t FamilyEnumerator::set_to_mask(const FinSet& e, std::uint32_t n) {
  std::uint32_t mask = 0;
  for (std::uint64_t x : e.elems()) {
    if (x > n) throw std::invalid_argument("set_to_mask: element outside window");
    mask |= 1u << (x - 1);
  }
  return mask;
}

const std::vector<char>& FamilyEnumerator::table(const Ordinal& alpha) { return compute(alpha); }

const std::vector<char>& FamilyEnumerator::compute(const Ordinal& alpha) {
  auto it = tables_.find(alpha);
  if (it != tables_.end()) return it->second;

  const std::uint32_t size = 1u << n_;
  std::vector<char> t(size, 0);
  t[0] = 1;  // empty set, every order

  if (alpha.is_zero()) {
    for (std::uint32_t i = 0; i < n_; ++i) t[1u << i] = 1;
  } else if (alpha.kind() == Ordinal::Kind::successor) {
    const std::vector<char>& g = compute(alpha.predecessor());
    std::uint64_t elems[20];
    std::uint32_t prefix_mask[21];
    for (std::uint32_t mask = 1; mask < size; ++mask) {
      std::uint32_t k = 0;
      prefix_mask[0] = 0;
      for (std::uint32_t i = 0; mask >> i; ++i) {
        if ((mask >> i) & 1u) {
          elems[k] = i + 1;
          prefix_mask[k + 1] = prefix_mask[k] | (1u << i);
          ++k;
        }
      }
      const std::uint64_t min_e = elems[0];
      // reach[j] has bit b set iff the first j elements split into b blocks,
      // each block a member of S_gamma.
      std::uint32_t reach[21] = {1u};
      for (std::uint32_t j = 1; j <= k; ++j) {
        reach[j] = 0;
        for (std::uint32_t i = 0; i < j; ++i) {
          if (reach[i] && g[prefix_mask[j] ^ prefix_mask[i]]) reach[j] |= reach[i] << 1;
        }
      }
      const std::uint64_t max_blocks = std::min<std::uint64_t>(min_e, k);
      const std::uint32_t allowed = static_cast<std::uint32_t>((1ull << (max_blocks + 1)) - 2);
      t[mask] = (reach[k] & allowed) != 0;
    }
  } else {
    std::vector<const std::vector<char>*> bt(n_ + 1, nullptr);
    for (std::uint32_t m = 1; m <= n_; ++m) bt[m] = &compute(fund_seq(policy_, alpha, m));
    for (std::uint32_t mask = 1; mask < size; ++mask) {
      const auto min_e = static_cast<std::uint32_t>(std::countr_zero(mask)) + 1;
      for (std::uint32_t m = 1; m <= std::min(min_e, n_); ++m) {
        if ((*bt[m])[mask]) {
          t[mask] = 1;
          break;
        }
      }
    }
  }

  return tables_.emplace(alpha, std::move(t)).first->second;
}

std::vector<FinSet> FamilyEnumerator::sets(const Ordinal& alpha) {
  const std::vector<char>& t = table(alpha);
  std::vector<FinSet> out;
  for (std::uint32_t mask = 0; mask < t.size(); ++mask)
    if (t[mask]) out.push_back(mask_to_set(mask));
  std::sort(out.begin(), out.end());
  return out;
}

bool FamilyEnumerator::member(const Ordinal& alpha, const FinSet& e) {
  return table(alpha)[set_to_mask(e, n_)] != 0;
}

std::vector<FinSet> enumerate_family(const Ordinal& alpha, std::uint32_t n,
                                     const FundSeqPolicy& policy, std::uint32_t bound) {
  FamilyEnumerator en(n, policy, bound);
  return en.sets(alpha);
}

std::optional<std::pair<FinSet, FinSet>> find_spreading_counterexample(FamilyEnumerator& en,
                                                                       const Ordinal& alpha) {
  const std::vector<char>& t = en.table(alpha);
  const auto n = en.window();
  // Pointwise domination of equal-size sets; pairs scanned in mask order so
  // the reported counterexample is deterministic.
  for (std::uint32_t a = 1; a < t.size(); ++a) {
    if (!t[a]) continue;
    const FinSet ea = FamilyEnumerator::mask_to_set(a);
    for (std::uint32_t b = 1; b < t.size(); ++b) {
      if (t[b] || std::popcount(b) != std::popcount(a)) continue;
      const FinSet eb = FamilyEnumerator::mask_to_set(b);
      bool dominates = true;
      for (std::size_t i = 0; i < ea.size(); ++i)
        if (eb.elems()[i] < ea.elems()[i]) dominates = false;
      if (dominates) return std::make_pair(ea, eb);
    }
  }
  (void)n;
  return std::nullopt;
}

}  // namespace schreier
