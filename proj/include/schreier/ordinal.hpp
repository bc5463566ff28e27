#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace schreier {

/// One Cantor-normal-form term, w^exponent * coefficient.
struct OrdTerm {
  std::uint64_t exponent = 0;
  std::uint64_t coefficient = 0;
  friend auto operator<=>(const OrdTerm&, const OrdTerm&) = default;
};

/// An ordinal below w^w in Cantor normal form: a list of terms with strictly
/// decreasing exponents and coefficients >= 1; the empty list is 0.
///
/// The representation is canonical, so structural equality is ordinal
/// equality, and lexicographic comparison of the term lists (which is what
/// the defaulted <=> on vectors computes) is exactly the ordinal order.
class Ordinal {
 public:
  enum class Kind { zero, successor, limit };

  Ordinal() = default;

  static Ordinal natural(std::uint64_t k);
  static Ordinal omega(std::uint64_t exponent = 1, std::uint64_t coefficient = 1);
  /// Terms must already be canonical (strictly decreasing exponents,
  /// coefficients >= 1); throws std::invalid_argument otherwise.
  static Ordinal from_terms(std::vector<OrdTerm> terms);

  const std::vector<OrdTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_natural() const;          // 0 or a single exponent-0 term
  std::uint64_t natural_value() const;  // valid only when is_natural()

  Kind kind() const;
  /// Predecessor of a successor ordinal; throws std::invalid_argument otherwise.
  Ordinal predecessor() const;

  std::string str() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    return a.terms_ <=> b.terms_;
  }
  friend bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<OrdTerm> terms_;
};

/// Standard (non-commutative) ordinal addition on CNF.
Ordinal operator+(const Ordinal& a, const Ordinal& b);

inline std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }
inline Ordinal add(const Ordinal& a, const Ordinal& b) { return a + b; }

/// Grammar:  ordinal := "0" | term ("+" term)* ;  term := nat | "w" ("^" nat)? ("*" nat)? ;
/// nat := [1-9][0-9]* ;  no whitespace.  Terms may appear in any order and
/// multiplicity; the result is the ordinal sum of the terms read left to
/// right, i.e. non-canonical literals are accepted and canonicalized.
Ordinal parse_ordinal(std::string_view text);
std::string format_ordinal(const Ordinal& a);

/// Assignment of approximating sequences (beta_m)_{m>=1} to limit ordinals.
/// A valid policy yields, for every limit beta, a sequence of successor
/// ordinals strictly increasing in m with supremum beta.
class FundSeqPolicy {
 public:
  using Rule = std::function<Ordinal(const Ordinal& beta, std::uint64_t m)>;

  FundSeqPolicy(std::string name, Rule rule)
      : name_(std::move(name)), rule_(std::move(rule)) {}

  const std::string& name() const { return name_; }
  Ordinal operator()(const Ordinal& beta, std::uint64_t m) const { return rule_(beta, m); }

 private:
  std::string name_;
  Rule rule_;
};

/// beta_m under `policy`; throws std::invalid_argument unless beta is a limit
/// ordinal and m >= 1.
Ordinal fund_seq(const FundSeqPolicy& policy, const Ordinal& beta, std::uint64_t m);

/// The built-in policy: w_m = m; for a limit whose last CNF term is w^e*c,
/// recurse into that term ((w^e*c)_m = w^e*(c-1) + (w^(e-1))*m for e = 1
/// keeps the natural choice, e >= 2 appends +1 so every term is a successor).
const FundSeqPolicy& default_policy();

}  // namespace schreier

template <>
struct std::hash<schreier::Ordinal> {
  std::size_t operator()(const schreier::Ordinal& a) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto& t : a.terms()) {
      h = (h ^ t.exponent) * 0x100000001b3ull;
      h = (h ^ t.coefficient) * 0x100000001b3ull;
    }
    return h;
  }
};
