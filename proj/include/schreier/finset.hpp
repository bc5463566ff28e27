#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schreier {

/// A finite, strictly increasing set of naturals >= 1 (possibly empty).
/// This is the E of the Schreier recursion; "A < B" and "A > b" comparisons
/// from the recursion are just element comparisons on these.
class FinSet {
 public:
  FinSet() = default;
  /// Validates: strictly increasing, all elements >= 1.
  explicit FinSet(std::vector<std::uint64_t> elems);

  /// {a, a+1, ..., b}; empty when b < a.
  static FinSet interval(std::uint64_t a, std::uint64_t b);

  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  std::uint64_t min() const { return elems_.front(); }
  std::uint64_t max() const { return elems_.back(); }
  const std::vector<std::uint64_t>& elems() const { return elems_; }
  std::span<const std::uint64_t> span() const { return elems_; }
  bool contains(std::uint64_t x) const;

  /// Subset of this set (as a sorted range); other must be sorted.
  bool contains_all(const FinSet& other) const;

  std::string str() const;

  friend auto operator<=>(const FinSet&, const FinSet&) = default;

 private:
  std::vector<std::uint64_t> elems_;
};

/// Literal: "{}", "{2,5,6}" (ascending, comma separated), or interval
/// shorthand "{4..9}". No whitespace.
FinSet parse_finset(std::string_view text);
std::string format_finset(const FinSet& e);

}  // namespace schreier
