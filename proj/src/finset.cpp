#include "schreier/finset.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "schreier/errors.hpp"

namespace schreier {

FinSet::FinSet(std::vector<std::uint64_t> elems) : elems_(std::move(elems)) {
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i] == 0) throw std::invalid_argument("FinSet: elements must be >= 1");
    if (i > 0 && elems_[i - 1] >= elems_[i])
      throw std::invalid_argument("FinSet: elements must be strictly increasing");
  }
}

FinSet FinSet::interval(std::uint64_t a, std::uint64_t b) {
  FinSet e;
  if (a == 0) throw std::invalid_argument("FinSet: elements must be >= 1");
  if (b >= a && b - a >= 10000000)
    throw BoundExceeded("FinSet::interval: more than 10^7 elements");
  for (std::uint64_t x = a; x <= b; ++x) e.elems_.push_back(x);
  return e;
}

bool FinSet::contains(std::uint64_t x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

bool FinSet::contains_all(const FinSet& other) const {
  return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end());
}

std::string FinSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(elems_[i]);
  }
  return out + "}";
}

std::string format_finset(const FinSet& e) { return e.str(); }

namespace {

std::uint64_t parse_nat(std::string_view text, std::size_t& pos) {
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])) ||
      text[pos] == '0')
    throw ParseError("expected natural number", pos);
  std::uint64_t v = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    std::uint64_t d = static_cast<std::uint64_t>(text[pos] - '0');
    if (v > (UINT64_MAX - d) / 10) throw ParseError("natural literal too large", pos);
    v = v * 10 + d;
    ++pos;
  }
  return v;
}

}  // namespace

FinSet parse_finset(std::string_view text) {
  std::size_t pos = 0;
  if (text.empty() || text[pos] != '{') throw ParseError("expected '{'", pos);
  ++pos;
  if (pos < text.size() && text[pos] == '}') {
    if (pos + 1 != text.size()) throw ParseError("trailing characters after '}'", pos + 1);
    return FinSet();
  }
  std::vector<std::uint64_t> elems;
  std::uint64_t first = parse_nat(text, pos);
  if (pos + 1 < text.size() && text[pos] == '.' && text[pos + 1] == '.') {
    pos += 2;
    std::uint64_t last = parse_nat(text, pos);
    if (pos >= text.size() || text[pos] != '}') throw ParseError("expected '}'", pos);
    if (pos + 1 != text.size()) throw ParseError("trailing characters after '}'", pos + 1);
    if (last < first) throw ParseError("descending interval", pos);
    return FinSet::interval(first, last);
  }
  elems.push_back(first);
  while (pos < text.size() && text[pos] == ',') {
    ++pos;
    elems.push_back(parse_nat(text, pos));
  }
  if (pos >= text.size() || text[pos] != '}') throw ParseError("expected '}'", pos);
  if (pos + 1 != text.size()) throw ParseError("trailing characters after '}'", pos + 1);
  try {
    return FinSet(std::move(elems));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), pos);
  }
}

}  // namespace schreier
