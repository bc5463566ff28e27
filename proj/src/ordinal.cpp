#include "schreier/ordinal.hpp"

#include <cctype>
#include <stdexcept>

#include "schreier/errors.hpp"

namespace schreier {

Ordinal Ordinal::natural(std::uint64_t k) {
  Ordinal a;
  if (k > 0) a.terms_.push_back({0, k});
  return a;
}

Ordinal Ordinal::omega(std::uint64_t exponent, std::uint64_t coefficient) {
  if (exponent == 0 || coefficient == 0)
    throw std::invalid_argument("omega(): exponent and coefficient must be >= 1");
  Ordinal a;
  a.terms_.push_back({exponent, coefficient});
  return a;
}

Ordinal Ordinal::from_terms(std::vector<OrdTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0)
      throw std::invalid_argument("from_terms(): zero coefficient");
    if (i > 0 && terms[i - 1].exponent <= terms[i].exponent)
      throw std::invalid_argument("from_terms(): exponents not strictly decreasing");
  }
  Ordinal a;
  a.terms_ = std::move(terms);
  return a;
}

bool Ordinal::is_natural() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

std::uint64_t Ordinal::natural_value() const {
  if (!is_natural()) throw std::invalid_argument("natural_value(): ordinal is infinite");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

Ordinal::Kind Ordinal::kind() const {
  if (terms_.empty()) return Kind::zero;
  return terms_.back().exponent == 0 ? Kind::successor : Kind::limit;
}

Ordinal Ordinal::predecessor() const {
  if (kind() != Kind::successor)
    throw std::invalid_argument("predecessor(): not a successor ordinal");
  Ordinal a = *this;
  if (--a.terms_.back().coefficient == 0) a.terms_.pop_back();
  return a;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const std::uint64_t lead = b.terms().front().exponent;
  Ordinal r;
  std::vector<OrdTerm> terms;
  // Left summand keeps only the terms that are not absorbed by b's leading term.
  for (const auto& t : a.terms())
    if (t.exponent >= lead) terms.push_back(t);
  for (const auto& t : b.terms()) {
    if (!terms.empty() && terms.back().exponent == t.exponent)
      terms.back().coefficient += t.coefficient;
    else
      terms.push_back(t);
  }
  return Ordinal::from_terms(std::move(terms));
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Ordinal run() {
    if (text_.empty()) throw ParseError("empty ordinal literal", 0);
    if (text_ == "0") return Ordinal();
    Ordinal total = term();
    while (pos_ < text_.size()) {
      expect('+');
      total = total + term();
    }
    return total;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::uint64_t nat() {
    if (!std::isdigit(static_cast<unsigned char>(peek())) || peek() == '0')
      throw ParseError("expected natural number ([1-9][0-9]*)", pos_);
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::uint64_t d = static_cast<std::uint64_t>(peek() - '0');
      if (v > (UINT64_MAX - d) / 10) throw ParseError("natural literal too large", pos_);
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  Ordinal term() {
    if (peek() == 'w') {
      ++pos_;
      std::uint64_t exponent = 1, coefficient = 1;
      if (peek() == '^') {
        ++pos_;
        exponent = nat();
      }
      if (peek() == '*') {
        ++pos_;
        coefficient = nat();
      }
      return Ordinal::omega(exponent, coefficient);
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) return Ordinal::natural(nat());
    throw ParseError("expected term ('w...' or natural)", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return Parser(text).run(); }

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += '+';
    const auto& t = terms_[i];
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent > 1) out += "^" + std::to_string(t.exponent);
    if (t.coefficient > 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

std::string format_ordinal(const Ordinal& a) { return a.str(); }

Ordinal fund_seq(const FundSeqPolicy& policy, const Ordinal& beta, std::uint64_t m) {
  if (beta.kind() != Ordinal::Kind::limit)
    throw std::invalid_argument("fund_seq(): " + beta.str() + " is not a limit ordinal");
  if (m == 0) throw std::invalid_argument("fund_seq(): index m must be >= 1");
  Ordinal r = policy(beta, m);
  if (r.kind() != Ordinal::Kind::successor || !(r < beta))
    throw std::invalid_argument("fund_seq(): policy '" + policy.name() +
                                "' produced an invalid approximating term " + r.str() +
                                " for " + beta.str());
  return r;
}

const FundSeqPolicy& default_policy() {
  static const FundSeqPolicy policy("default", [](const Ordinal& beta, std::uint64_t m) {
    if (beta.kind() != Ordinal::Kind::limit || m == 0)
      throw std::invalid_argument("default policy: needs a limit ordinal and m >= 1");
    const auto& terms = beta.terms();
    std::vector<OrdTerm> out(terms.begin(), terms.end() - 1);
    const OrdTerm last = terms.back();
    if (last.coefficient > 1) out.push_back({last.exponent, last.coefficient - 1});
    if (last.exponent == 1) {
      out.push_back({0, m});
    } else {
      // The natural term w^(e-1)*m is a limit, so append +1 ("successorization").
      out.push_back({last.exponent - 1, m});
      out.push_back({0, 1});
    }
    return Ordinal::from_terms(std::move(out));
  });
  return policy;
}

}  // namespace schreier
