#include "schreier/banach.hpp"

#include <json.hpp>

namespace schreier {

double scalar_to_double(double v) { return v; }
double scalar_to_double(const Rational& v) { return v.convert_to<double>(); }

std::string NormSpec::str() const {
  switch (variant) {
    case Variant::schreier:
      return "schreier(" + alpha.str() + ",N=" + std::to_string(window) + ")";
    case Variant::summing:
      return "summing(N=" + std::to_string(window) + ")";
    case Variant::sup:
      return "sup(N=" + std::to_string(window) + ")";
  }
  return "?";
}

void for_each_family_member(const SchreierHandle& family, std::uint32_t window,
                            std::size_t size_limit,
                            const std::function<void(const FinSet&)>& visit) {
  visit(FinSet());  // the empty set belongs to every family
  if (size_limit == 0) return;
  std::vector<std::uint64_t> cur;
  // Hereditarity: every prefix of a member is a member, so extending members
  // to the right reaches the whole family exactly once.
  auto rec = [&](auto&& self, std::uint64_t from) -> void {
    for (std::uint64_t k = from; k <= window; ++k) {
      cur.push_back(k);
      auto cand = FinSet(std::vector<std::uint64_t>(cur));
      if (family.member(cand)) {
        visit(cand);
        if (cur.size() < size_limit) self(self, k + 1);
      }
      cur.pop_back();
    }
  };
  rec(rec, 1);
}

std::vector<GrowthTableRow> constant_growth_table(const NormSpec& basis,
                                                  const std::vector<Ordinal>& alphas,
                                                  const std::vector<std::uint32_t>& windows,
                                                  const FundSeqPolicy& policy) {
  std::vector<GrowthTableRow> rows;
  for (const Ordinal& alpha : alphas) {
    for (std::uint32_t n : windows) {
      NormSpec spec = basis;
      spec.window = n;
      NormEvaluator<double> eval(spec, policy);
      SchreierHandle family(alpha, policy);

      GrowthTableRow row;
      row.family_alpha = alpha;
      row.window = n;
      row.mode = "uncond";
      const std::pair<const char*, Vector> witnesses[] = {
          {"alternating", alternating_vector<double>(n)},
          {"ones", ones_vector<double>(n)},
      };
      bool first = true;
      for (const auto& [name, x] : witnesses) {
        auto r = uncond_constant(x, family, eval);
        if (first || r.value > row.constant) {
          row.constant = r.value;
          row.witness = std::string(name) + " A=" + r.witness.str();
          first = false;
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

// Strict decimal integer: optional sign, digits only. Built digit by digit
// so leading zeros never trigger the octal reading of the cpp_int parser.
BigNat parse_decimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty number");
  std::size_t at = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    at = 1;
  }
  if (at == text.size()) throw std::invalid_argument("parse_rational: missing digits");
  BigNat v = 0;
  for (; at < text.size(); ++at) {
    if (text[at] < '0' || text[at] > '9')
      throw std::invalid_argument("parse_rational: bad digit in '" + text + "'");
    v = v * 10 + (text[at] - '0');
  }
  return negative ? BigNat(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty literal");
  std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    BigNat num = parse_decimal(text.substr(0, slash));
    BigNat den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(num, den);
  }
  std::size_t dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_decimal(text));
  BigNat whole = parse_decimal(text.substr(0, dot));
  const std::string frac = text.substr(dot + 1);
  BigNat num = 0, den = 1;
  for (char c : frac) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("parse_rational: bad digit in '" + text + "'");
    num = num * 10 + (c - '0');
    den *= 10;
  }
  const bool negative = !text.empty() && text[0] == '-';
  Rational r = Rational(whole) + (negative ? -Rational(num, den) : Rational(num, den));
  return r;
}

namespace {

std::uint64_t parse_index_key(const std::string& key) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(key, &used);
    if (used != key.size() || v == 0) throw std::invalid_argument("bad");
    return v;
  } catch (...) {
    throw std::invalid_argument("vector literal: bad index key '" + key + "'");
  }
}

}  // namespace

Vector vector_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("vector literal: expected a JSON object");
  Vector x;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number())
      throw std::invalid_argument("vector literal: values must be numbers");
    x.set(parse_index_key(it.key()), it.value().get<double>());
  }
  return x;
}

RationalVector rational_vector_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("vector literal: expected a JSON object");
  RationalVector x;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    Rational value;
    if (v.is_number_integer()) {
      value = Rational(v.get<std::int64_t>());
    } else if (v.is_string()) {
      value = parse_rational(v.get<std::string>());
    } else {
      throw std::invalid_argument(
          "vector literal (exact mode): use integers or strings like \"-3/4\"");
    }
    x.set(parse_index_key(it.key()), value);
  }
  return x;
}

}  // namespace schreier
