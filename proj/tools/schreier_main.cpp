// Command-line surface for the Schreier-family toolkit: membership queries,
// decomposition witnesses, F/G tables, ordinal-tree graphs, policy
// diagnostics, norm-constant experiments, and the lemma verification
// campaign. Exit codes: 0 success, 2 usage, 3 bound/overflow, 4 check
// failures (verify exits with the failing-cell count, capped at 125).

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "schreier/banach.hpp"
#include "schreier/errors.hpp"
#include "schreier/family.hpp"
#include "schreier/growth.hpp"
#include "schreier/lemma_suite.hpp"
#include "schreier/ordtree.hpp"

namespace {

using namespace schreier;
using nlohmann::ordered_json;

struct GlobalOpts {
  std::string policy_spec = "default";
  std::uint32_t enum_bound = 14;
  std::string g_cap = "1000000000000000000";
  std::string format = "text";
  std::uint64_t seed = 0;
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GrowthFn growth_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("growth function file: expected a JSON array");
  std::vector<std::uint64_t> values;
  for (const auto& v : j) values.push_back(v.get<std::uint64_t>());
  return GrowthFn(std::move(values));
}

FundSeqPolicy load_policy(const GlobalOpts& g) {
  std::string spec = g.policy_spec;
  if (spec == "default") {
    if (const char* env = std::getenv("SCHREIER_POLICY_FILE")) spec = std::string("file:") + env;
  }
  if (spec == "default") return default_policy();
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--policy expects default, shift:FILE or boost:FILE");
  const std::string kind = spec.substr(0, colon);
  const std::string path = spec.substr(colon + 1);
  const std::string text = read_file(path);
  if (kind == "shift") return shift_policy(default_policy(), growth_from_json_text(text));
  if (kind == "boost" || kind == "file") {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.is_array() && kind == "file")
      return shift_policy(default_policy(), growth_from_json_text(text));
    if (!j.is_object())
      throw std::invalid_argument("boost policy file: expected object {ordinal: [values...]}");
    std::map<Ordinal, GrowthFn> h_map;
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::vector<std::uint64_t> values;
      for (const auto& v : it.value()) values.push_back(v.get<std::uint64_t>());
      h_map.emplace(parse_ordinal(it.key()), GrowthFn(std::move(values)));
    }
    return boost_policy(default_policy(), h_map);
  }
  throw std::invalid_argument("unknown policy kind: " + kind);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<Ordinal> parse_ordinal_list(const std::string& list) {
  std::vector<Ordinal> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_ordinal(item));
  return out;
}

// Deterministic across platforms: mt19937_64 output mapped to [-1,1).
Vector random_vector(std::mt19937_64& rng, std::uint32_t window) {
  Vector x;
  for (std::uint32_t i = 1; i <= window; ++i) {
    double u = static_cast<double>(rng() >> 11) * 0x1p-53;  // [0,1)
    x.set(i, 2.0 * u - 1.0);
  }
  return x;
}

int cmd_member(const GlobalOpts& g, const std::string& set_lit, const std::string& alpha_lit,
               bool witness) {
  FundSeqPolicy policy = load_policy(g);
  FinSet e = parse_finset(set_lit);
  SchreierHandle h(parse_ordinal(alpha_lit), policy);
  const bool yes = h.member(e);
  if (g.format == "json") {
    ordered_json j{{"set", e.str()}, {"alpha", alpha_lit}, {"member", yes}};
    if (witness && yes) j["witness"] = nlohmann::json::parse(h.decompose(e).json());
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (yes ? "true" : "false") << "\n";
    if (witness && yes) std::cout << h.decompose(e).text();
  }
  return 0;
}

int cmd_decompose(const GlobalOpts& g, const std::string& set_lit,
                  const std::string& alpha_lit) {
  FundSeqPolicy policy = load_policy(g);
  SchreierHandle h(parse_ordinal(alpha_lit), policy);
  DecompWitness w = h.decompose(parse_finset(set_lit));
  if (g.format == "json")
    std::cout << nlohmann::json::parse(w.json()).dump(2) << "\n";
  else
    std::cout << w.text();
  return 0;
}

int cmd_enumerate(const GlobalOpts& g, const std::string& alpha_lit, std::uint32_t n) {
  FundSeqPolicy policy = load_policy(g);
  auto sets = enumerate_family(parse_ordinal(alpha_lit), n, policy, g.enum_bound);
  if (g.format == "json") {
    ordered_json j{{"alpha", alpha_lit}, {"N", n}, {"count", sets.size()}};
    ordered_json arr = ordered_json::array();
    for (const auto& s : sets) arr.push_back(s.str());
    j["sets"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& s : sets) std::cout << s.str() << "\n";
  }
  return 0;
}

int cmd_table(const GlobalOpts& g, const std::string& kind, const std::string& alpha_list,
              std::uint32_t n_min, std::uint32_t n_max) {
  FundSeqPolicy policy = load_policy(g);
  std::vector<Ordinal> alphas = parse_ordinal_list(alpha_list);
  const BigNat cap(g.g_cap);

  struct Row {
    std::string alpha;
    std::uint32_t n;
    std::string value;
  };
  std::vector<Row> rows;
  FEvaluator f(policy);
  for (const auto& a : alphas) {
    std::unique_ptr<SchreierHandle> h;
    if (kind == "G") h = std::make_unique<SchreierHandle>(a, policy);
    for (std::uint32_t n = n_min; n <= n_max; ++n) {
      std::string v = kind == "F" ? std::to_string(f.value(n, a))
                                  : h->g_value(BigNat(n), cap).str();
      rows.push_back({a.str(), n, std::move(v)});
    }
  }

  if (g.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
      arr.push_back({{"alpha", r.alpha}, {"n", r.n}, {"value", r.value}});
    std::cout << ordered_json{{"kind", kind}, {"rows", std::move(arr)}}.dump(2) << "\n";
  } else {
    std::cout << "alpha,n," << kind << "\n";
    for (const auto& r : rows)
      std::cout << csv_escape(r.alpha) << "," << r.n << "," << csv_escape(r.value) << "\n";
  }
  return 0;
}

int cmd_graph(const GlobalOpts& g, std::uint32_t n, const std::string& alpha_lit,
              std::size_t vertex_bound) {
  FundSeqPolicy policy = load_policy(g);
  std::cout << export_dot(build_graph(n, parse_ordinal(alpha_lit), policy, vertex_bound));
  return 0;
}

int cmd_separation(const GlobalOpts& g, const std::string& alpha_lit,
                   const std::string& beta_lit, std::uint32_t scan) {
  FundSeqPolicy policy = load_policy(g);
  auto sep = find_separation(parse_ordinal(alpha_lit), parse_ordinal(beta_lit), policy, scan);
  if (g.format == "json") {
    ordered_json j{{"alpha", alpha_lit}, {"beta", beta_lit}, {"scan_limit", scan}};
    if (sep)
      j["N"] = *sep;
    else
      j["N"] = nullptr;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (sep ? "N = " + std::to_string(*sep) : std::string("not found")) << "\n";
  }
  return 0;
}

int cmd_policy_check(const GlobalOpts& g, const std::string& beta_lit, std::uint64_t m_max,
                     std::uint32_t n) {
  FundSeqPolicy policy = load_policy(g);
  ChainInclusionReport report =
      check_chain_inclusion(policy, parse_ordinal(beta_lit), m_max, n, g.enum_bound);
  if (g.format == "json")
    std::cout << to_json(report).dump(2) << "\n";
  else
    std::cout << report.text();
  return report.all_hold() ? 0 : 4;
}

int cmd_constants(const GlobalOpts& g, const std::string& basis, std::uint32_t window,
                  const std::string& family_lit, const std::string& vectors_file,
                  std::uint64_t random_count, std::uint64_t greedy_m, const std::string& mode,
                  bool exact, bool non_strict, bool growth_table,
                  const std::string& alpha_list, const std::string& window_list) {
  // Reject invalid combinations before any computation starts.
  if (exact && random_count > 0)
    throw std::invalid_argument("--exact requires explicit vectors (--vectors FILE)");
  if (greedy_m > 0 && family_lit == "all")
    throw std::invalid_argument("greedy constants need a family order (--family ALPHA)");
  if (growth_table && (alpha_list.empty() || window_list.empty()))
    throw std::invalid_argument("--growth-table needs --alphas and --windows");

  FundSeqPolicy policy = load_policy(g);

  auto parse_basis = [&](std::uint32_t w) {
    if (basis == "summing") return NormSpec::summing_norm(w);
    if (basis == "sup") return NormSpec::sup_norm(w);
    if (basis.rfind("schreier:", 0) == 0)
      return NormSpec::schreier_norm(parse_ordinal(basis.substr(9)), w);
    throw std::invalid_argument("--basis expects summing, sup, or schreier:ALPHA");
  };

  if (growth_table) {
    std::vector<std::uint32_t> windows;
    {
      std::stringstream ss(window_list);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) windows.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    auto rows = constant_growth_table(parse_basis(window), parse_ordinal_list(alpha_list),
                                      windows, policy);
    if (g.format == "json") {
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows)
        arr.push_back({{"alpha", r.family_alpha.str()},
                       {"N", r.window},
                       {"constant", r.constant},
                       {"mode", r.mode},
                       {"witness", r.witness}});
      std::cout << arr.dump(2) << "\n";
    } else {
      std::cout << "alpha,N,constant,mode,witness\n";
      for (const auto& r : rows) {
        std::ostringstream c;
        c.precision(17);
        c << r.constant;
        std::cout << csv_escape(r.family_alpha.str()) << "," << r.window << "," << c.str()
                  << "," << r.mode << "," << csv_escape(r.witness) << "\n";
      }
    }
    return 0;
  }

  // Collect input vectors.
  std::vector<std::pair<std::string, std::string>> vector_texts;  // (label, json literal)
  if (!vectors_file.empty()) {
    nlohmann::json j = nlohmann::json::parse(read_file(vectors_file));
    if (!j.is_array())
      throw std::invalid_argument("--vectors file must be a JSON array of {index: value}");
    for (std::size_t i = 0; i < j.size(); ++i)
      vector_texts.emplace_back("v" + std::to_string(i), j[i].dump());
  }
  std::mt19937_64 rng(g.seed);
  std::vector<std::pair<std::string, Vector>> randoms;
  for (std::uint64_t i = 0; i < random_count; ++i)
    randoms.emplace_back("random" + std::to_string(i), random_vector(rng, window));
  if (vector_texts.empty() && randoms.empty())
    throw std::invalid_argument("constants: provide --vectors FILE or --random COUNT");

  const bool greedy = greedy_m > 0;
  const DenomMode dmode = mode == "optimize" ? DenomMode::optimize : DenomMode::projection;

  std::vector<std::array<std::string, 4>> rows;  // label, family, constant, witness
  auto run_one = [&](const std::string& label, const Vector* xd, const std::string& json_lit) {
    std::string value, witness;
    if (exact) {
      if (json_lit.empty())
        throw std::invalid_argument("--exact requires vectors from --vectors");
      RationalVector x = rational_vector_from_json_text(json_lit);
      NormEvaluator<Rational> eval(parse_basis(window), policy);
      if (greedy) {
        SchreierHandle fam(parse_ordinal(family_lit), policy);
        auto r = greedy_constant(x, greedy_m, fam, eval, dmode, !non_strict);
        value = r.infinite ? "inf" : r.value.str();
        witness = "Lambda=" + r.worst_lambda.str() + " A=" + r.best_a.str();
      } else if (family_lit == "all") {
        auto r = uncond_constant_all(x, eval);
        value = r.value.str();
        witness = "A=" + r.witness.str();
      } else {
        SchreierHandle fam(parse_ordinal(family_lit), policy);
        auto r = uncond_constant(x, fam, eval);
        value = r.value.str();
        witness = "A=" + r.witness.str();
      }
    } else {
      Vector parsed;
      if (!xd) {
        parsed = vector_from_json_text(json_lit);
        xd = &parsed;
      }
      NormEvaluator<double> eval(parse_basis(window), policy);
      std::ostringstream out;
      out.precision(17);
      if (greedy) {
        SchreierHandle fam(parse_ordinal(family_lit), policy);
        auto r = greedy_constant(*xd, greedy_m, fam, eval, dmode, !non_strict);
        if (r.infinite)
          out << "inf";
        else
          out << r.value;
        witness = "Lambda=" + r.worst_lambda.str() + " A=" + r.best_a.str();
      } else if (family_lit == "all") {
        auto r = uncond_constant_all(*xd, eval);
        out << r.value;
        witness = "A=" + r.witness.str();
      } else {
        SchreierHandle fam(parse_ordinal(family_lit), policy);
        auto r = uncond_constant(*xd, fam, eval);
        out << r.value;
        witness = "A=" + r.witness.str();
      }
      value = out.str();
    }
    rows.push_back({label, family_lit, value, witness});
  };

  for (const auto& [label, text] : vector_texts) run_one(label, nullptr, text);
  for (const auto& [label, x] : randoms) run_one(label, &x, "");

  if (g.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
      arr.push_back({{"vector", r[0]},
                     {"family", r[1]},
                     {"kind", greedy ? "greedy" : "uncond"},
                     {"mode", greedy ? mode : "max-ratio"},
                     {"constant", r[2]},
                     {"witness", r[3]}});
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "vector,family,constant,mode,witness\n";
    for (const auto& r : rows)
      std::cout << csv_escape(r[0]) << "," << csv_escape(r[1]) << "," << csv_escape(r[2]) << ","
                << (greedy ? mode : "max-ratio") << "," << csv_escape(r[3]) << "\n";
  }
  return 0;
}

int cmd_verify(const GlobalOpts& g, std::vector<std::string> names) {
  CampaignConfig config;
  config.policy = load_policy(g);
  config.g_cap = BigNat(g.g_cap);

  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = check_names();
  std::vector<CheckReport> reports;
  for (const auto& n : names) reports.push_back(run_check(n, config));

  const std::size_t failures = total_failures(reports);
  if (g.format == "text") {
    for (const auto& r : reports)
      std::cout << r.name << ": " << (r.all_pass() ? "pass" : "FAIL") << " (" << r.cells.size()
                << " cells, " << r.failures() << " failing)\n";
    std::cout << "total failing cells: " << failures << "\n";
  } else {
    std::cout << campaign_summary(reports, config, g.timing).dump(2) << "\n";
  }
  return static_cast<int>(std::min<std::size_t>(failures, 125));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schreier families, ordinal trees, and greedy-basis constants"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  GlobalOpts g;
  app.add_option("--policy", g.policy_spec,
                 "approximating-sequence policy: default | shift:FILE | boost:FILE");
  app.add_option("--enum-bound", g.enum_bound, "max N for enumeration (default 14)");
  app.add_option("--g-cap", g.g_cap, "cap for G values (default 10^18)");
  app.add_option("--format", g.format, "output format: text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", g.seed, "seed for sampled vectors");
  app.add_flag("--timing", g.timing, "include timing fields in reports");

  // member
  std::string set_lit, alpha_lit, beta_lit;
  bool witness = false;
  auto* member_cmd = app.add_subcommand("member", "decide E in S_alpha");
  member_cmd->add_option("set", set_lit, "set literal, e.g. {2,5,6} or {4..9}")->required();
  member_cmd->add_option("--alpha", alpha_lit, "ordinal literal")->required();
  member_cmd->add_flag("--witness", witness, "print a decomposition witness on membership");

  auto* decompose_cmd = app.add_subcommand("decompose", "membership certificate tree");
  decompose_cmd->add_option("set", set_lit)->required();
  decompose_cmd->add_option("--alpha", alpha_lit)->required();

  std::uint32_t en_n = 8;
  auto* enum_cmd = app.add_subcommand("enumerate", "all members within {1..N} (oracle route)");
  enum_cmd->add_option("--alpha", alpha_lit)->required();
  enum_cmd->add_option("-N,--window", en_n)->required();

  std::string kind = "F", alpha_list;
  std::uint32_t n_min = 1, n_max = 8;
  auto* table_cmd = app.add_subcommand("table", "F or G value grid as CSV/JSON");
  table_cmd->add_option("--kind", kind)->check(CLI::IsMember({"F", "G"}));
  table_cmd->add_option("--alpha", alpha_list, "comma-separated ordinal literals")->required();
  table_cmd->add_option("--n-min", n_min);
  table_cmd->add_option("--n-max", n_max);

  std::uint32_t graph_n = 2;
  std::size_t vertex_bound = 100000;
  auto* graph_cmd = app.add_subcommand("graph", "DOT export of the reachable ordinal tree");
  graph_cmd->add_option("-n", graph_n)->required();
  graph_cmd->add_option("--alpha", alpha_lit)->required();
  graph_cmd->add_option("--vertex-bound", vertex_bound);

  std::uint32_t scan = 50;
  auto* sep_cmd = app.add_subcommand("separation", "least N with F(n,a) < F(n,b) beyond N");
  sep_cmd->add_option("--alpha", alpha_lit)->required();
  sep_cmd->add_option("--beta", beta_lit)->required();
  sep_cmd->add_option("--scan", scan);

  std::uint64_t m_max = 3;
  std::uint32_t pc_n = 8;
  auto* pc_cmd = app.add_subcommand("policy-check", "chain inclusion S_{b_m} in S_{b_{m+1}}");
  pc_cmd->add_option("--beta", beta_lit)->required();
  pc_cmd->add_option("--m-max", m_max);
  pc_cmd->add_option("-N,--window", pc_n);

  std::string basis = "summing", family_lit = "all", vectors_file, mode = "projection";
  std::string ct_alphas, ct_windows;
  std::uint32_t window = 8;
  std::uint64_t greedy_m = 0, random_count = 0;
  bool exact = false, non_strict = false, growth_table = false;
  auto* const_cmd = app.add_subcommand("constants", "unconditionality / greedy constants");
  const_cmd->add_option("--basis", basis, "summing | sup | schreier:ALPHA");
  const_cmd->add_option("-N,--window", window);
  const_cmd->add_option("--family", family_lit, "ordinal literal or 'all'");
  const_cmd->add_option("--vectors", vectors_file, "JSON array of {index: value} objects");
  const_cmd->add_option("--random", random_count, "number of seeded random vectors");
  const_cmd->add_option("--greedy-m", greedy_m, "greedy constant of this order (0 = uncond)");
  const_cmd->add_option("--mode", mode)->check(CLI::IsMember({"projection", "optimize"}));
  const_cmd->add_flag("--exact", exact, "exact rational arithmetic");
  const_cmd->add_flag("--non-strict", non_strict, "|A| <= m instead of |A| < m");
  const_cmd->add_flag("--growth-table", growth_table, "uncond growth grid over (alpha, N)");
  const_cmd->add_option("--alphas", ct_alphas, "growth table family orders");
  const_cmd->add_option("--windows", ct_windows, "growth table windows");

  std::vector<std::string> check_list;
  auto* verify_cmd = app.add_subcommand("verify", "run the lemma verification campaign");
  verify_cmd->add_option("checks", check_list, "check names or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (member_cmd->parsed()) return cmd_member(g, set_lit, alpha_lit, witness);
    if (decompose_cmd->parsed()) return cmd_decompose(g, set_lit, alpha_lit);
    if (enum_cmd->parsed()) return cmd_enumerate(g, alpha_lit, en_n);
    if (table_cmd->parsed()) return cmd_table(g, kind, alpha_list, n_min, n_max);
    if (graph_cmd->parsed()) return cmd_graph(g, graph_n, alpha_lit, vertex_bound);
    if (sep_cmd->parsed()) return cmd_separation(g, alpha_lit, beta_lit, scan);
    if (pc_cmd->parsed()) return cmd_policy_check(g, beta_lit, m_max, pc_n);
    if (const_cmd->parsed())
      return cmd_constants(g, basis, window, family_lit, vectors_file, random_count, greedy_m,
                           mode, exact, non_strict, growth_table, ct_alphas, ct_windows);
    if (verify_cmd->parsed()) return cmd_verify(g, check_list);
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotAMember& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
