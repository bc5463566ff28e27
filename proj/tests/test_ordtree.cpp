#include <doctest.h>

#include <algorithm>
#include <map>
#include <regex>
#include <thread>
#include <sstream>

#include "schreier/errors.hpp"
#include "schreier/ordtree.hpp"

using namespace schreier;

namespace {

Ordinal ord(const char* s) { return parse_ordinal(s); }

// Independent route: longest successor-edge count over all paths, by dynamic
// programming on the (acyclic) graph in ascending vertex order.
std::uint64_t longest_successor_path(const OrdGraph& g) {
  std::map<Ordinal, std::uint64_t> dp;
  std::vector<Ordinal> vs = g.vertices;
  std::sort(vs.begin(), vs.end());
  for (const auto& v : vs) {
    std::uint64_t best = 0;
    for (const auto& e : g.edges) {
      if (!(e.from == v)) continue;
      const std::uint64_t step = e.kind == OrdEdge::Kind::successor ? 1 : 0;
      best = std::max(best, dp.at(e.to) + step);
    }
    dp[v] = best;
  }
  return dp.at(g.root);
}

}  // namespace

TEST_CASE("f_value: spec examples") {
  for (std::uint32_t n = 1; n <= 5; ++n) CHECK(f_value(n, Ordinal()) == 0);
  for (std::uint64_t k : {1, 3, 9}) CHECK(f_value(4, Ordinal::natural(k)) == k);
  CHECK(f_value(4, ord("w")) == 4);
  CHECK(f_value(3, ord("w*2")) == 6);
  CHECK(f_value(3, ord("w^2")) == 10);
}

TEST_CASE("f_witness: spec examples and validity") {
  FPath p0 = f_witness(3, Ordinal());
  CHECK(p0.vertices == std::vector<Ordinal>{Ordinal()});
  CHECK(p0.successor_edges == 0);

  FPath pw = f_witness(2, ord("w"));
  CHECK(pw.vertices == std::vector<Ordinal>{ord("w"), ord("2"), ord("1"), Ordinal()});
  CHECK(pw.successor_edges == 2);

  FPath pw1 = f_witness(2, ord("w+1"));
  CHECK(pw1.vertices ==
        std::vector<Ordinal>{ord("w+1"), ord("w"), ord("2"), ord("1"), Ordinal()});
  CHECK(pw1.successor_edges == 3);

  // Validity across a grid: consecutive vertices joined by a G_n edge,
  // terminal vertex 0, successor count achieves f_value.
  const auto& policy = default_policy();
  for (const char* lit : {"5", "w", "w+5", "w*3", "w^2", "w^2*2", "w^3"}) {
    for (std::uint32_t n = 1; n <= 4; ++n) {
      FEvaluator f(policy);
      FPath p = f.witness(n, ord(lit));
      REQUIRE(!p.vertices.empty());
      CHECK(p.vertices.front() == ord(lit));
      CHECK(p.vertices.back().is_zero());
      std::uint64_t succ = 0;
      for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        const Ordinal& from = p.vertices[i];
        const Ordinal& to = p.vertices[i + 1];
        if (from.kind() == Ordinal::Kind::successor) {
          CHECK(to == from.predecessor());
          ++succ;
        } else {
          REQUIRE(from.kind() == Ordinal::Kind::limit);
          bool is_limit_edge = false;
          for (std::uint32_t m = 1; m <= n && !is_limit_edge; ++m)
            is_limit_edge = fund_seq(policy, from, m) == to;
          CHECK(is_limit_edge);
        }
      }
      CHECK(succ == p.successor_edges);
      CHECK(succ == f.value(n, ord(lit)));
    }
  }
}

TEST_CASE("build_graph: spec examples") {
  OrdGraph trivial = build_graph(3, Ordinal());
  CHECK(trivial.vertices == std::vector<Ordinal>{Ordinal()});
  CHECK(trivial.edges.empty());

  OrdGraph gw = build_graph(2, ord("w"));
  CHECK(gw.vertices == std::vector<Ordinal>{ord("w"), ord("2"), ord("1"), Ordinal()});
  REQUIRE(gw.edges.size() == 4);
  int dashed = 0, solid = 0;
  for (const auto& e : gw.edges) (e.kind == OrdEdge::Kind::limit ? dashed : solid)++;
  CHECK(dashed == 2);
  CHECK(solid == 2);

  OrdGraph chain = build_graph(1, ord("w+1"));
  CHECK(chain.vertices ==
        std::vector<Ordinal>{ord("w+1"), ord("w"), ord("1"), Ordinal()});
  CHECK(chain.edges.size() == 3);

  CHECK_THROWS_AS(build_graph(4, ord("w^2"), default_policy(), 5), BoundExceeded);
}

TEST_CASE("export_dot: format contract") {
  const std::string single = export_dot(build_graph(2, Ordinal()));
  CHECK(single.find("\"0\";") != std::string::npos);

  const std::string dot = export_dot(build_graph(2, ord("w")));
  auto count_of = [&](const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = dot.find(needle); at != std::string::npos;
         at = dot.find(needle, at + 1))
      ++n;
    return n;
  };
  CHECK(count_of("style=dashed") == 2);
  CHECK(count_of("style=solid") == 2);
  CHECK(dot.find("\"w\" -> \"2\" [style=dashed];") != std::string::npos);
  CHECK(dot.find("\"2\" -> \"1\" [style=solid];") != std::string::npos);

  // Minimal well-formedness: a digraph block whose body lines are node
  // statements, edge statements, or attributes.
  const std::regex line_re(
      R"(^(digraph \w+ \{|\}|  rankdir=\w+;|  "[^"]+";|  "[^"]+" -> "[^"]+" \[style=(solid|dashed)\];)$)");
  std::istringstream ss(dot);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    CHECK_MESSAGE(std::regex_match(line, line_re), "bad DOT line: ", line);
  }
}

TEST_CASE("graph / recursion agreement") {
  for (const char* lit : {"0", "3", "w", "w+1", "w*2", "w^2", "w^2+w", "w^2*2"}) {
    for (std::uint32_t n = 1; n <= 4; ++n) {
      OrdGraph g = build_graph(n, ord(lit));
      CHECK_MESSAGE(longest_successor_path(g) == f_value(n, ord(lit)), "alpha=", lit, " n=", n);
    }
  }
}

TEST_CASE("find_separation: spec examples") {
  CHECK(find_separation(ord("3"), ord("5")) == 0);
  CHECK(find_separation(ord("w"), ord("w+1")) == 0);
  auto sep = find_separation(ord("w+5"), ord("w*2"), default_policy(), 50);
  REQUIRE(sep.has_value());
  CHECK(*sep == 5);
  CHECK(*sep <= 6);

  CHECK_THROWS_AS(find_separation(ord("w"), ord("w")), std::invalid_argument);
  CHECK_THROWS_AS(find_separation(ord("w+1"), ord("w")), std::invalid_argument);

  // F(n,5) = 5 >= n = F(n,w) throughout a short scan: no usable threshold.
  CHECK_FALSE(find_separation(ord("5"), ord("w"), default_policy(), 4).has_value());
  CHECK(find_separation(ord("5"), ord("w"), default_policy(), 10) == 5);
}

TEST_CASE("F invariants: additivity, monotonicity, divergence") {
  FEvaluator f(default_policy());
  for (const char* lit : {"0", "2", "w", "w*2", "w^2"}) {
    for (std::uint32_t n = 1; n <= 6; ++n) {
      for (std::uint64_t m = 1; m <= 10; ++m)
        CHECK(f.value(n, ord(lit) + Ordinal::natural(m)) == f.value(n, ord(lit)) + m);
      CHECK(f.value(n, ord(lit)) <= f.value(n + 1, ord(lit)));
    }
  }
  for (std::uint32_t n = 1; n <= 100; ++n) CHECK(f.value(n, ord("w")) == n);
}

TEST_CASE("concurrent F queries match sequential results") {
  FEvaluator shared(default_policy());
  FEvaluator fresh(default_policy());
  const auto grid = std::vector<const char*>{"w", "w*3", "w^2", "w^2*2", "w^3"};
  std::vector<int> mismatches(6, 0);
  std::vector<std::thread> threads;
  for (int t = 0; t < 6; ++t) {
    threads.emplace_back([&, t] {
      for (std::uint32_t n = 1; n <= 8; ++n)
        for (const char* lit : grid)
          if (shared.value(n, ord(lit)) != fresh.value(n, ord(lit))) ++mismatches[t];
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 0; t < 6; ++t) CHECK(mismatches[t] == 0);
}
