#include "schreier/ordtree.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "schreier/errors.hpp"

namespace schreier {

FEvaluator::FEvaluator(FundSeqPolicy policy) : policy_(std::move(policy)) {}

std::uint64_t FEvaluator::value(std::uint32_t n, const Ordinal& alpha) const {
  if (n == 0) throw std::invalid_argument("f_value(): n must be >= 1");
  if (alpha.is_zero()) return 0;
  Key key{n, alpha};
  {
    std::lock_guard lk(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  std::uint64_t result;
  if (alpha.kind() == Ordinal::Kind::successor) {
    result = value(n, alpha.predecessor()) + 1;
  } else {
    // The sup over m <= n, evaluated for every m because F need not be
    // monotone in the approximating index under arbitrary policies.
    result = 0;
    for (std::uint32_t m = 1; m <= n; ++m)
      result = std::max(result, value(n, fund_seq(policy_, alpha, m)));
  }
  std::lock_guard lk(mu_);
  memo_.emplace(std::move(key), result);
  return result;
}

FPath FEvaluator::witness(std::uint32_t n, const Ordinal& alpha) const {
  FPath path;
  Ordinal at = alpha;
  path.vertices.push_back(at);
  while (!at.is_zero()) {
    if (at.kind() == Ordinal::Kind::successor) {
      at = at.predecessor();
      ++path.successor_edges;
    } else {
      // Smallest m achieving the maximum keeps the witness deterministic.
      std::uint32_t best_m = 1;
      std::uint64_t best = 0;
      for (std::uint32_t m = 1; m <= n; ++m) {
        std::uint64_t v = value(n, fund_seq(policy_, at, m));
        if (v > best) {
          best = v;
          best_m = m;
        }
      }
      at = fund_seq(policy_, at, best_m);
    }
    path.vertices.push_back(at);
  }
  return path;
}

std::uint64_t f_value(std::uint32_t n, const Ordinal& alpha, const FundSeqPolicy& policy) {
  FEvaluator f(policy);
  return f.value(n, alpha);
}

FPath f_witness(std::uint32_t n, const Ordinal& alpha, const FundSeqPolicy& policy) {
  FEvaluator f(policy);
  return f.witness(n, alpha);
}

OrdGraph build_graph(std::uint32_t n, const Ordinal& root, const FundSeqPolicy& policy,
                     std::size_t vertex_bound) {
  if (n == 0) throw std::invalid_argument("build_graph(): n must be >= 1");
  OrdGraph g;
  g.n = n;
  g.root = root;

  std::set<Ordinal> seen{root};
  std::deque<Ordinal> queue{root};
  std::vector<OrdEdge> edges;
  while (!queue.empty()) {
    Ordinal at = queue.front();
    queue.pop_front();
    std::vector<Ordinal> next;
    if (at.kind() == Ordinal::Kind::successor) {
      edges.push_back({at, at.predecessor(), OrdEdge::Kind::successor});
      next.push_back(at.predecessor());
    } else if (at.kind() == Ordinal::Kind::limit) {
      for (std::uint32_t m = 1; m <= n; ++m) {
        Ordinal to = fund_seq(policy, at, m);
        edges.push_back({at, to, OrdEdge::Kind::limit});
        next.push_back(std::move(to));
      }
    }
    for (auto& v : next) {
      if (seen.insert(v).second) {
        if (seen.size() > vertex_bound)
          throw BoundExceeded("build_graph: vertex bound " + std::to_string(vertex_bound) +
                              " exceeded");
        queue.push_back(std::move(v));
      }
    }
  }

  g.vertices.assign(seen.begin(), seen.end());
  std::reverse(g.vertices.begin(), g.vertices.end());  // descending from root
  std::sort(edges.begin(), edges.end(), [](const OrdEdge& a, const OrdEdge& b) {
    if (!(a.from == b.from)) return b.from < a.from;
    return b.to < a.to;
  });
  g.edges = std::move(edges);
  return g;
}

std::string export_dot(const OrdGraph& g) {
  std::string out = "digraph ordtree {\n";
  out += "  rankdir=LR;\n";
  for (const auto& v : g.vertices) out += "  \"" + v.str() + "\";\n";
  for (const auto& e : g.edges) {
    out += "  \"" + e.from.str() + "\" -> \"" + e.to.str() + "\"";
    out += e.kind == OrdEdge::Kind::limit ? " [style=dashed];\n" : " [style=solid];\n";
  }
  return out + "}\n";
}

std::optional<std::uint32_t> find_separation(const Ordinal& alpha, const Ordinal& beta,
                                             const FundSeqPolicy& policy,
                                             std::uint32_t scan_limit) {
  if (!(alpha < beta)) throw std::invalid_argument("find_separation(): requires alpha < beta");
  if (scan_limit == 0) throw std::invalid_argument("find_separation(): empty scan range");
  FEvaluator f(policy);
  // Least valid N is the last n where domination fails (0 when it never
  // fails); a failure at scan_limit itself leaves no usable threshold.
  std::uint32_t last_bad = 0;
  for (std::uint32_t n = 1; n <= scan_limit; ++n)
    if (f.value(n, alpha) >= f.value(n, beta)) last_bad = n;
  if (last_bad == scan_limit) return std::nullopt;
  return last_bad;
}

}  // namespace schreier
