#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "schreier/ordinal.hpp"

namespace schreier {

/// The oriented graph G_n on ordinals: a successor edge a+1 -> a for every
/// successor vertex, and limit edges a -> a_m (m = 1..n) for every limit
/// vertex. Finite and acyclic when restricted to the vertices reachable from
/// a fixed root.
struct OrdEdge {
  enum class Kind { successor, limit };
  Ordinal from;
  Ordinal to;
  Kind kind;
};

struct OrdGraph {
  std::uint32_t n = 1;
  Ordinal root;
  std::vector<Ordinal> vertices;  // sorted descending from root
  std::vector<OrdEdge> edges;
};

/// A path from alpha to 0 in G_n together with its successor-edge count.
struct FPath {
  std::vector<Ordinal> vertices;
  std::uint64_t successor_edges = 0;
};

/// Memoizing evaluator for F(n, alpha): F(n,0) = 0, F(n,a+1) = F(n,a) + 1,
/// F(n,limit) = max over m <= n of F(n, a_m). Equals the maximal number of
/// successor edges on a path from alpha to 0 in G_n. The memo is guarded, so
/// concurrent queries behave as if run in isolation.
class FEvaluator {
 public:
  explicit FEvaluator(FundSeqPolicy policy = default_policy());

  const FundSeqPolicy& policy() const { return policy_; }

  std::uint64_t value(std::uint32_t n, const Ordinal& alpha) const;
  FPath witness(std::uint32_t n, const Ordinal& alpha) const;

 private:
  struct Key {
    std::uint32_t n;
    Ordinal alpha;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<Ordinal>()(k.alpha) * 1000003u + k.n;
    }
  };

  FundSeqPolicy policy_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Key, std::uint64_t, KeyHash> memo_;
};

std::uint64_t f_value(std::uint32_t n, const Ordinal& alpha,
                      const FundSeqPolicy& policy = default_policy());
FPath f_witness(std::uint32_t n, const Ordinal& alpha,
                const FundSeqPolicy& policy = default_policy());

/// Full subgraph of G_n reachable from `root`; throws BoundExceeded when more
/// than `vertex_bound` vertices would be created.
OrdGraph build_graph(std::uint32_t n, const Ordinal& root,
                     const FundSeqPolicy& policy = default_policy(),
                     std::size_t vertex_bound = 100000);

/// DOT digraph; successor edges solid, limit edges dashed, labels are
/// ordinal literals.
std::string export_dot(const OrdGraph& g);

/// Least N <= scan_limit with F(n,alpha) < F(n,beta) for all N < n <=
/// scan_limit, or nullopt when no such N below scan_limit exists. Requires
/// alpha < beta.
std::optional<std::uint32_t> find_separation(const Ordinal& alpha, const Ordinal& beta,
                                             const FundSeqPolicy& policy = default_policy(),
                                             std::uint32_t scan_limit = 50);

}  // namespace schreier
