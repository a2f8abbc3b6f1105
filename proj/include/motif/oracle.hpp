#pragma once
// Brute-force ground truth and adversarial fixtures: exact motif census by
// connected-subgraph enumeration, exact colorful treelet counts by subtree
// enumeration, exact spanning-tree profiles by edge-subset filtering, and
// deterministic graph generators. Everything here exists to check the fast
// paths, not to compete with them.

#include <map>
#include <utility>
#include <vector>

#include "motif/build.hpp"
#include "motif/graph.hpp"
#include "motif/graphlet.hpp"
#include "motif/treelet.hpp"

namespace motif {

struct Census {
  int k = 0;
  std::map<GraphletCode, u128> counts;

  u128 total() const {
    u128 t = 0;
    for (const auto& [code, c] : counts) t += c;
    return t;
  }
};

struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered-extension enumeration: every connected induced k-node subgraph is
// generated exactly once from its minimum-id vertex.
Census exact_census(const Graph& g, int k, u64 max_subgraphs = 200000000);

// Independent second route: filter all C(n, k) subsets for connectivity.
// Only for tiny n; used to check the enumerator itself.
Census exact_census_naive(const Graph& g, int k);

// One non-induced colorful treelet copy: a subtree of the host graph.
struct SubtreeCopy {
  std::vector<u32> nodes;                   // sorted
  std::vector<std::pair<u32, u32>> edges;   // sorted, each (min, max)
  u64 rooted_key = 0;                       // colored code rooted at the color-0 node (h == k only)
};

// All colorful h-node subtrees of g under the given coloring.
std::vector<SubtreeCopy> enumerate_colorful_subtrees(const Graph& g, const Coloring& coloring,
                                                     int h);

// Exhaustive rooted counts: (colored key, root) -> number of colorful
// non-induced copies. Every copy contributes one count per node it contains
// (rooted there).
std::map<std::pair<u64, u32>, u128> exact_colorful_treelets(const Graph& g,
                                                            const Coloring& coloring, int h);

// Spanning trees by brute force over edge subsets, grouped by
// rooting-independent shape.
struct SpanningOracle {
  u128 sigma = 0;
  std::map<TreeletCode, u128> by_shape;
};
SpanningOracle exact_spanning_trees(const SmallAdj& adj);

// Clique on n - tail nodes plus a dangling path of tail nodes, attached by
// one edge.
Graph gen_lollipop(u32 n, u32 tail);
Graph gen_er(u32 n, double p, u64 seed);
Graph gen_star(u32 n);
Graph gen_path(u32 n);
Graph gen_cycle(u32 n);
Graph gen_complete(u32 n);

}  // namespace motif
