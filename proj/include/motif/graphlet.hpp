#pragma once
// Graphlet-level mathematics: canonical 128-bit graphlet codes, exact
// spanning-tree counts via the matrix-tree theorem, spanning-tree shape
// profiles, the colorful probability p_k = k!/k^k, and count estimators.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "motif/common.hpp"
#include "motif/small_graph.hpp"
#include "motif/treelet.hpp"

namespace motif {

struct GraphletCode {
  u128 bits = 0;
  u8 k = 0;

  std::string hex() const { return hex_string(bits); }
  SmallAdj adjacency() const { return SmallAdj{k, bits}; }
  friend constexpr bool operator==(const GraphletCode& a, const GraphletCode& b) {
    return a.k == b.k && a.bits == b.bits;
  }
  friend constexpr auto operator<=>(const GraphletCode& a, const GraphletCode& b) {
    if (auto c = a.k <=> b.k; c != 0) return c;
    return a.bits <=> b.bits;
  }
};

// Canonical representative of the isomorphism class: the numerically minimal
// packing over all vertex orders. Exhaustive permutation search for k <= 8;
// a lexicographic frontier search (same result) above that. Memoized
// process-wide. Throws on disconnected input; k <= 10.
GraphletCode canonical_graphlet(const SmallAdj& adj);

// Exact number of spanning trees via a fraction-free integer determinant of
// a Laplacian minor.
u128 spanning_tree_count(const SmallAdj& adj);

struct SpanningProfile {
  u128 sigma = 0;                                    // total spanning trees
  std::vector<std::pair<TreeletCode, u128>> shapes;  // by unrooted shape, sorted

  u128 shape_count(TreeletCode t) const {
    for (const auto& [s, c] : shapes)
      if (s == t) return c;
    return 0;
  }
};

// sigma_ij row for one graphlet: spanning trees grouped by the
// rooting-independent shape of each tree. Computed with an in-memory run of
// the count-table dynamic program under the identity coloring (node i gets
// color i, so every spanning tree is colorful and is tallied exactly once at
// node 0). The row sum is checked against the matrix-tree count.
SpanningProfile spanning_profile(const SmallAdj& adj);

struct Rational {
  u128 num = 0;
  u128 den = 1;
  double value() const { return to_double(num) / to_double(den); }
};

// Probability that k fixed nodes receive pairwise distinct colors under a
// uniform k-coloring: k!/k^k, reduced.
Rational colorful_probability(int k);

// Process-wide memo of per-graphlet spanning-tree data, with an optional
// text sidecar ("k,hex,sigma,shape:count ...") so profiles survive runs.
class SigmaCache {
 public:
  u128 sigma(const GraphletCode& g);
  const SpanningProfile& profile(const GraphletCode& g);

  void load(const std::string& path);  // ignores a missing file
  void save(const std::string& path) const;

 private:
  mutable std::mutex mu_;
  std::map<GraphletCode, std::unique_ptr<SpanningProfile>> profiles_;
};

struct Estimates {
  double uncolored = 0;  // g-hat
  double colorful = 0;   // c-hat
  u64 samples = 0;
};

// g_hat_i = (hist_i / M) * t / (sigma_i * p); colorful_hat omits the
// correction by p, the probability that a fixed k-subset turns colorful
// under the coloring law in force. Throws if a histogram code has no
// spanning-tree data.
std::map<GraphletCode, Estimates> estimate_from_histogram(
    const std::map<GraphletCode, u64>& histogram, u64 total_samples, u128 urn_total,
    SigmaCache& sigma, double colorful_p);

}  // namespace motif
