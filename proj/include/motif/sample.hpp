#pragma once
// Sampling phase: uniform colorful k-treelet occurrence sampling from the
// count table, whole-urn or restricted to one treelet shape. Roots are drawn
// with an alias table over 128-bit weights; the recursive expansion walks the
// colored decomposition, picking each child copy with probability
// proportional to the count products. High-degree nodes batch their neighbor
// draws: one sweep yields many independent draws, cached per (node, key).

#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "motif/common.hpp"
#include "motif/graph.hpp"
#include "motif/graphlet.hpp"
#include "motif/table.hpp"

namespace motif {

struct SamplerConfig {
  u32 buffer_degree_threshold = 10000;  // buffer neighbor draws at degree >= this
  u32 buffer_batch = 100;               // draws per sweep
};

// O(1) weighted node draw. Weights are exact 128-bit counts; the alias table
// itself works on normalized doubles, with an exact cumulative-search mode
// kept as a fallback should any normalized weight degenerate.
class RootAlias {
 public:
  RootAlias() = default;
  RootAlias(std::vector<u32> nodes, std::vector<u128> weights);

  static RootAlias whole_urn(const CountTable& table);
  static RootAlias for_shape(const CountTable& table, TreeletCode normalized_shape);

  bool empty() const { return nodes_.empty(); }
  u128 total() const { return total_; }
  u32 draw(Rng& rng) const;
  bool exact_mode() const { return exact_; }

 private:
  std::vector<u32> nodes_;
  std::vector<u128> cumulative_;  // exact mode
  std::vector<double> threshold_; // alias mode
  std::vector<u32> alias_;
  u128 total_ = 0;
  bool exact_ = false;
};

// Pre-drawn (neighbor choice, color split) pairs for high-degree expansion
// steps, keyed by (node, colored key). Confined to one worker.
class NeighborBuffer {
 public:
  explicit NeighborBuffer(SamplerConfig cfg) : cfg_(cfg) {}
  SamplerConfig config() const { return cfg_; }

  std::optional<std::pair<u32, u16>> pop(u32 node, u64 key);
  void push_batch(u32 node, u64 key, std::vector<std::pair<u32, u16>> draws);

 private:
  struct KeyHash {
    size_t operator()(const std::pair<u32, u64>& p) const {
      return std::hash<u64>()((static_cast<u64>(p.first) << 48) ^ p.second * 0x9e3779b97f4a7c15ull);
    }
  };
  SamplerConfig cfg_;
  std::unordered_map<std::pair<u32, u64>, std::deque<std::pair<u32, u16>>, KeyHash> cache_;
};

// One sampled colorful treelet occurrence: the realized subtree of the host
// graph. Nodes and edges are sorted; colors are pairwise distinct.
struct Occurrence {
  std::vector<u32> nodes;
  std::vector<std::pair<u32, u32>> edges;
  u64 key = 0;   // colored treelet realized
  u32 root = 0;  // the color-0 node it was drawn at
};

Occurrence sample_occurrence(const CountTable& table, const Graph& g, const RootAlias& roots,
                             Rng& rng, NeighborBuffer* buffer = nullptr);

// Uniform over occurrences of one rooting-independent shape only.
Occurrence sample_occurrence_of_shape(const CountTable& table, const Graph& g,
                                      TreeletCode normalized_shape, const RootAlias& roots,
                                      Rng& rng, NeighborBuffer* buffer = nullptr);

// Canonical code of the induced subgraph on the occurrence's nodes.
GraphletCode materialize(const Occurrence& occ, const Graph& g);

struct NaiveRun {
  std::map<GraphletCode, u64> histogram;
  u64 samples = 0;
  u128 urn_total = 0;
  std::map<GraphletCode, Estimates> estimates;
};

// Draws, materializes and histograms occurrences, then applies the count
// estimators. Budget is a fixed sample count, or a wall-clock allowance when
// time_budget_seconds > 0 (then the sample count is best-effort).
// rainbow_probability overrides the uniform k!/k^k correction (used for
// biased colorings); 0 keeps the uniform value.
NaiveRun naive_run(const CountTable& table, const Graph& g, u64 sample_budget,
                   double time_budget_seconds, u64 seed, int threads, SigmaCache& sigma,
                   const SamplerConfig& cfg = {}, double rainbow_probability = 0);

}  // namespace motif
