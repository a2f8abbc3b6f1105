#pragma once
// Host-graph model: compact undirected adjacency with per-node sorted
// neighbor segments (32-bit ids, 64-bit offsets), ingestion from edge lists,
// and a little-endian binary format:
//
//   magic "MTV1" | u32 version=1 | u64 n | u64 m |
//   (n+1) x u64 offsets | 2m x u32 neighbor ids
//
// Invariants: segments strictly sorted (no multi-edges), adjacency symmetric,
// no self-loops, offsets[n] == 2m. The structure is immutable after
// construction and safe for unrestricted concurrent reads.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "motif/common.hpp"
#include "motif/small_graph.hpp"

namespace motif {

class Graph {
 public:
  Graph() = default;

  // Takes ownership of a CSR pair and validates every invariant.
  static Graph from_csr(std::vector<u64> offsets, std::vector<u32> neighbors);

  // Builds from an undirected edge set; self-loops and duplicates (in either
  // orientation) are dropped. Node ids must be < n.
  static Graph from_edges(u32 n, std::vector<std::pair<u32, u32>> edges);

  // Whitespace-separated "u v" lines; '#' or '%' lines are comments. Ids are
  // compacted to 0..n-1 in first-appearance order; when original_ids is
  // given, original_ids[v] is the id the input used for node v.
  static Graph load_edge_list(std::istream& in, std::vector<u64>* original_ids = nullptr);

  void write_binary(std::ostream& out) const;
  static Graph read_binary(std::istream& in);

  u32 node_count() const { return static_cast<u32>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  u64 edge_count() const { return m_; }

  u32 degree(u32 v) const { return static_cast<u32>(offsets_[v + 1] - offsets_[v]); }
  std::span<const u32> neighbors(u32 v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  // O(log min(d_u, d_v)); throws std::out_of_range on bad ids.
  bool has_edge(u32 u, u32 v) const;

  // Induced adjacency bits over 2..16 distinct nodes, in the given order.
  SmallAdj induced_adjacency(std::span<const u32> nodes) const;

  struct Stats {
    u32 n = 0;
    u64 m = 0;
    u32 max_degree = 0;
    std::vector<u64> degree_histogram;  // index = degree
  };
  Stats stats() const;

  u32 max_degree() const;

 private:
  u64 m_ = 0;
  std::vector<u64> offsets_;   // n + 1 entries
  std::vector<u32> neighbors_; // 2m entries, each segment strictly sorted
};

}  // namespace motif
