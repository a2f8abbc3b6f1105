#pragma once
// Adjacency of a graph on at most 16 nodes, packed into 128 bits: the strict
// upper triangle row-major, pair (i, j) with i < j at bit
// i*k - i*(i+1)/2 + (j - i - 1).

#include <bit>
#include <stdexcept>

#include "motif/common.hpp"

namespace motif {

struct SmallAdj {
  int k = 0;
  u128 bits = 0;

  static int pair_index(int k, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * k - i * (i + 1) / 2 + (j - i - 1);
  }

  bool at(int i, int j) const {
    if (i == j) return false;
    return (bits >> pair_index(k, i, j)) & 1;
  }

  void set(int i, int j) {
    if (i == j) throw std::invalid_argument("no self-loops in a graphlet");
    bits |= static_cast<u128>(1) << pair_index(k, i, j);
  }

  int degree(int i) const {
    int d = 0;
    for (int j = 0; j < k; ++j)
      if (j != i && at(i, j)) ++d;
    return d;
  }

  int edge_count() const {
    int c = 0;
    u128 b = bits;
    while (b) {
      c += std::popcount(static_cast<u64>(b));
      b >>= 64;
    }
    return c;
  }

  bool connected() const {
    if (k <= 0) return false;
    u32 seen = 1;
    u32 frontier = 1;
    while (frontier) {
      u32 next = 0;
      for (int i = 0; i < k; ++i) {
        if (!((frontier >> i) & 1)) continue;
        for (int j = 0; j < k; ++j)
          if (j != i && at(i, j) && !((seen >> j) & 1)) next |= 1u << j;
      }
      seen |= next;
      frontier = next;
    }
    return seen == (k >= 32 ? ~0u : (1u << k) - 1);
  }
};

}  // namespace motif
