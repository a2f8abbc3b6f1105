#pragma once
// Succinct codes for rooted treelets on up to 16 nodes, and for their
// colored variants.
//
// Bit convention:
//   - A code stores the DFS traversal of the rooted tree, one bit per step,
//     step i at bit position i; 1 = edge walked away from the root, 0 = back
//     toward it.
//   - Trailing 0-steps are dropped, so the full Euler length is
//     2 * popcount(bits) and the stored word uses at most 30 bits.
//   - Children of every node are visited in non-decreasing order of their
//     subtree codes; this makes the code of a rooted tree unique.
//   - The single-node treelet is the empty code (bits == 0).
//
// merge(t1, t2) appends t2 as the last child of t1's root:
//     bits = t1 | (1 << L1) | (t2 << (L1 + 1)),   L1 = 2 * popcount(t1)
// and decomp() inverts it by splitting off the last child of the root.
// The merge is canonical iff t2 >= every child subtree of t1's root.
//
// A colored code packs the treelet bits above a 16-bit color mask:
//     key = (bits << 16) | mask
// so plain unsigned comparison orders keys first by treelet, then by color
// set, and all color sets of one treelet are contiguous in a sorted record.

#include <bit>
#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "motif/common.hpp"

namespace motif {

inline constexpr int kMaxTreeletNodes = 16;

struct TreeletCode {
  u32 bits = 0;

  int size() const { return 1 + std::popcount(bits); }
  int euler_length() const { return 2 * std::popcount(bits); }
  friend constexpr auto operator<=>(TreeletCode, TreeletCode) = default;
};

struct ColorSet {
  u16 mask = 0;

  int size() const { return std::popcount(mask); }
  bool contains(int color) const { return (mask >> color) & 1; }
  friend constexpr auto operator<=>(ColorSet, ColorSet) = default;
};

struct ColoredTreelet {
  u64 key = 0;  // 48 bits used

  TreeletCode treelet() const { return TreeletCode{static_cast<u32>(key >> 16)}; }
  ColorSet colors() const { return ColorSet{static_cast<u16>(key & 0xffff)}; }
  friend constexpr auto operator<=>(ColoredTreelet, ColoredTreelet) = default;
};

inline TreeletCode treelet_of_key(u64 key) { return TreeletCode{static_cast<u32>(key >> 16)}; }
inline ColorSet colors_of_key(u64 key) { return ColorSet{static_cast<u16>(key & 0xffff)}; }

// Throws std::invalid_argument when the merge would be non-canonical or the
// combined size exceeds 16 nodes.
TreeletCode merge(TreeletCode t1, TreeletCode t2);
// Exact inverse of merge; throws on the single-node treelet.
std::pair<TreeletCode, TreeletCode> decomp(TreeletCode t);
// Number of root children whose subtree equals decomp(t).second.
int beta(TreeletCode t);
// True iff appending t2 as last child of t1's root yields a canonical code.
bool can_merge(TreeletCode t1, TreeletCode t2);

// Colored variants: merge additionally requires disjoint color sets.
ColoredTreelet colored(TreeletCode t, ColorSet c);  // throws unless |C| == |T|
std::pair<TreeletCode, ColorSet> parts(ColoredTreelet tc);
bool can_merge(ColoredTreelet a, ColoredTreelet b);
ColoredTreelet merge(ColoredTreelet a, ColoredTreelet b);

// Child subtree codes of the root, in visitation order.
std::vector<TreeletCode> root_children(TreeletCode t);
// Full recursive validity + canonicality check (used by tests and loaders).
bool is_canonical_code(TreeletCode t);

// All canonical codes with exactly h nodes, sorted ascending.
std::vector<TreeletCode> enumerate_treelets(int h);

// Decoded tree: nodes are numbered in DFS preorder, root is 0, and
// edges[i] = (parent, child) in traversal order.
struct DecodedTree {
  int n = 1;
  std::vector<std::pair<int, int>> edges;
};
DecodedTree decode_treelet(TreeletCode t);

// Canonical code of an arbitrary rooted tree given as adjacency lists.
TreeletCode canonical_rooted_code(const std::vector<std::vector<int>>& adj, int root);

// Rooting-independent representative of the underlying unrooted tree: the
// minimum canonical code over all choices of root. Memoized.
TreeletCode normalize_shape(TreeletCode t);

}  // namespace motif
