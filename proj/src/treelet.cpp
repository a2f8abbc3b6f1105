#include "motif/treelet.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace motif {

namespace {

// Position of the step that starts the last child segment of the root,
// i.e. the last step taken at depth 0. Requires size >= 2.
int last_child_start(TreeletCode t) {
  int len = t.euler_length();
  int depth = 0;
  int start = -1;
  for (int i = 0; i < len; ++i) {
    int b = (t.bits >> i) & 1;
    if (depth == 0) start = i;
    depth += b ? 1 : -1;
  }
  return start;
}

}  // namespace

bool can_merge(TreeletCode t1, TreeletCode t2) {
  if (t1.size() + t2.size() > kMaxTreeletNodes) return false;
  if (t1.bits == 0) return true;
  int p = last_child_start(t1);
  TreeletCode last_child{t1.bits >> (p + 1)};
  return t2 >= last_child;
}

TreeletCode merge(TreeletCode t1, TreeletCode t2) {
  if (t1.size() + t2.size() > kMaxTreeletNodes)
    throw std::invalid_argument("treelet merge exceeds 16 nodes");
  if (!can_merge(t1, t2)) throw std::invalid_argument("non-canonical merge");
  int l1 = t1.euler_length();
  return TreeletCode{t1.bits | (1u << l1) | (t2.bits << (l1 + 1))};
}

std::pair<TreeletCode, TreeletCode> decomp(TreeletCode t) {
  if (t.bits == 0) throw std::invalid_argument("cannot decompose a single node");
  int p = last_child_start(t);
  TreeletCode head{t.bits & ((1u << p) - 1)};
  TreeletCode tail{t.bits >> (p + 1)};
  return {head, tail};
}

int beta(TreeletCode t) {
  if (t.bits == 0) throw std::invalid_argument("beta undefined for a single node");
  std::vector<TreeletCode> kids = root_children(t);
  TreeletCode last = kids.back();
  int count = 0;
  for (auto it = kids.rbegin(); it != kids.rend() && *it == last; ++it) ++count;
  return count;
}

ColoredTreelet colored(TreeletCode t, ColorSet c) {
  if (c.size() != t.size()) throw std::invalid_argument("not colorful: |C| != |T|");
  return ColoredTreelet{(static_cast<u64>(t.bits) << 16) | c.mask};
}

std::pair<TreeletCode, ColorSet> parts(ColoredTreelet tc) {
  return {tc.treelet(), tc.colors()};
}

bool can_merge(ColoredTreelet a, ColoredTreelet b) {
  if (a.colors().mask & b.colors().mask) return false;
  return can_merge(a.treelet(), b.treelet());
}

ColoredTreelet merge(ColoredTreelet a, ColoredTreelet b) {
  if (a.colors().mask & b.colors().mask) throw std::invalid_argument("color sets overlap");
  TreeletCode t = merge(a.treelet(), b.treelet());
  return ColoredTreelet{(static_cast<u64>(t.bits) << 16) |
                        (a.colors().mask | b.colors().mask)};
}

std::vector<TreeletCode> root_children(TreeletCode t) {
  std::vector<TreeletCode> kids;
  int len = t.euler_length();
  int depth = 0;
  int start = 0;
  for (int i = 0; i < len; ++i) {
    int b = (t.bits >> i) & 1;
    if (depth == 0) start = i;
    depth += b ? 1 : -1;
    if (depth == 0) {
      u32 seg = (t.bits >> (start + 1)) & ((1u << (i - start - 1)) - 1);
      kids.push_back(TreeletCode{seg});
    }
  }
  return kids;
}

bool is_canonical_code(TreeletCode t) {
  if (t.bits == 0) return true;
  if (t.size() > kMaxTreeletNodes) return false;
  // Valid Euler string: every prefix has at least as many 1s as 0s.
  int len = t.euler_length();
  if (len > 30) return false;
  if (t.bits >> len) return false;  // stored bits past the Euler length
  int depth = 0;
  for (int i = 0; i < len; ++i) {
    depth += ((t.bits >> i) & 1) ? 1 : -1;
    if (depth < 0) return false;
  }
  if (depth != 0) return false;
  std::vector<TreeletCode> kids = root_children(t);
  for (size_t i = 0; i < kids.size(); ++i) {
    if (i > 0 && kids[i] < kids[i - 1]) return false;
    if (!is_canonical_code(kids[i])) return false;
  }
  return true;
}

std::vector<TreeletCode> enumerate_treelets(int h) {
  if (h < 1 || h > kMaxTreeletNodes) throw std::invalid_argument("treelet size out of range");
  // Every canonical code of size h arises exactly once as merge(t1, t2) with
  // |t1| = h - s, |t2| = s, because decomposition is unique.
  std::vector<std::vector<TreeletCode>> by_size(h + 1);
  by_size[1] = {TreeletCode{0}};
  for (int n = 2; n <= h; ++n) {
    std::vector<TreeletCode> out;
    for (int s = 1; s < n; ++s) {
      for (TreeletCode t1 : by_size[n - s]) {
        for (TreeletCode t2 : by_size[s]) {
          if (can_merge(t1, t2)) out.push_back(merge(t1, t2));
        }
      }
    }
    std::sort(out.begin(), out.end());
    by_size[n] = std::move(out);
  }
  return by_size[h];
}

DecodedTree decode_treelet(TreeletCode t) {
  DecodedTree out;
  out.n = t.size();
  int len = t.euler_length();
  std::vector<int> stack{0};
  int next = 1;
  for (int i = 0; i < len; ++i) {
    if ((t.bits >> i) & 1) {
      out.edges.emplace_back(stack.back(), next);
      stack.push_back(next++);
    } else {
      stack.pop_back();
    }
  }
  return out;
}

namespace {

TreeletCode code_below(const std::vector<std::vector<int>>& adj, int node, int parent) {
  std::vector<TreeletCode> kids;
  for (int c : adj[node]) {
    if (c == parent) continue;
    kids.push_back(code_below(adj, c, node));
  }
  std::sort(kids.begin(), kids.end());
  u32 bits = 0;
  int len = 0;
  for (TreeletCode k : kids) {
    bits |= 1u << len;
    bits |= k.bits << (len + 1);
    len += 2 + k.euler_length();
  }
  return TreeletCode{bits};
}

}  // namespace

TreeletCode canonical_rooted_code(const std::vector<std::vector<int>>& adj, int root) {
  if (adj.size() > kMaxTreeletNodes) throw std::invalid_argument("tree too large to encode");
  return code_below(adj, root, -1);
}

TreeletCode normalize_shape(TreeletCode t) {
  static std::mutex mu;
  static std::unordered_map<u32, u32> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(t.bits);
    if (it != cache.end()) return TreeletCode{it->second};
  }
  DecodedTree tree = decode_treelet(t);
  std::vector<std::vector<int>> adj(tree.n);
  for (auto [a, b] : tree.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  TreeletCode best = canonical_rooted_code(adj, 0);
  for (int r = 1; r < tree.n; ++r) best = std::min(best, canonical_rooted_code(adj, r));
  {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(t.bits, best.bits);
  }
  return best;
}

}  // namespace motif
