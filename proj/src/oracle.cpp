#include "motif/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace motif {

namespace {

// Wernicke-style ordered extension: each connected set is reached exactly
// once, from its minimum-id vertex.
template <typename Emit>
void enumerate_connected_sets(const Graph& g, int k, u64 max_subgraphs, Emit&& emit) {
  u32 n = g.node_count();
  if (k < 1 || static_cast<u32>(k) > n) return;
  u64 seen_count = 0;
  std::vector<u32> sub;
  std::vector<u8> in_sub(n, 0), forbidden(n, 0);
  std::vector<u32> touched;

  std::function<void(std::vector<u32>&, u32)> extend = [&](std::vector<u32>& ext, u32 root) {
    if (sub.size() == static_cast<size_t>(k)) {
      if (++seen_count > max_subgraphs) throw budget_exceeded("subgraph budget exceeded");
      emit(sub);
      return;
    }
    while (!ext.empty()) {
      u32 w = ext.back();
      ext.pop_back();
      std::vector<u32> ext2 = ext;
      size_t touched_mark = touched.size();
      for (u32 u : g.neighbors(w)) {
        if (u > root && !in_sub[u] && !forbidden[u]) {
          ext2.push_back(u);
          forbidden[u] = 1;
          touched.push_back(u);
        }
      }
      sub.push_back(w);
      in_sub[w] = 1;
      extend(ext2, root);
      in_sub[w] = 0;
      sub.pop_back();
      while (touched.size() > touched_mark) {
        forbidden[touched.back()] = 0;
        touched.pop_back();
      }
    }
  };

  for (u32 v = 0; v < n; ++v) {
    sub = {v};
    in_sub[v] = 1;
    std::vector<u32> ext;
    for (u32 u : g.neighbors(v)) {
      if (u > v) {
        ext.push_back(u);
        forbidden[u] = 1;
        touched.push_back(u);
      }
    }
    extend(ext, v);
    in_sub[v] = 0;
    while (!touched.empty()) {
      forbidden[touched.back()] = 0;
      touched.pop_back();
    }
  }
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

TreeletCode shape_of_tree(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return normalize_shape(canonical_rooted_code(adj, 0));
}

}  // namespace

Census exact_census(const Graph& g, int k, u64 max_subgraphs) {
  if (k < 1 || k > 16) throw std::invalid_argument("census size must be 1..16");
  Census census;
  census.k = k;
  if (k == 1) {
    if (g.node_count() > 0) census.counts[GraphletCode{0, 1}] = g.node_count();
    return census;
  }
  enumerate_connected_sets(g, k, max_subgraphs, [&](const std::vector<u32>& nodes) {
    GraphletCode code = canonical_graphlet(g.induced_adjacency(nodes));
    u128& slot = census.counts[code];
    slot = checked_add(slot, 1);
  });
  return census;
}

Census exact_census_naive(const Graph& g, int k) {
  Census census;
  census.k = k;
  u32 n = g.node_count();
  if (k < 1 || static_cast<u32>(k) > n) return census;
  std::vector<u32> pick(k);
  std::function<void(u32, int)> rec = [&](u32 first, int depth) {
    if (depth == k) {
      SmallAdj adj = g.induced_adjacency(pick);
      if (!adj.connected()) return;
      GraphletCode code = canonical_graphlet(adj);
      u128& slot = census.counts[code];
      slot = checked_add(slot, 1);
      return;
    }
    for (u32 v = first; v + (k - depth) <= n; ++v) {
      pick[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
  return census;
}

std::vector<SubtreeCopy> enumerate_colorful_subtrees(const Graph& g, const Coloring& coloring,
                                                     int h) {
  if (h < 1 || h > 16) throw std::invalid_argument("subtree size must be 1..16");
  std::vector<SubtreeCopy> out;
  if (h == 1) {
    for (u32 v = 0; v < g.node_count(); ++v) {
      SubtreeCopy copy;
      copy.nodes = {v};
      if (h == coloring.k)
        copy.rooted_key =
            colored(TreeletCode{0}, ColorSet{static_cast<u16>(1u << coloring.color(v))}).key;
      out.push_back(std::move(copy));
    }
    return out;
  }
  enumerate_connected_sets(g, h, 200000000, [&](const std::vector<u32>& nodes) {
    u16 mask = 0;
    for (u32 v : nodes) {
      u16 bit = static_cast<u16>(1u << coloring.color(v));
      if (mask & bit) return;  // not colorful
      mask |= bit;
    }
    // Local edge list of the induced subgraph.
    std::vector<std::pair<int, int>> local;
    for (size_t i = 0; i < nodes.size(); ++i)
      for (size_t j = i + 1; j < nodes.size(); ++j)
        if (g.has_edge(nodes[i], nodes[j])) local.emplace_back(static_cast<int>(i),
                                                               static_cast<int>(j));
    int m = static_cast<int>(local.size());
    int want = h - 1;
    std::vector<int> comb(want);
    std::function<void(int, int)> choose = [&](int start, int depth) {
      if (depth == want) {
        Dsu dsu(h);
        for (int idx : comb)
          if (!dsu.join(local[idx].first, local[idx].second)) return;  // cycle
        SubtreeCopy copy;
        copy.nodes.assign(nodes.begin(), nodes.end());
        std::sort(copy.nodes.begin(), copy.nodes.end());
        for (int idx : comb) {
          u32 a = nodes[local[idx].first], b = nodes[local[idx].second];
          copy.edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(copy.edges.begin(), copy.edges.end());
        if (h == coloring.k) {
          // Root at the color-0 node.
          int root = -1;
          std::vector<std::vector<int>> adj(h);
          for (int idx : comb) {
            adj[local[idx].first].push_back(local[idx].second);
            adj[local[idx].second].push_back(local[idx].first);
          }
          for (size_t i = 0; i < nodes.size(); ++i)
            if (coloring.color(nodes[i]) == 0) root = static_cast<int>(i);
          copy.rooted_key =
              colored(canonical_rooted_code(adj, root), ColorSet{mask}).key;
        }
        out.push_back(std::move(copy));
        return;
      }
      for (int e = start; e + (want - depth) <= m; ++e) {
        comb[depth] = e;
        choose(e + 1, depth + 1);
      }
    };
    choose(0, 0);
  });
  return out;
}

std::map<std::pair<u64, u32>, u128> exact_colorful_treelets(const Graph& g,
                                                            const Coloring& coloring, int h) {
  std::map<std::pair<u64, u32>, u128> counts;
  if (h == 1) {
    for (u32 v = 0; v < g.node_count(); ++v) {
      u64 key = colored(TreeletCode{0}, ColorSet{static_cast<u16>(1u << coloring.color(v))}).key;
      counts[{key, v}] = 1;
    }
    return counts;
  }
  auto copies = enumerate_colorful_subtrees(g, coloring, h);
  for (const SubtreeCopy& copy : copies) {
    u16 mask = 0;
    for (u32 v : copy.nodes) mask |= static_cast<u16>(1u << coloring.color(v));
    std::vector<std::vector<int>> adj(copy.nodes.size());
    auto local_of = [&](u32 v) {
      return static_cast<int>(std::lower_bound(copy.nodes.begin(), copy.nodes.end(), v) -
                              copy.nodes.begin());
    };
    for (auto [a, b] : copy.edges) {
      adj[local_of(a)].push_back(local_of(b));
      adj[local_of(b)].push_back(local_of(a));
    }
    for (size_t i = 0; i < copy.nodes.size(); ++i) {
      u64 key = colored(canonical_rooted_code(adj, static_cast<int>(i)), ColorSet{mask}).key;
      u128& slot = counts[{key, copy.nodes[i]}];
      slot = checked_add(slot, 1);
    }
  }
  return counts;
}

SpanningOracle exact_spanning_trees(const SmallAdj& adj) {
  SpanningOracle oracle;
  int k = adj.k;
  if (k == 1) {
    oracle.sigma = 1;
    oracle.by_shape[TreeletCode{0}] = 1;
    return oracle;
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (adj.at(i, j)) edges.emplace_back(i, j);
  int m = static_cast<int>(edges.size());
  int want = k - 1;
  std::vector<int> comb(want);
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (depth == want) {
      Dsu dsu(k);
      std::vector<std::pair<int, int>> tree;
      for (int idx : comb) {
        if (!dsu.join(edges[idx].first, edges[idx].second)) return;
        tree.push_back(edges[idx]);
      }
      oracle.sigma += 1;
      oracle.by_shape[shape_of_tree(k, tree)] += 1;
      return;
    }
    for (int e = start; e + (want - depth) <= m; ++e) {
      comb[depth] = e;
      choose(e + 1, depth + 1);
    }
  };
  if (want <= m) choose(0, 0);
  return oracle;
}

Graph gen_lollipop(u32 n, u32 tail) {
  if (n < tail + 1) throw std::invalid_argument("lollipop needs a nonempty clique");
  u32 clique = n - tail;
  std::vector<std::pair<u32, u32>> edges;
  for (u32 i = 0; i < clique; ++i)
    for (u32 j = i + 1; j < clique; ++j) edges.emplace_back(i, j);
  for (u32 i = clique; i < n; ++i) edges.emplace_back(i - 1, i);  // attach + chain
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_er(u32 n, double p, u64 seed) {
  if (p < 0 || p > 1) throw std::invalid_argument("edge probability outside [0, 1]");
  Rng rng(seed);
  std::vector<std::pair<u32, u32>> edges;
  for (u32 i = 0; i < n; ++i)
    for (u32 j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) edges.emplace_back(i, j);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_star(u32 n) {
  if (n < 1) throw std::invalid_argument("star needs at least one node");
  std::vector<std::pair<u32, u32>> edges;
  for (u32 i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_path(u32 n) {
  std::vector<std::pair<u32, u32>> edges;
  for (u32 i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_cycle(u32 n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least three nodes");
  std::vector<std::pair<u32, u32>> edges;
  for (u32 i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  edges.emplace_back(0, n - 1);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_complete(u32 n) {
  std::vector<std::pair<u32, u32>> edges;
  for (u32 i = 0; i < n; ++i)
    for (u32 j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace motif
