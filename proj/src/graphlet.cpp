#include "motif/graphlet.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <sstream>

#include "motif/build.hpp"
#include "motif/graph.hpp"
#include "motif/table.hpp"

namespace motif {

namespace {

u128 pack_permuted(const SmallAdj& adj, const std::array<int, 16>& pos_to_vertex) {
  u128 bits = 0;
  int idx = 0;
  for (int i = 0; i < adj.k; ++i)
    for (int j = i + 1; j < adj.k; ++j, ++idx)
      if (adj.at(pos_to_vertex[i], pos_to_vertex[j])) bits |= static_cast<u128>(1) << idx;
  return bits;
}

u128 min_code_exhaustive(const SmallAdj& adj) {
  std::array<int, 16> perm{};
  std::iota(perm.begin(), perm.begin() + adj.k, 0);
  u128 best = ~static_cast<u128>(0);
  do {
    best = std::min(best, pack_permuted(adj, perm));
  } while (std::next_permutation(perm.begin(), perm.begin() + adj.k));
  return best;
}

// Lexicographic frontier search. Positions are assigned from k-1 down to 0;
// placing position i reveals exactly row i of the packing, and rows complete
// in most-significant-first order, so keeping only the branches that
// minimize each revealed row yields the global minimum.
u128 min_code_frontier(const SmallAdj& adj) {
  int k = adj.k;
  struct Partial {
    u32 placed_mask = 0;
    std::array<int, 16> at{};  // at[pos] = vertex, for pos >= depth boundary
  };
  std::vector<Partial> frontier(1);
  for (int pos = k - 1; pos >= 0; --pos) {
    u64 best_row = ~0ull;
    std::vector<std::pair<size_t, int>> winners;  // (frontier index, vertex)
    for (size_t f = 0; f < frontier.size(); ++f) {
      const Partial& p = frontier[f];
      for (int v = 0; v < k; ++v) {
        if ((p.placed_mask >> v) & 1) continue;
        u64 row = 0;
        for (int j = pos + 1; j < k; ++j)
          if (adj.at(v, p.at[j])) row |= 1ull << (j - pos - 1);
        if (row < best_row) {
          best_row = row;
          winners.clear();
        }
        if (row == best_row) winners.emplace_back(f, v);
      }
    }
    std::vector<Partial> next;
    next.reserve(winners.size());
    for (auto [f, v] : winners) {
      Partial p = frontier[f];
      p.placed_mask |= 1u << v;
      p.at[pos] = v;
      next.push_back(p);
    }
    frontier = std::move(next);
    if (frontier.size() > 100000) {
      // Tie explosion; fall back to plain enumeration.
      return min_code_exhaustive(adj);
    }
  }
  return pack_permuted(adj, frontier.front().at);
}

struct CanonMemo {
  std::mutex mu;
  std::map<std::pair<int, u128>, u128> map;
};
CanonMemo& canon_memo() {
  static CanonMemo m;
  return m;
}

Graph to_graph(const SmallAdj& adj) {
  std::vector<std::pair<u32, u32>> edges;
  for (int i = 0; i < adj.k; ++i)
    for (int j = i + 1; j < adj.k; ++j)
      if (adj.at(i, j)) edges.emplace_back(i, j);
  return Graph::from_edges(static_cast<u32>(adj.k), std::move(edges));
}

u128 gcd128(u128 a, u128 b) {
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

GraphletCode canonical_graphlet(const SmallAdj& adj) {
  if (adj.k < 1 || adj.k > 10) throw std::invalid_argument("graphlet size must be 1..10");
  if (!adj.connected()) throw std::invalid_argument("graphlet must be connected");
  if (adj.k == 1) return GraphletCode{0, 1};
  auto& memo = canon_memo();
  std::pair<int, u128> key{adj.k, adj.bits};
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.map.find(key);
    if (it != memo.map.end()) return GraphletCode{it->second, static_cast<u8>(adj.k)};
  }
  u128 code = adj.k <= 8 ? min_code_exhaustive(adj) : min_code_frontier(adj);
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    memo.map.emplace(key, code);
  }
  return GraphletCode{code, static_cast<u8>(adj.k)};
}

u128 spanning_tree_count(const SmallAdj& adj) {
  if (!adj.connected()) throw std::invalid_argument("spanning trees of a disconnected graph");
  int n = adj.k - 1;  // drop the last row/column of the Laplacian
  if (n <= 0) return 1;
  // Bareiss fraction-free elimination; every intermediate value is a minor
  // of the integer Laplacian, so it stays well inside 128 bits for k <= 16.
  std::array<std::array<i128, 15>, 15> m{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = (i == j) ? adj.degree(i) : (adj.at(i, j) ? -1 : 0);
  i128 prev = 1;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r) {
      for (int cc = c + 1; cc < n; ++cc)
        m[r][cc] = (m[c][c] * m[r][cc] - m[r][c] * m[c][cc]) / prev;
      m[r][c] = 0;
    }
    prev = m[c][c];
  }
  i128 det = m[n - 1][n - 1] * sign;
  if (det < 0) throw std::logic_error("negative spanning-tree determinant");
  return static_cast<u128>(det);
}

SpanningProfile spanning_profile(const SmallAdj& adj) {
  if (adj.k < 2) {
    SpanningProfile p;
    p.sigma = 1;
    p.shapes.emplace_back(TreeletCode{0}, 1);
    return p;
  }
  Graph g = to_graph(adj);
  BuildConfig cfg;
  cfg.k = adj.k;
  Coloring identity;
  identity.k = adj.k;
  identity.mode = ColorMode::uniform;
  identity.seed = 0;
  identity.colors.resize(adj.k);
  for (int i = 0; i < adj.k; ++i) identity.colors[i] = static_cast<u8>(i);
  CountTable table = build_tables(g, identity, cfg);

  std::map<TreeletCode, u128> by_shape;
  u128 total = 0;
  RecordView rec = table.record(adj.k, 0);
  for (u32 i = 0; i < rec.size(); ++i) {
    TreeletCode shape = normalize_shape(treelet_of_key(rec.key(i)));
    u128 raw = rec.raw(i);
    by_shape[shape] = checked_add(by_shape[shape], raw);
    total = checked_add(total, raw);
  }
  u128 kirchhoff = spanning_tree_count(adj);
  if (total != kirchhoff)
    throw std::logic_error("spanning profile disagrees with matrix-tree count");
  SpanningProfile p;
  p.sigma = kirchhoff;
  p.shapes.assign(by_shape.begin(), by_shape.end());
  return p;
}

Rational colorful_probability(int k) {
  if (k < 1 || k > 16) throw std::invalid_argument("k must be 1..16");
  u128 num = 1;
  for (int i = 2; i <= k; ++i) num *= static_cast<u128>(i);
  u128 den = 1;
  for (int i = 0; i < k; ++i) den *= static_cast<u128>(k);
  u128 g = gcd128(num, den);
  return Rational{num / g, den / g};
}

u128 SigmaCache::sigma(const GraphletCode& g) { return profile(g).sigma; }

const SpanningProfile& SigmaCache::profile(const GraphletCode& g) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = profiles_.find(g);
    if (it != profiles_.end()) return *it->second;
  }
  auto computed = std::make_unique<SpanningProfile>(spanning_profile(g.adjacency()));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = profiles_.emplace(g, std::move(computed));
  return *it->second;
}

void SigmaCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  std::lock_guard<std::mutex> lock(mu_);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kf, hexf, sigmaf;
    if (!std::getline(ls, kf, ',') || !std::getline(ls, hexf, ',') ||
        !std::getline(ls, sigmaf, ','))
      throw parse_error("bad sigma cache line: " + line);
    GraphletCode code{parse_hex_u128(hexf), static_cast<u8>(std::stoi(kf))};
    auto p = std::make_unique<SpanningProfile>();
    p->sigma = parse_dec_u128(sigmaf);
    std::string rest;
    std::getline(ls, rest);
    std::istringstream shapes(rest);
    std::string tok;
    while (shapes >> tok) {
      size_t colon = tok.find(':');
      if (colon == std::string::npos) throw parse_error("bad shape token: " + tok);
      TreeletCode t{static_cast<u32>(parse_hex_u128(tok.substr(0, colon)))};
      p->shapes.emplace_back(t, parse_dec_u128(tok.substr(colon + 1)));
    }
    profiles_.insert_or_assign(code, std::move(p));
  }
}

void SigmaCache::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw format_error("cannot write sigma cache: " + path);
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& [code, p] : profiles_) {
    out << static_cast<int>(code.k) << ',' << code.hex() << ',' << dec_string(p->sigma) << ',';
    bool first = true;
    for (const auto& [shape, count] : p->shapes) {
      if (!first) out << ' ';
      first = false;
      out << hex_string(shape.bits) << ':' << dec_string(count);
    }
    out << '\n';
  }
}

std::map<GraphletCode, Estimates> estimate_from_histogram(
    const std::map<GraphletCode, u64>& histogram, u64 total_samples, u128 urn_total,
    SigmaCache& sigma, double colorful_p) {
  if (total_samples < 1) throw std::invalid_argument("need at least one sample");
  if (!(colorful_p > 0)) throw std::invalid_argument("colorful probability must be positive");
  std::map<GraphletCode, Estimates> out;
  double t = to_double(urn_total);
  double m = static_cast<double>(total_samples);
  for (const auto& [code, hits] : histogram) {
    double s = to_double(sigma.sigma(code));
    if (s <= 0) throw std::logic_error("graphlet with zero spanning trees");
    Estimates e;
    e.samples = hits;
    e.colorful = (static_cast<double>(hits) / m) * t / s;
    e.uncolored = e.colorful / colorful_p;
    out.emplace(code, e);
  }
  return out;
}

}  // namespace motif
