#include "motif/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace motif {

namespace {

constexpr char kMagic[4] = {'M', 'T', 'V', '1'};
constexpr u32 kVersion = 1;

void validate_csr(const std::vector<u64>& offsets, const std::vector<u32>& neighbors) {
  if (offsets.empty()) throw format_error("graph has no offset array");
  u32 n = static_cast<u32>(offsets.size() - 1);
  if (offsets.front() != 0) throw format_error("offsets must start at 0");
  for (u32 v = 0; v < n; ++v)
    if (offsets[v] > offsets[v + 1]) throw format_error("offsets not monotone");
  if (offsets[n] != neighbors.size()) throw format_error("offsets[n] != neighbor count");
  if (neighbors.size() % 2 != 0) throw format_error("odd neighbor count");
  for (u32 v = 0; v < n; ++v) {
    for (u64 i = offsets[v]; i < offsets[v + 1]; ++i) {
      u32 u = neighbors[i];
      if (u >= n) throw format_error("neighbor id out of range");
      if (u == v) throw format_error("self-loop");
      if (i > offsets[v] && neighbors[i - 1] >= u)
        throw format_error("neighbor segment not strictly sorted");
    }
  }
  // Symmetry: every arc must have its reverse.
  auto seg_has = [&](u32 a, u32 b) {
    const u32* first = neighbors.data() + offsets[a];
    const u32* last = neighbors.data() + offsets[a + 1];
    return std::binary_search(first, last, b);
  };
  for (u32 v = 0; v < n; ++v)
    for (u64 i = offsets[v]; i < offsets[v + 1]; ++i)
      if (!seg_has(neighbors[i], v)) throw format_error("adjacency not symmetric");
}

}  // namespace

Graph Graph::from_csr(std::vector<u64> offsets, std::vector<u32> neighbors) {
  validate_csr(offsets, neighbors);
  Graph g;
  g.m_ = neighbors.size() / 2;
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  return g;
}

Graph Graph::from_edges(u32 n, std::vector<std::pair<u32, u32>> edges) {
  for (auto& [a, b] : edges) {
    if (a >= n || b >= n) throw std::out_of_range("edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });

  std::vector<u64> offsets(n + 1, 0);
  for (auto [a, b] : edges) {
    ++offsets[a + 1];
    ++offsets[b + 1];
  }
  for (u32 v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<u32> neighbors(offsets[n]);
  std::vector<u64> cursor(offsets.begin(), offsets.end() - 1);
  for (auto [a, b] : edges) {
    neighbors[cursor[a]++] = b;
    neighbors[cursor[b]++] = a;
  }
  for (u32 v = 0; v < n; ++v)
    std::sort(neighbors.begin() + offsets[v], neighbors.begin() + offsets[v + 1]);

  Graph g;
  g.m_ = edges.size();
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  return g;
}

Graph Graph::load_edge_list(std::istream& in, std::vector<u64>* original_ids) {
  std::unordered_map<u64, u32> remap;
  std::vector<u64> original;
  std::vector<std::pair<u32, u32>> edges;
  std::string line;
  u64 line_no = 0;
  auto intern = [&](u64 id) {
    auto [it, inserted] = remap.emplace(id, static_cast<u32>(original.size()));
    if (inserted) original.push_back(id);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#' || line[pos] == '%') continue;
    std::istringstream ls(line);
    u64 a, b;
    if (!(ls >> a >> b))
      throw parse_error("malformed edge on line " + std::to_string(line_no));
    std::string rest;
    if (ls >> rest)
      throw parse_error("trailing token '" + rest + "' on line " + std::to_string(line_no));
    u32 va = intern(a);
    u32 vb = intern(b);
    if (va == vb) continue;  // self-loop dropped
    edges.emplace_back(va, vb);
  }
  if (original.empty()) throw parse_error("empty edge list");
  Graph g = from_edges(static_cast<u32>(original.size()), std::move(edges));
  if (original_ids) *original_ids = std::move(original);
  return g;
}

void Graph::write_binary(std::ostream& out) const {
  u8 header[24];
  std::memcpy(header, kMagic, 4);
  store_le32(header + 4, kVersion);
  store_le64(header + 8, node_count());
  store_le64(header + 16, m_);
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  std::vector<u8> buf(offsets_.size() * 8);
  for (size_t i = 0; i < offsets_.size(); ++i) store_le64(buf.data() + 8 * i, offsets_[i]);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  buf.resize(neighbors_.size() * 4);
  for (size_t i = 0; i < neighbors_.size(); ++i) store_le32(buf.data() + 4 * i, neighbors_[i]);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw format_error("graph write failed");
}

Graph Graph::read_binary(std::istream& in) {
  u8 header[24];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!in || std::memcmp(header, kMagic, 4) != 0)
    throw format_error("not a motif-engine graph");
  if (load_le32(header + 4) != kVersion) throw format_error("unsupported graph version");
  u64 n = load_le64(header + 8);
  u64 m = load_le64(header + 16);
  if (n > 0xffffffffull) throw format_error("node count exceeds 32-bit ids");
  std::vector<u8> buf((n + 1) * 8);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!in) throw format_error("truncated graph file (offsets)");
  std::vector<u64> offsets(n + 1);
  for (size_t i = 0; i <= n; ++i) offsets[i] = load_le64(buf.data() + 8 * i);
  buf.resize(2 * m * 4);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!in) throw format_error("truncated graph file (neighbors)");
  std::vector<u32> neighbors(2 * m);
  for (size_t i = 0; i < neighbors.size(); ++i) neighbors[i] = load_le32(buf.data() + 4 * i);
  if (in.peek() != std::istream::traits_type::eof())
    throw format_error("trailing bytes after graph data");
  return from_csr(std::move(offsets), std::move(neighbors));
}

bool Graph::has_edge(u32 u, u32 v) const {
  u32 n = node_count();
  if (u >= n || v >= n) throw std::out_of_range("node id out of range");
  if (u == v) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto seg = neighbors(u);
  return std::binary_search(seg.begin(), seg.end(), v);
}

SmallAdj Graph::induced_adjacency(std::span<const u32> nodes) const {
  if (nodes.size() < 2 || nodes.size() > 16)
    throw std::invalid_argument("induced subgraph must have 2..16 nodes");
  SmallAdj adj;
  adj.k = static_cast<int>(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j]) throw std::invalid_argument("duplicate node id");
      if (has_edge(nodes[i], nodes[j])) adj.set(static_cast<int>(i), static_cast<int>(j));
    }
  return adj;
}

Graph::Stats Graph::stats() const {
  Stats s;
  s.n = node_count();
  s.m = m_;
  for (u32 v = 0; v < s.n; ++v) {
    u32 d = degree(v);
    s.max_degree = std::max(s.max_degree, d);
    if (d >= s.degree_histogram.size()) s.degree_histogram.resize(d + 1, 0);
    ++s.degree_histogram[d];
  }
  return s;
}

u32 Graph::max_degree() const {
  u32 best = 0;
  for (u32 v = 0; v < node_count(); ++v) best = std::max(best, degree(v));
  return best;
}

}  // namespace motif
