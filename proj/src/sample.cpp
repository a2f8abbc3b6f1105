#include "motif/sample.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cfloat>
#include <mutex>
#include <thread>

namespace motif {

namespace {

// Head-part lookup for one expansion step: (color mask -> count) for the
// entries of treelet t1 at node v whose colors sit inside parent_colors.
struct HeadLookup {
  std::vector<std::pair<u16, u128>> entries;

  u128 find(u16 mask) const {
    for (const auto& [m, c] : entries)
      if (m == mask) return c;
    return 0;
  }
};

HeadLookup head_lookup(const CountTable& table, TreeletCode t1, u32 v, u16 parent_colors) {
  HeadLookup out;
  RecordView rec = table.record(t1.size(), v);
  if (rec.empty()) return out;
  auto [lo, hi] = rec.shape_range(t1);
  for (u32 i = lo; i < hi; ++i) {
    u16 mask = static_cast<u16>(rec.key(i) & 0xffff);
    if ((mask & ~parent_colors) == 0) out.entries.emplace_back(mask, rec.raw(i));
  }
  return out;
}

// One pass over (neighbor, tail entry) pairs in deterministic order,
// assigning each sorted target the pair at which the running mass reaches
// it. Returns when every target is assigned.
void sweep_select(const CountTable& table, const Graph& g, u32 v, TreeletCode t2,
                  u16 parent_colors, const HeadLookup& head,
                  const std::vector<u128>& sorted_targets,
                  std::vector<std::pair<u32, u16>>& out) {
  u128 running = 0;
  size_t next = 0;
  for (u32 u : g.neighbors(v)) {
    RecordView rec = table.record(t2.size(), u);
    if (rec.empty()) continue;
    auto [lo, hi] = rec.shape_range(t2);
    for (u32 i = lo; i < hi; ++i) {
      u16 c2 = static_cast<u16>(rec.key(i) & 0xffff);
      if (c2 & ~parent_colors) continue;
      u128 h = head.find(static_cast<u16>(parent_colors & ~c2));
      if (h == 0) continue;
      running = checked_add(running, checked_mul(h, rec.raw(i)));
      while (next < sorted_targets.size() && sorted_targets[next] <= running) {
        out.emplace_back(u, c2);
        ++next;
      }
      if (next == sorted_targets.size()) return;
    }
  }
  if (next != sorted_targets.size())
    throw std::logic_error("expansion mass shorter than table count");
}

void expand_into(const CountTable& table, const Graph& g, u64 key, u32 v, Rng& rng,
                 NeighborBuffer* buffer, Occurrence& out) {
  TreeletCode t = treelet_of_key(key);
  if (t.bits == 0) {
    out.nodes.push_back(v);
    return;
  }
  auto [t1, t2] = decomp(t);
  u16 parent_colors = static_cast<u16>(key & 0xffff);

  std::pair<u32, u16> choice;
  bool buffered = buffer && g.degree(v) >= buffer->config().buffer_degree_threshold;
  std::optional<std::pair<u32, u16>> cached;
  if (buffered) cached = buffer->pop(v, key);
  if (cached) {
    choice = *cached;
  } else {
    u128 total = checked_mul(static_cast<u128>(beta(t)), table.occ(key, v));
    if (total == 0) throw std::logic_error("expansion at a node with zero count");
    HeadLookup head = head_lookup(table, t1, v, parent_colors);
    u32 want = buffered ? buffer->config().buffer_batch : 1;
    std::vector<u128> targets(want);
    for (u128& r : targets) r = uniform_below(rng, total) + 1;
    std::sort(targets.begin(), targets.end());
    std::vector<std::pair<u32, u16>> picks;
    picks.reserve(want);
    sweep_select(table, g, v, t2, parent_colors, head, targets, picks);
    if (buffered) {
      // A uniformly permuted batch of independent draws is consumed as an
      // independent sequence.
      for (size_t i = picks.size(); i > 1; --i)
        std::swap(picks[i - 1], picks[uniform_below(rng, static_cast<u64>(i))]);
      choice = picks.front();
      picks.erase(picks.begin());
      buffer->push_batch(v, key, std::move(picks));
    } else {
      choice = picks.front();
    }
  }

  auto [u, tail_colors] = choice;
  out.edges.emplace_back(std::min(v, u), std::max(v, u));
  expand_into(table, g, colored(t1, ColorSet{static_cast<u16>(parent_colors & ~tail_colors)}).key,
              v, rng, buffer, out);
  expand_into(table, g, colored(t2, ColorSet{tail_colors}).key, u, rng, buffer, out);
}

std::vector<std::pair<u32, u128>> shape_class_weights(const CountTable& table,
                                                      TreeletCode shape) {
  std::vector<std::pair<u32, u128>> out;
  table.for_each_record(table.k(), [&](const RecordView& rec) {
    u128 w = 0;
    u32 i = 0;
    while (i < rec.size()) {
      TreeletCode t = treelet_of_key(rec.key(i));
      u32 j = i;
      while (j < rec.size() && treelet_of_key(rec.key(j)) == t) ++j;
      if (normalize_shape(t) == shape)
        w = checked_add(w, rec.cum(j - 1) - (i ? rec.cum(i - 1) : 0));
      i = j;
    }
    if (w > 0) out.emplace_back(rec.node(), w);
  });
  return out;
}

}  // namespace

RootAlias::RootAlias(std::vector<u32> nodes, std::vector<u128> weights)
    : nodes_(std::move(nodes)) {
  if (nodes_.size() != weights.size()) throw std::invalid_argument("weight count mismatch");
  for (u128 w : weights) total_ = checked_add(total_, w);
  if (nodes_.empty() || total_ == 0) {
    nodes_.clear();
    return;
  }
  double total_d = to_double(total_);
  for (u128 w : weights) {
    double p = to_double(w) / total_d;
    if (w > 0 && !(p >= DBL_MIN)) {
      exact_ = true;
      break;
    }
  }
  if (exact_) {
    cumulative_.resize(weights.size());
    u128 running = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
      running += weights[i];
      cumulative_[i] = running;
    }
    return;
  }
  size_t n = nodes_.size();
  threshold_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  for (size_t i = 0; i < n; ++i) scaled[i] = to_double(weights[i]) / total_d * n;
  std::vector<u32> small, large;
  for (size_t i = 0; i < n; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<u32>(i));
  while (!small.empty() && !large.empty()) {
    u32 s = small.back();
    u32 l = large.back();
    small.pop_back();
    large.pop_back();
    threshold_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (u32 i : small) {
    threshold_[i] = 1.0;
    alias_[i] = i;
  }
  for (u32 i : large) {
    threshold_[i] = 1.0;
    alias_[i] = i;
  }
}

RootAlias RootAlias::whole_urn(const CountTable& table) {
  std::vector<u32> nodes;
  std::vector<u128> weights;
  table.for_each_record(table.k(), [&](const RecordView& rec) {
    u128 t = rec.total();
    if (t > 0) {
      nodes.push_back(rec.node());
      weights.push_back(t);
    }
  });
  return RootAlias(std::move(nodes), std::move(weights));
}

RootAlias RootAlias::for_shape(const CountTable& table, TreeletCode normalized_shape) {
  std::vector<u32> nodes;
  std::vector<u128> weights;
  for (auto [node, w] : shape_class_weights(table, normalized_shape)) {
    nodes.push_back(node);
    weights.push_back(w);
  }
  return RootAlias(std::move(nodes), std::move(weights));
}

u32 RootAlias::draw(Rng& rng) const {
  if (nodes_.empty()) throw std::runtime_error("empty urn");
  if (exact_) {
    u128 r = uniform_below(rng, total_) + 1;
    size_t lo = 0, hi = cumulative_.size();
    while (lo < hi) {
      size_t mid = lo + (hi - lo) / 2;
      if (cumulative_[mid] < r)
        lo = mid + 1;
      else
        hi = mid;
    }
    return nodes_[lo];
  }
  u64 slot = uniform_below(rng, static_cast<u64>(nodes_.size()));
  double x = uniform01(rng);
  return x < threshold_[slot] ? nodes_[slot] : nodes_[alias_[slot]];
}

std::optional<std::pair<u32, u16>> NeighborBuffer::pop(u32 node, u64 key) {
  auto it = cache_.find({node, key});
  if (it == cache_.end() || it->second.empty()) return std::nullopt;
  auto front = it->second.front();
  it->second.pop_front();
  return front;
}

void NeighborBuffer::push_batch(u32 node, u64 key, std::vector<std::pair<u32, u16>> draws) {
  auto& q = cache_[{node, key}];
  for (auto& d : draws) q.push_back(d);
}

Occurrence sample_occurrence(const CountTable& table, const Graph& g, const RootAlias& roots,
                             Rng& rng, NeighborBuffer* buffer) {
  Occurrence occ;
  occ.root = roots.draw(rng);
  occ.key = table.sample_colored(occ.root, rng);
  expand_into(table, g, occ.key, occ.root, rng, buffer, occ);
  std::sort(occ.nodes.begin(), occ.nodes.end());
  std::sort(occ.edges.begin(), occ.edges.end());
  return occ;
}

Occurrence sample_occurrence_of_shape(const CountTable& table, const Graph& g,
                                      TreeletCode normalized_shape, const RootAlias& roots,
                                      Rng& rng, NeighborBuffer* buffer) {
  Occurrence occ;
  occ.root = roots.draw(rng);
  RecordView rec = table.record(table.k(), occ.root);
  if (rec.empty()) throw std::logic_error("shape root without a record");
  // Class weight at this root, then cumulative selection inside the class.
  u128 class_total = 0;
  for (u32 i = 0; i < rec.size(); ++i)
    if (normalize_shape(treelet_of_key(rec.key(i))) == normalized_shape)
      class_total = checked_add(class_total, rec.raw(i));
  if (class_total == 0) throw std::logic_error("shape root without class mass");
  u128 r = uniform_below(rng, class_total) + 1;
  u128 running = 0;
  u64 chosen = 0;
  for (u32 i = 0; i < rec.size(); ++i) {
    if (normalize_shape(treelet_of_key(rec.key(i))) != normalized_shape) continue;
    running += rec.raw(i);
    if (running >= r) {
      chosen = rec.key(i);
      break;
    }
  }
  occ.key = chosen;
  expand_into(table, g, occ.key, occ.root, rng, buffer, occ);
  std::sort(occ.nodes.begin(), occ.nodes.end());
  std::sort(occ.edges.begin(), occ.edges.end());
  return occ;
}

GraphletCode materialize(const Occurrence& occ, const Graph& g) {
  if (occ.nodes.size() == 1) return GraphletCode{0, 1};
  return canonical_graphlet(g.induced_adjacency(occ.nodes));
}

NaiveRun naive_run(const CountTable& table, const Graph& g, u64 sample_budget,
                   double time_budget_seconds, u64 seed, int threads, SigmaCache& sigma,
                   const SamplerConfig& cfg, double rainbow_probability) {
  NaiveRun run;
  run.urn_total = table.total_treelets();
  bool timed = time_budget_seconds > 0;
  if (!timed && sample_budget == 0) return run;
  RootAlias roots = RootAlias::whole_urn(table);
  if (roots.empty()) throw std::runtime_error("empty urn");

  threads = std::max(1, threads);
  std::vector<std::map<GraphletCode, u64>> hists(static_cast<size_t>(threads));
  std::vector<u64> counts(static_cast<size_t>(threads), 0);
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(timed ? time_budget_seconds : 0));
  std::mutex err_mu;
  std::exception_ptr err;
  std::atomic<bool> failed{false};

  // Fixed per-worker quotas keep sample-count runs reproducible for a given
  // seed and thread count; timed runs are inherently best-effort.
  auto quota_of = [&](int wid) {
    u64 base = sample_budget / static_cast<u64>(threads);
    return base + (static_cast<u64>(wid) < sample_budget % static_cast<u64>(threads) ? 1 : 0);
  };

  auto worker = [&](int wid) {
    try {
      Rng rng(seed ^ static_cast<u64>(wid));
      NeighborBuffer buffer(cfg);
      auto& hist = hists[static_cast<size_t>(wid)];
      u64 quota = timed ? 0 : quota_of(wid);
      for (;;) {
        if (failed.load()) return;
        if (timed) {
          if (std::chrono::steady_clock::now() >= deadline) return;
        } else if (counts[static_cast<size_t>(wid)] >= quota) {
          return;
        }
        Occurrence occ = sample_occurrence(table, g, roots, rng, &buffer);
        ++hist[materialize(occ, g)];
        ++counts[static_cast<size_t>(wid)];
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
      failed.store(true);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) std::rethrow_exception(err);

  for (int t = 0; t < threads; ++t) {
    run.samples += counts[static_cast<size_t>(t)];
    for (auto [code, c] : hists[static_cast<size_t>(t)]) run.histogram[code] += c;
  }
  double p = rainbow_probability > 0 ? rainbow_probability
                                     : colorful_probability(table.k()).value();
  if (run.samples > 0)
    run.estimates = estimate_from_histogram(run.histogram, run.samples, run.urn_total, sigma, p);
  return run;
}

}  // namespace motif
