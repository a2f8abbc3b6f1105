#include "motif/build.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace motif {

namespace {

// Product of two entry runs restricted to mergeable color pairs, accumulated
// into the stage under the merged key.
void accumulate_pairs(const RecordView& rec1, u32 lo1, u32 hi1, const RecordView& rec2,
                      u32 lo2, u32 hi2, u64 merged_shape_key, RecordStage& stage) {
  for (u32 i = lo1; i < hi1; ++i) {
    u64 k1 = rec1.key(i);
    u16 c1 = static_cast<u16>(k1 & 0xffff);
    u128 v1 = rec1.raw(i);
    for (u32 j = lo2; j < hi2; ++j) {
      u64 k2 = rec2.key(j);
      u16 c2 = static_cast<u16>(k2 & 0xffff);
      if (c1 & c2) continue;
      stage.stage_add(merged_shape_key | static_cast<u64>(c1 | c2),
                      checked_mul(v1, rec2.raw(j)));
    }
  }
}

// One neighbor's contribution to the size-h counts at v: all split sizes,
// all run pairs that pass the shape merge condition.
void accumulate_neighbor(const CountTable& table, u32 v, u32 u, int h, RecordStage& stage) {
  for (int h2 = 1; h2 < h; ++h2) {
    int h1 = h - h2;
    RecordView rec1 = table.record(h1, v);
    if (rec1.empty()) continue;
    RecordView rec2 = table.record(h2, u);
    if (rec2.empty()) continue;
    u32 i = 0;
    while (i < rec1.size()) {
      TreeletCode t1 = treelet_of_key(rec1.key(i));
      u32 i_end = i;
      while (i_end < rec1.size() && treelet_of_key(rec1.key(i_end)) == t1) ++i_end;
      u32 j = 0;
      while (j < rec2.size()) {
        TreeletCode t2 = treelet_of_key(rec2.key(j));
        u32 j_end = j;
        while (j_end < rec2.size() && treelet_of_key(rec2.key(j_end)) == t2) ++j_end;
        if (can_merge(t1, t2)) {
          u64 merged_key = static_cast<u64>(merge(t1, t2).bits) << 16;
          accumulate_pairs(rec1, i, i_end, rec2, j, j_end, merged_key, stage);
        }
        j = j_end;
      }
      i = i_end;
    }
  }
}

// The pairwise accumulation tallies every copy beta_T times; divide it out
// and insist on exact divisibility.
std::vector<TableEntry> finalize_stage(RecordStage& stage) {
  std::vector<TableEntry> entries = stage.take_sorted();
  TreeletCode last{0xffffffff};
  u128 b = 1;
  for (TableEntry& e : entries) {
    TreeletCode t = treelet_of_key(e.key);
    if (t != last) {
      last = t;
      b = static_cast<u128>(beta(t));
    }
    if (e.value % b != 0) throw std::logic_error("count not divisible by beta");
    e.value /= b;
  }
  return entries;
}

}  // namespace

Coloring color_graph(const Graph& g, const BuildConfig& cfg) {
  if (cfg.k < 2 || cfg.k > kMaxTreeletNodes) throw std::invalid_argument("k must be 2..16");
  Coloring c;
  c.k = cfg.k;
  c.seed = cfg.seed;
  c.colors.resize(g.node_count());
  Rng rng(cfg.seed);
  if (cfg.lambda) {
    double lambda = *cfg.lambda;
    if (!(lambda > 0) || !(lambda < 1.0 / (cfg.k - 1)))
      throw std::invalid_argument("lambda must lie in (0, 1/(k-1))");
    c.mode = ColorMode::biased;
    c.lambda = lambda;
    double light_mass = (cfg.k - 1) * lambda;
    for (u32 v = 0; v < g.node_count(); ++v) {
      double x = uniform01(rng);
      if (x >= light_mass) {
        c.colors[v] = 0;
      } else {
        int i = static_cast<int>(x / lambda);
        if (i >= cfg.k - 1) i = cfg.k - 2;
        c.colors[v] = static_cast<u8>(i + 1);
      }
    }
  } else {
    c.mode = ColorMode::uniform;
    for (u32 v = 0; v < g.node_count(); ++v)
      c.colors[v] = static_cast<u8>(uniform_below(rng, static_cast<u64>(cfg.k)));
  }
  return c;
}

CountTable build_tables(const Graph& g, const Coloring& coloring, const BuildConfig& cfg) {
  int k = coloring.k;
  if (k < 2 || k > kMaxTreeletNodes) throw std::invalid_argument("k must be 2..16");
  if (coloring.colors.size() != g.node_count())
    throw std::invalid_argument("coloring does not match graph");
  int threads = std::max(1, cfg.threads);
  auto t_start = std::chrono::steady_clock::now();

  std::string dir = cfg.table_dir;
  if (!dir.empty()) std::filesystem::create_directories(dir);
  auto level_path = [&](int h) { return dir.empty() ? std::string() : CountTable::level_path(dir, h); };

  CountTable table(k);

  {  // h = 1: one singleton entry per node, colored with the node's color.
    LevelBuilder b(k, 1, level_path(1));
    for (u32 v = 0; v < g.node_count(); ++v) {
      TableEntry e{colored(TreeletCode{0}, ColorSet{static_cast<u16>(1u << coloring.color(v))}).key, 1};
      b.append_record(v, {&e, 1});
    }
    b.sort_pass();
    table.set_level(1, b.take());
  }

  std::mutex err_mu;
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto capture = [&](auto&& fn) {
    try {
      fn();
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
      failed.store(true);
    }
  };
  auto rethrow_if_failed = [&]() {
    if (failed.load()) std::rethrow_exception(err);
  };

  for (int h = 2; h <= k; ++h) {
    LevelBuilder builder(k, h, level_path(h));
    bool root_level = (h == k);
    u32 n = g.node_count();
    // Bulk phase: one worker per node. The last <threads> nodes are left for
    // the edge-parallel tail so no worker sits idle at the end.
    u32 tail_begin = (n > static_cast<u32>(threads)) ? n - static_cast<u32>(threads) : 0;
    std::atomic<u32> next{0};
    auto bulk_worker = [&]() {
      capture([&]() {
        RecordStage stage;
        for (;;) {
          if (failed.load()) break;
          u32 v = next.fetch_add(1);
          if (v >= tail_begin) break;
          if (root_level && coloring.color(v) != 0) continue;
          for (u32 u : g.neighbors(v)) accumulate_neighbor(table, v, u, h, stage);
          if (!stage.empty()) {
            auto entries = finalize_stage(stage);
            builder.append_record(v, entries);
          }
        }
      });
    };
    if (threads == 1) {
      bulk_worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(bulk_worker);
      for (auto& t : pool) t.join();
    }
    rethrow_if_failed();
    // Tail phase: split each remaining node's neighbor sum across workers,
    // then reduce the partial stages.
    for (u32 v = tail_begin; v < n; ++v) {
      if (root_level && coloring.color(v) != 0) continue;
      auto nbrs = g.neighbors(v);
      std::vector<RecordStage> parts(static_cast<size_t>(threads));
      if (threads == 1 || nbrs.size() < 2) {
        for (u32 u : nbrs) accumulate_neighbor(table, v, u, h, parts[0]);
      } else {
        std::vector<std::thread> pool;
        size_t chunk = (nbrs.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
          size_t lo = std::min(nbrs.size(), t * chunk);
          size_t hi = std::min(nbrs.size(), lo + chunk);
          pool.emplace_back([&, lo, hi, t]() {
            capture([&]() {
              for (size_t i = lo; i < hi; ++i)
                accumulate_neighbor(table, v, nbrs[i], h, parts[t]);
            });
          });
        }
        for (auto& t : pool) t.join();
        rethrow_if_failed();
      }
      RecordStage& stage = parts[0];
      for (size_t t = 1; t < parts.size(); ++t) stage.merge_from(parts[t]);
      if (!stage.empty()) {
        auto entries = finalize_stage(stage);
        builder.append_record(v, entries);
      }
    }
    builder.sort_pass();
    table.set_level(h, builder.take());
  }

  if (!dir.empty()) {
    auto wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    std::ofstream manifest(dir + "/manifest.txt");
    manifest << "k=" << k << "\n";
    manifest << "seed=" << coloring.seed << "\n";
    manifest << "mode=" << (coloring.mode == ColorMode::biased ? "biased" : "uniform") << "\n";
    if (coloring.mode == ColorMode::biased) manifest << "lambda=" << coloring.lambda << "\n";
    manifest << "n=" << g.node_count() << "\n";
    manifest << "m=" << g.edge_count() << "\n";
    manifest << "threads=" << threads << "\n";
    for (int h = 1; h <= k; ++h)
      manifest << "h" << h << "_records=" << table.record_count(h)
               << " entries=" << table.entry_count(h) << "\n";
    manifest << "wall_seconds=" << wall << "\n";
  }
  return table;
}

LambdaChoice choose_lambda(const Graph& g, int k, double b, u64 seed) {
  if (b <= 1) throw std::invalid_argument("b must exceed 1");
  if (k < 2 || k > kMaxTreeletNodes) throw std::invalid_argument("k must be 2..16");
  u32 n = g.node_count();
  if (n == 0) throw std::invalid_argument("empty graph");
  double cap = 1.0 / (k - 1);
  LambdaChoice choice;
  choice.lambda = 1.0 / (b * (k - 1) * n);
  for (;; choice.lambda *= 2, ++choice.doublings) {
    if (choice.lambda >= cap) {
      // Schedule exhausted: fall back to the uniform-equivalent assignment.
      choice.lambda = 1.0 / k;
      choice.capped = true;
      return choice;
    }
    BuildConfig cfg;
    cfg.k = k;
    cfg.seed = seed;
    cfg.lambda = choice.lambda;
    Coloring coloring = color_graph(g, cfg);
    // Size-2 probe: a node has a positive count exactly when some neighbor
    // carries a different color.
    u64 positive = 0;
    for (u32 v = 0; v < n; ++v) {
      for (u32 u : g.neighbors(v)) {
        if (coloring.color(u) != coloring.color(v)) {
          ++positive;
          break;
        }
      }
    }
    if (positive * 100 >= n) return choice;
  }
}

}  // namespace motif
