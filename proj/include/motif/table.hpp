#pragma once
// Treelet count table ("the urn"): per node and per treelet size h, a sorted
// record of (colored-treelet key, cumulative 128-bit count) pairs. Records
// are staged in memory one node at a time, flushed greedily, sorted by node
// in a second pass, and queried read-only afterwards.
//
// Level file format (little-endian), one file per treelet size:
//
//   magic "MTVT" | u32 version=1 | u32 k | u32 h | u64 record_count
//   records: [u32 node | u32 entry_count | entry_count x 22-byte entries]
//   index:   record_count x [u32 node | u64 record_offset]   (node-sorted)
//   trailer: u64 index_offset
//
// Each entry is 6 bytes of key plus 16 bytes of cumulative count. Keys are
// strictly increasing within a record; cumulative counts strictly increase,
// so every raw count is positive and the record total sits at the end. For
// h == k, records exist only at nodes of color 0, so each colorful k-treelet
// occurrence is tallied exactly once.

#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "motif/common.hpp"
#include "motif/treelet.hpp"

namespace motif {

inline constexpr size_t kTableEntryBytes = 22;  // 48-bit key + 128-bit count

struct TableEntry {
  u64 key = 0;
  u128 value = 0;
};

// Read-only view of one node's record inside a finalized level.
class RecordView {
 public:
  RecordView() = default;
  RecordView(const u8* base, u32 node, u32 count) : base_(base), node_(node), count_(count) {}

  bool empty() const { return count_ == 0; }
  u32 size() const { return count_; }
  u32 node() const { return node_; }

  u64 key(u32 i) const { return load_le48(base_ + kTableEntryBytes * i); }
  u128 cum(u32 i) const { return load_le128(base_ + kTableEntryBytes * i + 6); }
  u128 raw(u32 i) const { return cum(i) - (i ? cum(i - 1) : 0); }
  u128 total() const { return count_ ? cum(count_ - 1) : 0; }

  // First index with key >= target.
  u32 lower_bound(u64 target) const;
  std::optional<u32> find(u64 target) const;
  // Contiguous [lo, hi) of entries whose treelet part equals t.
  std::pair<u32, u32> shape_range(TreeletCode t) const;
  // The entries of one treelet shape as (colors, raw count), ascending.
  std::vector<std::pair<ColorSet, u128>> colored_entries(TreeletCode t) const;
  // First index with cum >= target (selection by cumulative count).
  u32 first_cum_at_least(u128 target) const;

 private:
  const u8* base_ = nullptr;
  u32 node_ = 0;
  u32 count_ = 0;
};

// Bytes of a finalized level: a memory-mapped file or an owned buffer.
class ByteSource {
 public:
  ByteSource() = default;
  static ByteSource from_vector(std::vector<u8> v);
  static ByteSource map_file(const std::string& path);

  const u8* data() const { return data_; }
  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

 private:
  struct Mapping {
    void* addr = nullptr;
    size_t len = 0;
    ~Mapping();
  };
  std::shared_ptr<std::vector<u8>> owned_;
  std::shared_ptr<Mapping> map_;
  const u8* data_ = nullptr;
  size_t size_ = 0;
};

// Per-worker staging for one record under construction.
class RecordStage {
 public:
  void stage_add(u64 key, u128 amount);
  bool empty() const { return counts_.empty(); }
  void merge_from(RecordStage& other);
  // Sorted raw entries; clears the stage.
  std::vector<TableEntry> take_sorted();

 private:
  std::unordered_map<u64, u128> counts_;
};

// Writer for one level: records appended in completion order (greedy
// flushing), then ordered by node id in a final sort pass.
class LevelBuilder {
 public:
  // final_path empty => the level lives in memory.
  LevelBuilder(int k, int h, std::string final_path);
  ~LevelBuilder();
  LevelBuilder(LevelBuilder&&) noexcept;
  LevelBuilder& operator=(LevelBuilder&&) noexcept;

  // Entries must be sorted by key with positive raw values; empty input
  // emits no record. Thread-safe.
  void append_record(u32 node, std::span<const TableEntry> raw_entries);

  void sort_pass();  // idempotent
  ByteSource take(); // requires sort_pass()

  u64 record_count() const { return refs_.size(); }
  u64 entry_count() const { return entries_; }
  int h() const { return h_; }

 private:
  struct Ref {
    u32 node;
    u64 offset;
    u64 length;
  };
  int k_ = 0;
  int h_ = 0;
  std::string final_path_;
  std::string scratch_path_;
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> scratch_{nullptr, nullptr};
  std::vector<u8> scratch_mem_;
  std::vector<Ref> refs_;
  u64 entries_ = 0;
  bool sorted_ = false;
  ByteSource final_;
  std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

class CountTable {
 public:
  CountTable() = default;
  explicit CountTable(int k) : k_(k), levels_(k + 1) {}

  static CountTable open_dir(const std::string& dir);
  static std::string level_path(const std::string& dir, int h);

  void set_level(int h, ByteSource src);
  bool has_level(int h) const { return h >= 1 && h <= k_ && levels_[h].present; }

  int k() const { return k_; }

  RecordView record(int h, u32 node) const;
  // Raw count of one colored key at a node; 0 when absent.
  u128 occ(u64 colored_key, u32 node) const;
  // Total size-k count at a node; 0 when absent.
  u128 occ_total(u32 node) const;
  // Random key from the size-k record at node, probability raw/total.
  u64 sample_colored(u32 node, Rng& rng) const;

  u128 total_treelets() const;
  // Totals per rooting-independent treelet shape; values sum to
  // total_treelets().
  std::map<TreeletCode, u128> shape_totals() const;

  void for_each_record(int h, const std::function<void(const RecordView&)>& fn) const;
  u64 record_count(int h) const;
  u64 entry_count(int h) const;

 private:
  struct Level {
    bool present = false;
    ByteSource src;
    std::vector<u64> offsets;     // per record
    std::vector<u32> nodes;       // per record, ascending
    std::vector<u32> node_index;  // node -> record index + 1, 0 = absent
  };
  void attach(int h, Level& level);

  int k_ = 0;
  std::vector<Level> levels_;
  u128 total_ = 0;
};

}  // namespace motif
