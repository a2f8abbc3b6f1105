#include "motif/table.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace motif {

namespace {

constexpr char kMagic[4] = {'M', 'T', 'V', 'T'};
constexpr u32 kVersion = 1;
constexpr size_t kHeaderBytes = 24;

void pack_header(u8* p, u32 k, u32 h, u64 records) {
  std::memcpy(p, kMagic, 4);
  store_le32(p + 4, kVersion);
  store_le32(p + 8, k);
  store_le32(p + 12, h);
  store_le64(p + 16, records);
}

}  // namespace

u32 RecordView::lower_bound(u64 target) const {
  u32 lo = 0, hi = count_;
  while (lo < hi) {
    u32 mid = lo + (hi - lo) / 2;
    if (key(mid) < target)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

std::optional<u32> RecordView::find(u64 target) const {
  u32 i = lower_bound(target);
  if (i < count_ && key(i) == target) return i;
  return std::nullopt;
}

std::pair<u32, u32> RecordView::shape_range(TreeletCode t) const {
  u64 lo_key = static_cast<u64>(t.bits) << 16;
  return {lower_bound(lo_key), lower_bound(lo_key + 0x10000)};
}

std::vector<std::pair<ColorSet, u128>> RecordView::colored_entries(TreeletCode t) const {
  std::vector<std::pair<ColorSet, u128>> out;
  auto [lo, hi] = shape_range(t);
  out.reserve(hi - lo);
  for (u32 i = lo; i < hi; ++i) out.emplace_back(colors_of_key(key(i)), raw(i));
  return out;
}

u32 RecordView::first_cum_at_least(u128 target) const {
  u32 lo = 0, hi = count_;
  while (lo < hi) {
    u32 mid = lo + (hi - lo) / 2;
    if (cum(mid) < target)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

ByteSource::Mapping::~Mapping() {
  if (addr) ::munmap(addr, len);
}

ByteSource ByteSource::from_vector(std::vector<u8> v) {
  ByteSource s;
  s.owned_ = std::make_shared<std::vector<u8>>(std::move(v));
  s.data_ = s.owned_->data();
  s.size_ = s.owned_->size();
  return s;
}

ByteSource ByteSource::map_file(const std::string& path) {
  int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) throw format_error("cannot open table file: " + path);
  struct ::stat st {};
  if (::fstat(fd, &st) != 0) {
    ::close(fd);
    throw format_error("cannot stat table file: " + path);
  }
  size_t len = static_cast<size_t>(st.st_size);
  ByteSource s;
  if (len > 0) {
    void* addr = ::mmap(nullptr, len, PROT_READ, MAP_PRIVATE, fd, 0);
    if (addr != MAP_FAILED) {
      auto m = std::make_shared<Mapping>();
      m->addr = addr;
      m->len = len;
      s.map_ = std::move(m);
      s.data_ = static_cast<const u8*>(s.map_->addr);
      s.size_ = len;
      ::close(fd);
      return s;
    }
  }
  ::close(fd);
  // Fallback: buffered read of the whole file.
  std::ifstream in(path, std::ios::binary);
  std::vector<u8> buf(len);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(len));
  if (!in && len > 0) throw format_error("cannot read table file: " + path);
  return from_vector(std::move(buf));
}

void RecordStage::stage_add(u64 key, u128 amount) {
  if (amount == 0) throw std::invalid_argument("staged amount must be positive");
  u128& slot = counts_[key];
  slot = checked_add(slot, amount);
}

void RecordStage::merge_from(RecordStage& other) {
  for (auto& [key, value] : other.counts_) {
    u128& slot = counts_[key];
    slot = checked_add(slot, value);
  }
  other.counts_.clear();
}

std::vector<TableEntry> RecordStage::take_sorted() {
  std::vector<TableEntry> out;
  out.reserve(counts_.size());
  for (auto& [key, value] : counts_) out.push_back({key, value});
  counts_.clear();
  std::sort(out.begin(), out.end(),
            [](const TableEntry& a, const TableEntry& b) { return a.key < b.key; });
  return out;
}

LevelBuilder::LevelBuilder(int k, int h, std::string final_path)
    : k_(k), h_(h), final_path_(std::move(final_path)) {
  if (!final_path_.empty()) {
    scratch_path_ = final_path_ + ".unsorted";
    std::FILE* f = std::fopen(scratch_path_.c_str(), "wb+");
    if (!f) throw format_error("cannot create scratch file: " + scratch_path_);
    scratch_ = {f, &std::fclose};
  }
}

LevelBuilder::~LevelBuilder() {
  scratch_.reset();
  if (!scratch_path_.empty()) {
    std::error_code ec;
    std::filesystem::remove(scratch_path_, ec);
  }
}

LevelBuilder::LevelBuilder(LevelBuilder&&) noexcept = default;
LevelBuilder& LevelBuilder::operator=(LevelBuilder&&) noexcept = default;

void LevelBuilder::append_record(u32 node, std::span<const TableEntry> raw_entries) {
  if (raw_entries.empty()) return;
  std::vector<u8> blob(8 + kTableEntryBytes * raw_entries.size());
  store_le32(blob.data(), node);
  store_le32(blob.data() + 4, static_cast<u32>(raw_entries.size()));
  u128 running = 0;
  u64 prev_key = 0;
  for (size_t i = 0; i < raw_entries.size(); ++i) {
    const TableEntry& e = raw_entries[i];
    if (i > 0 && e.key <= prev_key) throw std::invalid_argument("record keys not sorted");
    prev_key = e.key;
    running = checked_add(running, e.value);
    u8* p = blob.data() + 8 + kTableEntryBytes * i;
    store_le48(p, e.key);
    store_le128(p + 6, running);
  }
  std::lock_guard<std::mutex> lock(*mu_);
  if (sorted_) throw std::logic_error("append after sort pass");
  u64 offset;
  if (scratch_) {
    offset = static_cast<u64>(std::ftell(scratch_.get()));
    if (std::fwrite(blob.data(), 1, blob.size(), scratch_.get()) != blob.size())
      throw format_error("scratch write failed");
  } else {
    offset = scratch_mem_.size();
    scratch_mem_.insert(scratch_mem_.end(), blob.begin(), blob.end());
  }
  refs_.push_back({node, offset, blob.size()});
  entries_ += raw_entries.size();
}

void LevelBuilder::sort_pass() {
  std::lock_guard<std::mutex> lock(*mu_);
  if (sorted_) return;
  // TODO: stream the reordered records instead of assembling the level in
  // memory; only the staging side is bounded right now.
  std::sort(refs_.begin(), refs_.end(), [](const Ref& a, const Ref& b) { return a.node < b.node; });
  for (size_t i = 1; i < refs_.size(); ++i)
    if (refs_[i].node == refs_[i - 1].node) throw std::logic_error("duplicate record node");

  u64 body = 0;
  for (const Ref& r : refs_) body += r.length;
  std::vector<u8> out;
  out.reserve(kHeaderBytes + body + refs_.size() * 12 + 8);
  out.resize(kHeaderBytes);
  pack_header(out.data(), static_cast<u32>(k_), static_cast<u32>(h_), refs_.size());

  std::vector<std::pair<u32, u64>> index;
  index.reserve(refs_.size());
  std::vector<u8> blob;
  for (const Ref& r : refs_) {
    index.emplace_back(r.node, out.size());
    blob.resize(r.length);
    if (scratch_) {
      if (std::fseek(scratch_.get(), static_cast<long>(r.offset), SEEK_SET) != 0 ||
          std::fread(blob.data(), 1, r.length, scratch_.get()) != r.length)
        throw format_error("scratch read failed");
    } else {
      std::copy_n(scratch_mem_.data() + r.offset, r.length, blob.data());
    }
    out.insert(out.end(), blob.begin(), blob.end());
  }
  u64 index_offset = out.size();
  for (auto [node, off] : index) {
    u8 ent[12];
    store_le32(ent, node);
    store_le64(ent + 4, off);
    out.insert(out.end(), ent, ent + 12);
  }
  u8 trailer[8];
  store_le64(trailer, index_offset);
  out.insert(out.end(), trailer, trailer + 8);

  if (!final_path_.empty()) {
    std::ofstream f(final_path_, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw format_error("cannot write table file: " + final_path_);
    f.close();
    scratch_.reset();
    std::error_code ec;
    std::filesystem::remove(scratch_path_, ec);
    scratch_path_.clear();
    final_ = ByteSource::map_file(final_path_);
  } else {
    scratch_mem_.clear();
    scratch_mem_.shrink_to_fit();
    final_ = ByteSource::from_vector(std::move(out));
  }
  sorted_ = true;
}

ByteSource LevelBuilder::take() {
  if (!sorted_) throw std::logic_error("take before sort pass");
  return final_;
}

std::string CountTable::level_path(const std::string& dir, int h) {
  return dir + "/treelets_h" + std::to_string(h) + ".tbl";
}

CountTable CountTable::open_dir(const std::string& dir) {
  std::string first = level_path(dir, 1);
  ByteSource src = ByteSource::map_file(first);
  if (src.size() < kHeaderBytes) throw format_error("table file too short: " + first);
  if (std::memcmp(src.data(), kMagic, 4) != 0)
    throw format_error("not a motif-engine count table: " + first);
  u32 k = load_le32(src.data() + 8);
  CountTable t(static_cast<int>(k));
  t.set_level(1, std::move(src));
  for (int h = 2; h <= static_cast<int>(k); ++h)
    t.set_level(h, ByteSource::map_file(level_path(dir, h)));
  return t;
}

void CountTable::set_level(int h, ByteSource src) {
  if (h < 1 || h > k_) throw std::invalid_argument("level out of range");
  Level& lvl = levels_[h];
  lvl.src = std::move(src);
  attach(h, lvl);
}

void CountTable::attach(int h, Level& lvl) {
  const u8* p = lvl.src.data();
  size_t size = lvl.src.size();
  if (size < kHeaderBytes + 8) throw format_error("table level too short");
  if (std::memcmp(p, kMagic, 4) != 0) throw format_error("not a motif-engine count table");
  if (load_le32(p + 4) != kVersion) throw format_error("unsupported table version");
  if (load_le32(p + 8) != static_cast<u32>(k_)) throw format_error("table k mismatch");
  if (load_le32(p + 12) != static_cast<u32>(h)) throw format_error("table level mismatch");
  u64 records = load_le64(p + 16);
  u64 index_offset = load_le64(p + size - 8);
  if (index_offset + records * 12 + 8 != size) throw format_error("corrupt table index");
  lvl.offsets.resize(records);
  lvl.nodes.resize(records);
  u32 max_node = 0;
  for (u64 i = 0; i < records; ++i) {
    const u8* ent = p + index_offset + 12 * i;
    lvl.nodes[i] = load_le32(ent);
    lvl.offsets[i] = load_le64(ent + 4);
    if (i > 0 && lvl.nodes[i] <= lvl.nodes[i - 1])
      throw format_error("table records not sorted by node");
    if (lvl.offsets[i] + 8 > index_offset) throw format_error("record offset out of range");
    const u8* rec = p + lvl.offsets[i];
    if (load_le32(rec) != lvl.nodes[i]) throw format_error("index/record node mismatch");
    u64 count = load_le32(rec + 4);
    if (lvl.offsets[i] + 8 + count * kTableEntryBytes > index_offset)
      throw format_error("record overruns the index");
    max_node = std::max(max_node, lvl.nodes[i]);
  }
  lvl.node_index.assign(records ? max_node + 1 : 0, 0);
  for (u64 i = 0; i < records; ++i) lvl.node_index[lvl.nodes[i]] = static_cast<u32>(i + 1);
  lvl.present = true;
  if (h == k_) {
    total_ = 0;
    for (u64 i = 0; i < records; ++i) {
      const u8* rec = p + lvl.offsets[i];
      u32 count = load_le32(rec + 4);
      RecordView view(rec + 8, lvl.nodes[i], count);
      total_ = checked_add(total_, view.total());
    }
  }
}

RecordView CountTable::record(int h, u32 node) const {
  if (h < 1 || h > k_ || !levels_[h].present) return {};
  const Level& lvl = levels_[h];
  if (node >= lvl.node_index.size() || lvl.node_index[node] == 0) return {};
  u64 off = lvl.offsets[lvl.node_index[node] - 1];
  const u8* rec = lvl.src.data() + off;
  return RecordView(rec + 8, node, load_le32(rec + 4));
}

u128 CountTable::occ(u64 colored_key, u32 node) const {
  int h = treelet_of_key(colored_key).size();
  RecordView rec = record(h, node);
  if (rec.empty()) return 0;
  auto i = rec.find(colored_key);
  return i ? rec.raw(*i) : 0;
}

u128 CountTable::occ_total(u32 node) const { return record(k_, node).total(); }

u64 CountTable::sample_colored(u32 node, Rng& rng) const {
  RecordView rec = record(k_, node);
  if (rec.empty()) throw std::runtime_error("empty record: no treelets rooted at node");
  u128 r = uniform_below(rng, rec.total()) + 1;
  return rec.key(rec.first_cum_at_least(r));
}

u128 CountTable::total_treelets() const { return total_; }

std::map<TreeletCode, u128> CountTable::shape_totals() const {
  std::map<TreeletCode, u128> out;
  for_each_record(k_, [&](const RecordView& rec) {
    u32 i = 0;
    while (i < rec.size()) {
      TreeletCode t = treelet_of_key(rec.key(i));
      u32 j = i;
      while (j < rec.size() && treelet_of_key(rec.key(j)) == t) ++j;
      u128 run = rec.cum(j - 1) - (i ? rec.cum(i - 1) : 0);
      TreeletCode shape = normalize_shape(t);
      u128& slot = out[shape];
      slot = checked_add(slot, run);
      i = j;
    }
  });
  return out;
}

void CountTable::for_each_record(int h,
                                 const std::function<void(const RecordView&)>& fn) const {
  if (h < 1 || h > k_ || !levels_[h].present) return;
  const Level& lvl = levels_[h];
  for (size_t i = 0; i < lvl.offsets.size(); ++i) {
    const u8* rec = lvl.src.data() + lvl.offsets[i];
    fn(RecordView(rec + 8, lvl.nodes[i], load_le32(rec + 4)));
  }
}

u64 CountTable::record_count(int h) const {
  if (h < 1 || h > k_ || !levels_[h].present) return 0;
  return levels_[h].offsets.size();
}

u64 CountTable::entry_count(int h) const {
  u64 total = 0;
  for_each_record(h, [&](const RecordView& r) { total += r.size(); });
  return total;
}

}  // namespace motif
