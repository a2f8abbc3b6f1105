#pragma once
// Shared scalar helpers: 128-bit integers, checked arithmetic, deterministic
// uniform draws, little-endian packing.

#include <cstdint>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace motif {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

using Rng = std::mt19937_64;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Counts are exact; overflow is a hard error, never saturation.
inline u128 checked_add(u128 a, u128 b) {
  u128 r = a + b;
  if (r < a) throw std::overflow_error("128-bit count overflow in add");
  return r;
}

inline u128 checked_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  u128 r = a * b;
  if (r / a != b) throw std::overflow_error("128-bit count overflow in multiply");
  return r;
}

std::string dec_string(u128 v);
std::string hex_string(u128 v);
u128 parse_dec_u128(std::string_view s);
u128 parse_hex_u128(std::string_view s);

inline double to_double(u128 v) {
  return static_cast<double>(static_cast<u64>(v >> 64)) * 18446744073709551616.0 +
         static_cast<double>(static_cast<u64>(v));
}

// Unbiased uniform draw in [0, n), n > 0, by rejection from the top.
inline u64 uniform_below(Rng& rng, u64 n) {
  if (n == 0) throw std::invalid_argument("uniform draw from an empty range");
  u64 min = (0 - n) % n;
  for (;;) {
    u64 r = rng();
    if (r >= min) return r % n;
  }
}

inline u128 uniform_below(Rng& rng, u128 n) {
  if (n == 0) throw std::invalid_argument("uniform draw from an empty range");
  u128 min = (static_cast<u128>(0) - n) % n;
  for (;;) {
    u128 r = (static_cast<u128>(rng()) << 64) | rng();
    if (r >= min) return r % n;
  }
}

inline double uniform01(Rng& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline void store_le16(u8* p, u16 v) { std::memcpy(p, &v, 2); }
inline void store_le32(u8* p, u32 v) { std::memcpy(p, &v, 4); }
inline void store_le64(u8* p, u64 v) { std::memcpy(p, &v, 8); }
inline void store_le128(u8* p, u128 v) { std::memcpy(p, &v, 16); }
inline void store_le48(u8* p, u64 v) {
  for (int i = 0; i < 6; ++i) p[i] = static_cast<u8>(v >> (8 * i));
}
inline u16 load_le16(const u8* p) { u16 v; std::memcpy(&v, p, 2); return v; }
inline u32 load_le32(const u8* p) { u32 v; std::memcpy(&v, p, 4); return v; }
inline u64 load_le64(const u8* p) { u64 v; std::memcpy(&v, p, 8); return v; }
inline u128 load_le128(const u8* p) { u128 v; std::memcpy(&v, p, 16); return v; }
inline u64 load_le48(const u8* p) {
  u64 v = 0;
  for (int i = 0; i < 6; ++i) v |= static_cast<u64>(p[i]) << (8 * i);
  return v;
}

static_assert(sizeof(u128) == 16);

}  // namespace motif
