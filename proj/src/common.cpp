#include "motif/common.hpp"

#include <algorithm>

namespace motif {

std::string dec_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string hex_string(u128 v) {
  static const char* digits = "0123456789abcdef";
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(digits[static_cast<int>(v & 0xf)]);
    v >>= 4;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 parse_dec_u128(std::string_view s) {
  if (s.empty()) throw parse_error("empty decimal literal");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw parse_error("bad decimal digit in '" + std::string(s) + "'");
    u128 next = v * 10 + static_cast<u128>(c - '0');
    if (next < v) throw std::overflow_error("decimal literal exceeds 128 bits");
    v = next;
  }
  return v;
}

u128 parse_hex_u128(std::string_view s) {
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  if (s.empty() || s.size() > 32) throw parse_error("bad hex literal");
  u128 v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw parse_error("bad hex digit in '" + std::string(s) + "'");
    v = (v << 4) | static_cast<u128>(d);
  }
  return v;
}

}  // namespace motif
