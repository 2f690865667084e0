#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covertext/error.hpp"

namespace covertext {

// Fixed-length bit string. Bits are packed most-significant-bit first within
// each byte; bit 0 of the string is the most significant bit of byte 0, so
// the whole string reads as a big-endian integer. Unused trailing bits of the
// last byte are kept zero, which makes equality and ordering plain byte
// comparisons.
class BitStr {
 public:
  BitStr() = default;
  explicit BitStr(std::size_t len_bits)
      : len_(len_bits), bytes_((len_bits + 7) / 8, 0) {}

  static BitStr from_u64(std::uint64_t value, std::size_t len_bits);
  static BitStr from_bytes(std::span<const std::uint8_t> data, std::size_t len_bits);
  // Parses the "len:hex" log encoding.
  static BitStr from_hex(std::string_view text);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }
  std::size_t byte_size() const { return bytes_.size(); }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  bool bit(std::size_t i) const {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
  }
  void set_bit(std::size_t i, bool value) {
    std::uint8_t mask = std::uint8_t(1u << (7 - (i & 7)));
    if (value)
      bytes_[i >> 3] |= mask;
    else
      bytes_[i >> 3] &= std::uint8_t(~mask);
  }

  // 64-bit blocks, MSB-first; the last block is zero-padded on the right.
  std::size_t block64_count() const { return (len_ + 63) / 64; }
  std::uint64_t block64(std::size_t i) const;

  // Big-endian integer value; requires size() <= 64.
  std::uint64_t to_u64() const;

  BitStr slice(std::size_t pos, std::size_t len) const;
  void append(const BitStr& other);

  // Lowercase "len:hex" encoding for logs and transcript files.
  std::string hex() const;

  friend bool operator==(const BitStr& a, const BitStr& b) = default;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint8_t> bytes_;
};

enum class Ordering { Less, Equal, Greater };

// Order of the big-endian integer interpretations. Both inputs must have the
// same length.
Ordering bitstr_cmp(const BitStr& x, const BitStr& y);

}  // namespace covertext
