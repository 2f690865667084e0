#include "covertext/bitstr.hpp"

#include <algorithm>
#include <cstring>

namespace covertext {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitStr BitStr::from_u64(std::uint64_t value, std::size_t len_bits) {
  if (len_bits > 64) throw Error(Errc::BadLength, "from_u64 wants len <= 64");
  if (len_bits < 64 && (value >> len_bits) != 0)
    throw Error(Errc::BadLength, "value does not fit in " + std::to_string(len_bits) + " bits");
  BitStr s(len_bits);
  for (std::size_t i = 0; i < len_bits; i++)
    s.set_bit(i, (value >> (len_bits - 1 - i)) & 1);
  return s;
}

BitStr BitStr::from_bytes(std::span<const std::uint8_t> data, std::size_t len_bits) {
  if (data.size() != (len_bits + 7) / 8)
    throw Error(Errc::BadLength, "byte count does not match bit length");
  BitStr s(len_bits);
  std::copy(data.begin(), data.end(), s.bytes_.begin());
  // clear unused trailing bits
  if (len_bits % 8 != 0 && !s.bytes_.empty())
    s.bytes_.back() &= std::uint8_t(0xff << (8 - len_bits % 8));
  return s;
}

BitStr BitStr::from_hex(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::BadLength, "missing ':' in hex bitstring");
  std::size_t len_bits = 0;
  for (char c : text.substr(0, colon)) {
    if (c < '0' || c > '9') throw Error(Errc::BadLength, "bad length prefix");
    len_bits = len_bits * 10 + std::size_t(c - '0');
  }
  std::string_view digits = text.substr(colon + 1);
  if (digits.size() != 2 * ((len_bits + 7) / 8))
    throw Error(Errc::BadLength, "hex digit count does not match length");
  std::vector<std::uint8_t> raw(digits.size() / 2);
  for (std::size_t i = 0; i < raw.size(); i++) {
    int hi = hex_digit(digits[2 * i]), lo = hex_digit(digits[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::BadLength, "bad hex digit");
    raw[i] = std::uint8_t(hi << 4 | lo);
  }
  return from_bytes(raw, len_bits);
}

std::uint64_t BitStr::block64(std::size_t i) const {
  std::uint64_t block = 0;
  std::size_t base = i * 8;
  for (std::size_t j = 0; j < 8; j++) {
    std::uint8_t byte = (base + j) < bytes_.size() ? bytes_[base + j] : 0;
    block = block << 8 | byte;
  }
  return block;
}

std::uint64_t BitStr::to_u64() const {
  if (len_ > 64) throw Error(Errc::BadLength, "to_u64 wants len <= 64");
  if (len_ == 0) return 0;
  return block64(0) >> (64 - len_);
}

BitStr BitStr::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > len_) throw Error(Errc::BadLength, "slice out of range");
  BitStr s(len);
  for (std::size_t i = 0; i < len; i++) s.set_bit(i, bit(pos + i));
  return s;
}

void BitStr::append(const BitStr& other) {
  std::size_t old = len_;
  len_ += other.len_;
  bytes_.resize((len_ + 7) / 8, 0);
  if (old % 8 == 0) {
    std::copy(other.bytes_.begin(), other.bytes_.end(), bytes_.begin() + old / 8);
  } else {
    for (std::size_t i = 0; i < other.len_; i++) set_bit(old + i, other.bit(i));
  }
}

std::string BitStr::hex() const {
  static const char digits[] = "0123456789abcdef";
  std::string out = std::to_string(len_);
  out.push_back(':');
  for (std::uint8_t b : bytes_) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

Ordering bitstr_cmp(const BitStr& x, const BitStr& y) {
  if (x.size() != y.size())
    throw Error(Errc::LengthMismatch, "bitstr_cmp wants equal lengths");
  if (x.byte_size() == 0) return Ordering::Equal;
  int c = std::memcmp(x.bytes().data(), y.bytes().data(), x.byte_size());
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

}  // namespace covertext
