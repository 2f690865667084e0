#include "covertext/rng.hpp"

#include "covertext/chacha.hpp"

namespace covertext {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::uint64_t st = seed;
  for (int i = 0; i < 4; i++) {
    std::uint64_t w = splitmix64(st);
    for (int j = 0; j < 8; j++) key_[8 * i + j] = std::uint8_t(w >> (8 * j));
  }
  for (int j = 0; j < 8; j++) nonce_[j] = std::uint8_t(stream >> (8 * j));
  nonce_[8] = nonce_[9] = nonce_[10] = nonce_[11] = 0;
}

void RngStream::refill() {
  chacha20_block(key_, counter_++, nonce_, buf_);
  pos_ = 0;
}

std::uint64_t RngStream::next_u64() {
  if (pos_ + 8 > 64) refill();
  std::uint64_t w = 0;
  for (int j = 0; j < 8; j++) w |= std::uint64_t(buf_[pos_ + j]) << (8 * j);
  pos_ += 8;
  return w;
}

std::uint64_t RngStream::bits(unsigned n) {
  std::uint64_t w = next_u64();
  return n >= 64 ? w : (w & ((std::uint64_t(1) << n) - 1));
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  // rejection from the smallest covering power of two
  unsigned nbits = 64;
  while (nbits > 1 && (std::uint64_t(1) << (nbits - 1)) >= bound) nbits--;
  for (;;) {
    std::uint64_t w = bits(nbits);
    if (w < bound) return w;
  }
}

BitStr RngStream::bitstr(std::size_t len_bits) {
  std::vector<std::uint8_t> raw((len_bits + 7) / 8);
  for (auto& b : raw) {
    if (pos_ >= 64) refill();
    b = buf_[pos_++];
  }
  if (len_bits % 8 != 0 && !raw.empty())
    raw.back() &= std::uint8_t(0xff << (8 - len_bits % 8));
  return BitStr::from_bytes(raw, len_bits);
}

}  // namespace covertext
