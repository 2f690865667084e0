#pragma once

#include <cstdint>

#include "covertext/bitstr.hpp"

namespace covertext {

// Deterministic randomness source: a ChaCha20 keystream keyed from a 64-bit
// master seed, with independent substreams selected by a 64-bit stream id.
// Byte-for-byte reproducible across platforms, which is what golden
// transcripts and frozen statistical tests rely on.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // n uniform bits in the low end of the result, n <= 64
  std::uint64_t bits(unsigned n);
  bool coin() { return bits(1) != 0; }
  // uniform in [0, bound), bound >= 1
  std::uint64_t below(std::uint64_t bound);
  BitStr bitstr(std::size_t len_bits);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint8_t key_[32];
  std::uint8_t nonce_[12];
  std::uint32_t counter_ = 0;
  std::uint8_t buf_[64];
  unsigned pos_ = 64;
};

}  // namespace covertext
