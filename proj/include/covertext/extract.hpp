#pragma once

#include <cstdint>

#include "covertext/bitstr.hpp"
#include "covertext/gf2.hpp"

namespace covertext {

// Seed of the polynomial-evaluation hash family over GF(2^64). Two field
// elements; a == 0 collapses the hash, so seed derivation maps it to 1.
struct HashSeed {
  Gf64 a;
  Gf64 b;

  friend bool operator==(const HashSeed&, const HashSeed&) = default;
};

// Greater-than extractor: 1 iff x >= y as big-endian integers. Equal lengths
// required.
int gt(const BitStr& x, const BitStr& y);

// Strong seeded extractor: split x into 64-bit blocks x_1..x_t (last block
// zero-padded), evaluate H = b + sum_i x_i * a^i in GF(2^64) by Horner, and
// return the low v bits of H. 1 <= v <= 32.
BitStr ext_seeded(const HashSeed& seed, const BitStr& x, unsigned v);

// Inner product over GF(2^v): split both inputs into v-bit blocks and return
// sum_i x_i * y_i. Inputs must have equal length, a multiple of v. Supported
// v: 2, 4, 8, 16, 32.
BitStr ip_2ext(const BitStr& x, const BitStr& y, unsigned v);

// Reinterpret a 128-bit string as a hash seed: a = first 64 bits, b = last
// 64 bits, with the a == 0 resample rule (a becomes 1).
HashSeed seed_from_bits(const BitStr& bits);

}  // namespace covertext
