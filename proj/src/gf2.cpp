#include "covertext/gf2.hpp"

#include "covertext/error.hpp"

namespace covertext {

namespace {

using u64 = std::uint64_t;

struct U128 {
  u64 lo = 0, hi = 0;
  U128 operator^(U128 o) const { return {lo ^ o.lo, hi ^ o.hi}; }
  U128 shl(unsigned n) const {  // n < 64
    if (n == 0) return *this;
    return {lo << n, hi << n | lo >> (64 - n)};
  }
};

// Carry-less 64x64 -> 128 product via 4-bit windows of a.
U128 clmul64(u64 a, u64 b) {
  U128 table[16];
  table[0] = {0, 0};
  table[1] = {b, 0};
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2].shl(1);
    table[i + 1] = table[i] ^ table[1];
  }
  U128 acc{0, 0};
  for (int nib = 15; nib >= 0; nib--) {
    acc = acc.shl(4);
    acc = acc ^ table[(a >> (4 * nib)) & 0xf];
  }
  return acc;
}

constexpr u64 kPoly64Low = 0x1b;  // x^4 + x^3 + x + 1

}  // namespace

Gf64 gf_mul(Gf64 a, Gf64 b) {
  U128 prod = clmul64(a.value, b.value);
  // Fold the high half twice; the reduction polynomial has degree gap 60,
  // so one fold leaves at most 4 overflow bits.
  U128 fold = clmul64(prod.hi, kPoly64Low);
  u64 lo = prod.lo ^ fold.lo;
  u64 hi = fold.hi;  // < 2^4
  lo ^= clmul64(hi, kPoly64Low).lo;
  return {lo};
}

std::uint64_t gf_small_modulus(unsigned v) {
  switch (v) {
    case 2: return 0x3;        // x^2 + x + 1
    case 4: return 0x3;        // x^4 + x + 1
    case 8: return 0x1b;       // x^8 + x^4 + x^3 + x + 1
    case 16: return 0x2b;      // x^16 + x^5 + x^3 + x + 1
    case 32: return 0x8d;      // x^32 + x^7 + x^3 + x^2 + 1
    default:
      throw Error(Errc::BadV, "no field table for v=" + std::to_string(v));
  }
}

std::uint64_t gf_small_mul(std::uint64_t a, std::uint64_t b, unsigned v) {
  u64 mod = gf_small_modulus(v);
  u64 mask = (v >= 64) ? ~u64(0) : ((u64(1) << v) - 1);
  a &= mask;
  b &= mask;
  u64 r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> v & 1) a = (a ^ mod) & mask;
  }
  return r & mask;
}

}  // namespace covertext
