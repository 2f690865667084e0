#pragma once

#include <cstdint>

namespace covertext {

// GF(2^64) with reduction polynomial x^64 + x^4 + x^3 + x + 1.
struct Gf64 {
  std::uint64_t value = 0;

  friend bool operator==(Gf64 a, Gf64 b) = default;
  friend Gf64 operator+(Gf64 a, Gf64 b) { return {a.value ^ b.value}; }
};

Gf64 gf_mul(Gf64 a, Gf64 b);

// Binary fields used blockwise by the inner-product extractor. Supported
// widths: 2, 4, 8, 16, 32. Values live in the low v bits.
std::uint64_t gf_small_mul(std::uint64_t a, std::uint64_t b, unsigned v);

// Low-order bits of the reduction polynomial for width v (the x^v term
// implied). Throws Error(BadV) for unsupported widths.
std::uint64_t gf_small_modulus(unsigned v);

}  // namespace covertext
