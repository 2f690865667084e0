#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "covertext/bitstr.hpp"

namespace covertext {

// Unsigned 512-bit integer, little-endian limbs. Fixed width keeps the
// modular hot path free of allocation; moduli smaller than 512 bits simply
// leave the upper limbs zero.
struct U512 {
  std::array<std::uint64_t, 8> w{};

  static U512 from_u64(std::uint64_t x) {
    U512 r;
    r.w[0] = x;
    return r;
  }
  static U512 from_bits(const BitStr& bits);   // size() <= 512
  static U512 from_decimal(const std::string& text);

  BitStr to_bits(std::size_t len_bits) const;  // throws if value >= 2^len_bits
  std::string to_decimal() const;
  std::uint64_t to_u64() const { return w[0]; }

  bool is_zero() const;
  bool is_odd() const { return w[0] & 1; }
  bool bit(unsigned i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  unsigned bit_length() const;

  friend bool operator==(const U512& a, const U512& b) = default;
};

int u512_cmp(const U512& a, const U512& b);
U512 u512_add(const U512& a, const U512& b);   // throws on overflow
U512 u512_sub(const U512& a, const U512& b);   // throws if a < b
U512 u512_shr1(const U512& a);

// Arithmetic modulo an odd modulus p < 2^512 using Montgomery representation
// with R = 2^512. Elements passed to mul/sqr/pow are in Montgomery form.
class Fp {
 public:
  explicit Fp(const U512& p);

  const U512& p() const { return p_; }

  U512 to_mont(const U512& x) const { return mul(x, r2_); }
  U512 from_mont(const U512& x) const { return mul(x, U512::from_u64(1)); }
  U512 one_mont() const { return r1_; }

  U512 mul(const U512& a, const U512& b) const;
  U512 sqr(const U512& a) const { return mul(a, a); }
  // 4-bit-window exponentiation, Montgomery-form base and result
  U512 pow(const U512& base_mont, const U512& exp) const;

  // Plain-form helpers.
  U512 mulmod(const U512& a, const U512& b) const { return from_mont(mul(to_mont(a), to_mont(b))); }
  U512 powmod(const U512& base, const U512& exp) const { return from_mont(pow(to_mont(base), exp)); }
  U512 addmod(const U512& a, const U512& b) const;
  U512 submod(const U512& a, const U512& b) const;
  U512 invmod(const U512& a) const;  // a^(p-2); p must be prime

 private:
  U512 p_;
  U512 r1_;   // R mod p (Montgomery one)
  U512 r2_;   // R^2 mod p
  std::uint64_t n0inv_ = 0;
};

// Lim-Lee comb for repeated exponentiation of one fixed base. The table has
// 2^window entries; window 12 gives 256 KiB and ~85 multiplies per 512-bit
// exponent.
class FixedBasePow {
 public:
  FixedBasePow(const Fp& fp, const U512& base, unsigned window = 12);
  // base^exp mod p, plain form in and out
  U512 pow(const U512& exp) const;

 private:
  const Fp* fp_;
  unsigned window_;
  unsigned cols_;
  std::vector<U512> table_;  // Montgomery form
};

// Miller-Rabin with deterministically seeded bases (plus base 2).
bool is_probable_prime(const U512& n, int rounds = 40);

class RngStream;

// Uniform value in [0, bound) by rejection over bit_length(bound - 1) bits.
U512 u512_random_below(RngStream& rng, const U512& bound);

}  // namespace covertext
