#include "covertext/extract.hpp"

#include "covertext/error.hpp"

namespace covertext {

int gt(const BitStr& x, const BitStr& y) {
  return bitstr_cmp(x, y) == Ordering::Less ? 0 : 1;
}

BitStr ext_seeded(const HashSeed& seed, const BitStr& x, unsigned v) {
  if (v < 1 || v > 32) throw Error(Errc::BadV, "ext_seeded wants 1 <= v <= 32");
  if (x.empty()) throw Error(Errc::BadLength, "ext_seeded wants nonempty input");
  // Horner: acc = (..((x_t)*a + x_{t-1})*a ..)*a = sum_i x_i a^i
  Gf64 acc{0};
  std::size_t t = x.block64_count();
  for (std::size_t i = t; i-- > 0;)
    acc = gf_mul(acc + Gf64{x.block64(i)}, seed.a);
  std::uint64_t h = (acc + seed.b).value;
  std::uint64_t mask = (v >= 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << v) - 1);
  return BitStr::from_u64(h & mask, v);
}

BitStr ip_2ext(const BitStr& x, const BitStr& y, unsigned v) {
  gf_small_modulus(v);  // validates v
  if (x.size() != y.size())
    throw Error(Errc::LengthMismatch, "ip_2ext wants equal lengths");
  if (x.size() % v != 0)
    throw Error(Errc::BadV, "ip_2ext wants length a multiple of v");
  std::uint64_t acc = 0;
  for (std::size_t pos = 0; pos < x.size(); pos += v)
    acc ^= gf_small_mul(x.slice(pos, v).to_u64(), y.slice(pos, v).to_u64(), v);
  return BitStr::from_u64(acc, v);
}

HashSeed seed_from_bits(const BitStr& bits) {
  if (bits.size() != 128) throw Error(Errc::BadLength, "seed_from_bits wants 128 bits");
  HashSeed s{Gf64{bits.block64(0)}, Gf64{bits.block64(1)}};
  if (s.a.value == 0) s.a.value = 1;
  return s;
}

}  // namespace covertext
