#include "covertext/mont.hpp"

#include "covertext/error.hpp"
#include "covertext/rng.hpp"

namespace covertext {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
constexpr int L = 8;

}  // namespace

U512 U512::from_bits(const BitStr& bits) {
  if (bits.size() > 512) throw Error(Errc::BadLength, "from_bits wants <= 512 bits");
  U512 r;
  if (bits.size() % 8 == 0) {
    const auto& raw = bits.bytes();
    for (std::size_t i = 0; i < raw.size(); i++) {
      std::size_t pos = raw.size() - 1 - i;  // significance of byte i
      r.w[pos >> 3] |= u64(raw[i]) << (8 * (pos & 7));
    }
    return r;
  }
  for (std::size_t i = 0; i < bits.size(); i++) {
    if (bits.bit(i)) {
      unsigned pos = unsigned(bits.size() - 1 - i);
      r.w[pos >> 6] |= u64(1) << (pos & 63);
    }
  }
  return r;
}

BitStr U512::to_bits(std::size_t len_bits) const {
  if (bit_length() > len_bits)
    throw Error(Errc::BadLength, "value does not fit in " + std::to_string(len_bits) + " bits");
  if (len_bits % 8 == 0) {
    std::vector<std::uint8_t> raw(len_bits / 8);
    for (std::size_t i = 0; i < raw.size(); i++) {
      std::size_t pos = raw.size() - 1 - i;
      raw[i] = std::uint8_t(w[pos >> 3] >> (8 * (pos & 7)));
    }
    return BitStr::from_bytes(raw, len_bits);
  }
  BitStr s(len_bits);
  for (unsigned pos = 0; pos < len_bits && pos < 512; pos++)
    if (bit(pos)) s.set_bit(len_bits - 1 - pos, true);
  return s;
}

bool U512::is_zero() const {
  for (u64 x : w)
    if (x) return false;
  return true;
}

unsigned U512::bit_length() const {
  for (int i = L - 1; i >= 0; i--)
    if (w[i]) return unsigned(64 * i + 64 - __builtin_clzll(w[i]));
  return 0;
}

int u512_cmp(const U512& a, const U512& b) {
  for (int i = L - 1; i >= 0; i--) {
    if (a.w[i] < b.w[i]) return -1;
    if (a.w[i] > b.w[i]) return 1;
  }
  return 0;
}

U512 u512_add(const U512& a, const U512& b) {
  U512 r;
  u64 carry = 0;
  for (int i = 0; i < L; i++) {
    u128 s = (u128)a.w[i] + b.w[i] + carry;
    r.w[i] = (u64)s;
    carry = (u64)(s >> 64);
  }
  if (carry) throw Error(Errc::BadLength, "u512 add overflow");
  return r;
}

U512 u512_sub(const U512& a, const U512& b) {
  U512 r;
  u64 borrow = 0;
  for (int i = 0; i < L; i++) {
    u128 d = (u128)a.w[i] - b.w[i] - borrow;
    r.w[i] = (u64)d;
    borrow = (u64)(d >> 64) & 1;
  }
  if (borrow) throw Error(Errc::BadLength, "u512 sub underflow");
  return r;
}

U512 u512_shr1(const U512& a) {
  U512 r;
  for (int i = 0; i < L; i++) {
    r.w[i] = a.w[i] >> 1;
    if (i + 1 < L) r.w[i] |= a.w[i + 1] << 63;
  }
  return r;
}

U512 U512::from_decimal(const std::string& text) {
  if (text.empty()) throw Error(Errc::BadConfig, "empty decimal");
  U512 r;
  for (char c : text) {
    if (c < '0' || c > '9') throw Error(Errc::BadConfig, "bad decimal digit");
    // r = r*10 + digit
    u64 carry = u64(c - '0');
    for (int i = 0; i < L; i++) {
      u128 cur = (u128)r.w[i] * 10 + carry;
      r.w[i] = (u64)cur;
      carry = (u64)(cur >> 64);
    }
    if (carry) throw Error(Errc::BadConfig, "decimal overflows 512 bits");
  }
  return r;
}

std::string U512::to_decimal() const {
  if (is_zero()) return "0";
  U512 v = *this;
  std::string digits;
  while (!v.is_zero()) {
    // divide by 10
    u64 rem = 0;
    for (int i = L - 1; i >= 0; i--) {
      u128 cur = (u128)rem << 64 | v.w[i];
      v.w[i] = (u64)(cur / 10);
      rem = (u64)(cur % 10);
    }
    digits.push_back(char('0' + rem));
  }
  return std::string(digits.rbegin(), digits.rend());
}

Fp::Fp(const U512& p) : p_(p) {
  if (!p.is_odd() || p.bit_length() < 2)
    throw Error(Errc::BadGroup, "modulus must be odd and > 1");
  // -p^{-1} mod 2^64 by Newton iteration
  u64 inv = 1;
  for (int i = 0; i < 6; i++) inv *= 2 - p.w[0] * inv;
  n0inv_ = u64(0) - inv;
  // R mod p and R^2 mod p by modular doubling from 1
  U512 r = U512::from_u64(1);
  // reduce 1 mod p is 1 since p > 1
  auto dbl = [&](const U512& x) {
    // 2x mod p without overflow: x < p < 2^512
    U512 y;
    u64 carry = 0;
    for (int i = 0; i < L; i++) {
      u64 nc = x.w[i] >> 63;
      y.w[i] = (x.w[i] << 1) | carry;
      carry = nc;
    }
    if (carry || u512_cmp(y, p_) >= 0) {
      // y - p, using the borrow-free path when carry is set
      u64 borrow = 0;
      for (int i = 0; i < L; i++) {
        u128 d = (u128)y.w[i] - p_.w[i] - borrow;
        y.w[i] = (u64)d;
        borrow = (u64)(d >> 64) & 1;
      }
    }
    return y;
  };
  for (int i = 0; i < 512; i++) r = dbl(r);
  r1_ = r;
  for (int i = 0; i < 512; i++) r = dbl(r);
  r2_ = r;
}

U512 Fp::mul(const U512& a, const U512& b) const {
  // CIOS Montgomery multiplication, 8 limbs
  u64 t[L + 2] = {0};
  for (int i = 0; i < L; i++) {
    u128 carry = 0;
    u64 ai = a.w[i];
    for (int j = 0; j < L; j++) {
      u128 cur = (u128)ai * b.w[j] + t[j] + carry;
      t[j] = (u64)cur;
      carry = cur >> 64;
    }
    u128 cur = (u128)t[L] + carry;
    t[L] = (u64)cur;
    t[L + 1] = (u64)(cur >> 64);
    u64 m = t[0] * n0inv_;
    u128 c0 = (u128)m * p_.w[0] + t[0];
    carry = c0 >> 64;
    for (int j = 1; j < L; j++) {
      u128 c = (u128)m * p_.w[j] + t[j] + carry;
      t[j - 1] = (u64)c;
      carry = c >> 64;
    }
    c0 = (u128)t[L] + carry;
    t[L - 1] = (u64)c0;
    t[L] = t[L + 1] + (u64)(c0 >> 64);
    t[L + 1] = 0;
  }
  U512 out;
  u64 borrow = 0;
  u64 r[L];
  for (int j = 0; j < L; j++) {
    u128 d = (u128)t[j] - p_.w[j] - borrow;
    r[j] = (u64)d;
    borrow = (u64)(d >> 64) & 1;
  }
  bool ge = t[L] || !borrow;
  for (int j = 0; j < L; j++) out.w[j] = ge ? r[j] : t[j];
  return out;
}

U512 Fp::pow(const U512& base_mont, const U512& exp) const {
  unsigned nbits = exp.bit_length();
  if (nbits == 0) return r1_;
  // 4-bit window
  U512 win[16];
  win[0] = r1_;
  win[1] = base_mont;
  for (int i = 2; i < 16; i++) win[i] = mul(win[i - 1], base_mont);
  unsigned top = (nbits + 3) / 4;
  U512 acc = r1_;
  bool started = false;
  for (int d = int(top) - 1; d >= 0; d--) {
    if (started)
      for (int s = 0; s < 4; s++) acc = sqr(acc);
    unsigned nib = 0;
    for (int s = 3; s >= 0; s--) {
      unsigned i = unsigned(d) * 4 + unsigned(s);
      nib = nib << 1 | (i < 512 && exp.bit(i) ? 1u : 0u);
    }
    if (nib) acc = started ? mul(acc, win[nib]) : win[nib];
    started = started || nib;
  }
  return started ? acc : r1_;
}

U512 Fp::addmod(const U512& a, const U512& b) const {
  u64 t[L + 1] = {0};
  u64 carry = 0;
  for (int i = 0; i < L; i++) {
    u128 s = (u128)a.w[i] + b.w[i] + carry;
    t[i] = (u64)s;
    carry = (u64)(s >> 64);
  }
  t[L] = carry;
  U512 r;
  u64 borrow = 0;
  u64 d[L];
  for (int i = 0; i < L; i++) {
    u128 x = (u128)t[i] - p_.w[i] - borrow;
    d[i] = (u64)x;
    borrow = (u64)(x >> 64) & 1;
  }
  bool ge = t[L] || !borrow;
  for (int i = 0; i < L; i++) r.w[i] = ge ? d[i] : t[i];
  return r;
}

U512 Fp::submod(const U512& a, const U512& b) const {
  if (u512_cmp(a, b) >= 0) return u512_sub(a, b);
  return u512_sub(u512_add(a, p_), b);
}

U512 Fp::invmod(const U512& a) const {
  return powmod(a, u512_sub(p_, U512::from_u64(2)));
}

FixedBasePow::FixedBasePow(const Fp& fp, const U512& base, unsigned window)
    : fp_(&fp), window_(window) {
  cols_ = (512 + window - 1) / window;
  table_.assign(std::size_t(1) << window, fp.one_mont());
  // table[1<<i] = base^(2^(i*cols)) in Montgomery form
  U512 g = fp.to_mont(base);
  for (unsigned i = 0; i < window; i++) {
    table_[std::size_t(1) << i] = g;
    if (i + 1 < window)
      for (unsigned s = 0; s < cols_; s++) g = fp.sqr(g);
  }
  for (std::size_t u = 3; u < table_.size(); u++) {
    if ((u & (u - 1)) == 0) continue;
    std::size_t low = u & (~u + 1);  // lowest set bit
    table_[u] = fp.mul(table_[low], table_[u ^ low]);
  }
}

U512 FixedBasePow::pow(const U512& exp) const {
  U512 acc = fp_->one_mont();
  bool started = false;
  for (int j = int(cols_) - 1; j >= 0; j--) {
    if (started) acc = fp_->sqr(acc);
    std::size_t u = 0;
    for (unsigned i = 0; i < window_; i++) {
      unsigned pos = i * cols_ + unsigned(j);
      if (pos < 512 && exp.bit(pos)) u |= std::size_t(1) << i;
    }
    if (u) {
      acc = started ? fp_->mul(acc, table_[u]) : table_[u];
      started = true;
    }
  }
  return fp_->from_mont(started ? acc : fp_->one_mont());
}

U512 u512_random_below(RngStream& rng, const U512& bound) {
  if (bound.is_zero()) throw Error(Errc::BadLength, "empty range");
  U512 max = u512_sub(bound, U512::from_u64(1));
  unsigned nbits = max.bit_length();
  if (nbits == 0) return U512{};
  for (;;) {
    U512 c;
    unsigned full = nbits / 64, rest = nbits % 64;
    for (unsigned i = 0; i < full; i++) c.w[i] = rng.next_u64();
    if (rest) c.w[full] = rng.bits(rest);
    if (u512_cmp(c, bound) < 0) return c;
  }
}

bool is_probable_prime(const U512& n, int rounds) {
  static const u64 kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                     31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (n.bit_length() <= 6) {
    u64 v = n.to_u64();
    if (v < 2) return false;
    for (u64 sp : kSmallPrimes) {
      if (v == sp) return true;
      if (v % sp == 0) return false;
    }
    for (u64 f = 73; f * f <= v; f += 2)
      if (v % f == 0) return false;
    return true;
  }
  if (!n.is_odd()) return false;
  for (u64 sp : kSmallPrimes) {
    // n mod sp
    u64 rem = 0;
    for (int i = L - 1; i >= 0; i--) rem = u64(((u128)rem << 64 | n.w[i]) % sp);
    if (rem == 0) return false;
  }
  Fp fp(n);
  U512 n1 = u512_sub(n, U512::from_u64(1));
  U512 d = n1;
  unsigned s = 0;
  while (!d.is_odd()) {
    d = u512_shr1(d);
    s++;
  }
  RngStream rng(0x6d722d626173u, n.w[0]);  // deterministic witnesses
  for (int round = 0; round < rounds; round++) {
    U512 a = round == 0 ? U512::from_u64(2) : [&] {
      U512 c;
      for (int i = 0; i < L; i++) c.w[i] = rng.next_u64();
      // clamp into [2, n-2]: cheap reduction is fine for witness choice
      while (u512_cmp(c, n1) >= 0) c = u512_shr1(c);
      if (c.bit_length() < 2) c = U512::from_u64(2);
      return c;
    }();
    U512 x = fp.powmod(a, d);
    if (x == U512::from_u64(1) || x == n1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; r++) {
      x = fp.mulmod(x, x);
      if (x == n1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace covertext
