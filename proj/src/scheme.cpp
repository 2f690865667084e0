#include "covertext/scheme.hpp"

#include <algorithm>

#include "covertext/error.hpp"

namespace covertext {

std::vector<BitStr> Scheme::enumerate(const BitStr&, const BitStr&) const {
  throw Error(Errc::BadConfig, "scheme " + id_ + " is not enumerable");
}

// ---------------------------------------------------------------------------
// ElGamal with sign randomization

namespace {

// Digit-by-digit integer square root (floor).
U512 isqrt(const U512& n) {
  U512 op = n, res;
  unsigned top = n.bit_length();
  if (top == 0) return res;
  U512 one;
  unsigned start = (top - 1) / 2 * 2;
  one.w[start >> 6] = std::uint64_t(1) << (start & 63);
  while (!one.is_zero()) {
    U512 sum = u512_add(res, one);
    if (u512_cmp(op, sum) >= 0) {
      op = u512_sub(op, sum);
      res = u512_add(sum, one);  // res + 2*one
    }
    res = u512_shr1(res);
    one = u512_shr1(u512_shr1(one));
  }
  return res;
}

}  // namespace

ElgScheme::ElgScheme(const GroupParams& group, unsigned msg_bits)
    : Scheme("elg:" + group.name, 2 * group.ell, msg_bits,
             /*enumerable=*/u512_cmp(group.q, U512::from_u64(4096)) <= 0),
      group_(&group),
      fp_(group.p),
      g_pow_(fp_, group.g) {
  if (msg_bits + 1 > group.ell / 2)
    throw Error(Errc::MessageTooLong,
                "msg_bits must be <= ell/2 - 1 for the square encoding");
  // (p+1)/4 = (p-3)/4 + 1, valid since p = 3 (mod 4)
  exp_sqrt_ = u512_add(u512_shr1(u512_shr1(u512_sub(group.p, U512::from_u64(3)))),
                       U512::from_u64(1));
  q_minus_1_ = u512_sub(group.q, U512::from_u64(1));
}

const FixedBasePow& ElgScheme::pk_table(const U512& pk) const {
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto it = pk_cache_.find(pk.w);
  if (it != pk_cache_.end()) return *it->second;
  if (pk_cache_order_.size() >= 8) {
    pk_cache_.erase(pk_cache_order_.front());
    pk_cache_order_.erase(pk_cache_order_.begin());
  }
  auto table = std::make_unique<FixedBasePow>(fp_, pk);
  auto& ref = *table;
  pk_cache_[pk.w] = std::move(table);
  pk_cache_order_.push_back(pk.w);
  return ref;
}

U512 ElgScheme::encode_message(const BitStr& m) const {
  if (m.size() != msg_bits_)
    throw Error(Errc::MessageTooLong, "message must be exactly msg_bits long");
  U512 m1 = u512_add(U512::from_bits(m), U512::from_u64(1));
  // (m+1)^2 < p by the msg_bits bound, so this is also the integer square
  return fp_.mulmod(m1, m1);
}

KeyPair ElgScheme::gen(RngStream& rng) const {
  // x uniform in [1, q-1]; x = q would give pk = 1
  U512 x = u512_add(u512_random_below(rng, q_minus_1_), U512::from_u64(1));
  U512 pk = g_pow_.pow(x);
  return {pk.to_bits(group_->ell), x.to_bits(group_->ell)};
}

BitStr ElgScheme::enc(const BitStr& pk, const BitStr& m, RngStream& rng) const {
  U512 pk_val = U512::from_bits(pk);
  U512 mhat = encode_message(m);
  U512 r = u512_add(u512_random_below(rng, q_minus_1_), U512::from_u64(1));
  bool s1 = rng.coin(), s2 = rng.coin();
  U512 c1 = g_pow_.pow(r);
  U512 c2 = fp_.mulmod(mhat, pk_table(pk_val).pow(r));
  if (s1) c1 = fp_.submod(U512{}, c1);
  if (s2) c2 = fp_.submod(U512{}, c2);
  BitStr out = c1.to_bits(group_->ell);
  out.append(c2.to_bits(group_->ell));
  return out;
}

std::optional<BitStr> ElgScheme::dec(const BitStr& sk, const BitStr& c) const {
  if (c.size() != n_ct_) return std::nullopt;
  U512 c1 = U512::from_bits(c.slice(0, group_->ell));
  U512 c2 = U512::from_bits(c.slice(group_->ell, group_->ell));
  if (c1.is_zero() || c2.is_zero()) return std::nullopt;
  if (u512_cmp(c1, group_->p) >= 0 || u512_cmp(c2, group_->p) >= 0) return std::nullopt;
  U512 x = U512::from_bits(sk);
  // mhat^2 = c2^2 * c1^(p-1-2x); signs vanish under squaring
  U512 e = u512_sub(u512_sub(group_->p, U512::from_u64(1)), u512_add(x, x));
  U512 mhat_sq = fp_.mulmod(fp_.mulmod(c2, c2), fp_.powmod(c1, e));
  // unique square root inside the QR subgroup
  U512 mhat = fp_.powmod(mhat_sq, exp_sqrt_);
  U512 m1 = isqrt(mhat);
  if (!(fp_.mulmod(m1, m1) == mhat)) return std::nullopt;
  if (m1.is_zero()) return std::nullopt;
  U512 m = u512_sub(m1, U512::from_u64(1));
  if (m.bit_length() > msg_bits_) return std::nullopt;
  return m.to_bits(msg_bits_);
}

std::vector<BitStr> ElgScheme::enumerate(const BitStr& pk, const BitStr& m) const {
  if (!enumerable_) return Scheme::enumerate(pk, m);
  U512 pk_val = U512::from_bits(pk);
  U512 mhat = encode_message(m);
  std::vector<BitStr> out;
  U512 gr = U512::from_u64(1);
  std::uint64_t q = group_->q.to_u64();
  for (std::uint64_t r = 1; r < q; r++) {
    gr = fp_.mulmod(gr, group_->g);
    U512 c1 = gr;
    U512 c2 = fp_.mulmod(mhat, fp_.powmod(pk_val, U512::from_u64(r)));
    for (int s1 = 0; s1 < 2; s1++)
      for (int s2 = 0; s2 < 2; s2++) {
        U512 a = s1 ? fp_.submod(U512{}, c1) : c1;
        U512 b = s2 ? fp_.submod(U512{}, c2) : c2;
        BitStr ct = a.to_bits(group_->ell);
        ct.append(b.to_bits(group_->ell));
        out.push_back(std::move(ct));
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Controlled-min-entropy scheme

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

LowEntropyScheme::LowEntropyScheme(unsigned k, unsigned msg_bits, unsigned n_ct)
    : Scheme("lowent:k=" + std::to_string(k), n_ct, msg_bits, k <= 20), k_(k) {
  if (msg_bits == 0 || msg_bits > 64 || n_ct <= msg_bits)
    throw Error(Errc::BadConfig, "lowent wants 1 <= msg_bits <= 64 < n_ct");
  if (k > n_ct - msg_bits || k > 64)
    throw Error(Errc::BadK, "k must be <= n_ct - msg_bits (and <= 64)");
}

KeyPair LowEntropyScheme::gen(RngStream& rng) const {
  BitStr key = rng.bitstr(64);
  return {key, key};
}

BitStr LowEntropyScheme::pad_for(const BitStr& key, const BitStr& m,
                                 const BitStr& nonce) const {
  unsigned pad_bits = n_ct_ - msg_bits_ - k_;
  BitStr pad(pad_bits);
  std::uint64_t h = mix64(key.to_u64() ^ mix64(m.to_u64() ^ 0x9e3779b97f4a7c15ULL) ^
                          mix64(k_ ? nonce.to_u64() : 0));
  for (unsigned i = 0; i < pad_bits; i++) {
    if (i % 64 == 0 && i > 0) h = mix64(h);
    pad.set_bit(i, (h >> (i % 64)) & 1);
  }
  return pad;
}

BitStr LowEntropyScheme::enc(const BitStr& pk, const BitStr& m, RngStream& rng) const {
  if (m.size() != msg_bits_) throw Error(Errc::MessageTooLong, "bad message width");
  BitStr nonce = rng.bitstr(k_);
  BitStr c = m;
  c.append(nonce);
  c.append(pad_for(pk, m, nonce));
  return c;
}

std::optional<BitStr> LowEntropyScheme::dec(const BitStr& sk, const BitStr& c) const {
  if (c.size() != n_ct_) return std::nullopt;
  BitStr m = c.slice(0, msg_bits_);
  BitStr nonce = c.slice(msg_bits_, k_);
  if (!(c.slice(msg_bits_ + k_, n_ct_ - msg_bits_ - k_) == pad_for(sk, m, nonce)))
    return std::nullopt;
  return m;
}

std::vector<BitStr> LowEntropyScheme::enumerate(const BitStr& pk, const BitStr& m) const {
  std::vector<BitStr> out;
  out.reserve(std::size_t(1) << k_);
  for (std::uint64_t n = 0; n < (std::uint64_t(1) << k_); n++) {
    BitStr nonce = k_ ? BitStr::from_u64(n, k_) : BitStr(0);
    BitStr c = m;
    c.append(nonce);
    c.append(pad_for(pk, m, nonce));
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration substrate

TinyScheme::TinyScheme() : Scheme("tiny", 8, 2, true) {}

KeyPair TinyScheme::gen(RngStream& rng) const {
  BitStr key = rng.bitstr(2);
  return {key, key};
}

BitStr TinyScheme::enc(const BitStr& pk, const BitStr& m, RngStream& rng) const {
  if (m.size() != 2) throw Error(Errc::MessageTooLong, "tiny scheme wants 2-bit messages");
  std::uint64_t base = m.to_u64() ^ pk.to_u64();
  std::uint64_t j = rng.below(64);
  return BitStr::from_u64(j << 2 | base, 8);
}

std::optional<BitStr> TinyScheme::dec(const BitStr& sk, const BitStr& c) const {
  if (c.size() != 8) return std::nullopt;
  return BitStr::from_u64((c.to_u64() & 3) ^ sk.to_u64(), 2);
}

std::vector<BitStr> TinyScheme::enumerate(const BitStr& pk, const BitStr& m) const {
  std::uint64_t base = m.to_u64() ^ pk.to_u64();
  std::vector<BitStr> out;
  out.reserve(64);
  for (std::uint64_t j = 0; j < 64; j++)
    out.push_back(BitStr::from_u64(j << 2 | base, 8));
  return out;
}

// ---------------------------------------------------------------------------
// Adversarial biasing wrapper

BiasingScheme::BiasingScheme(std::shared_ptr<const Scheme> base, CiphertextDecoder f,
                             unsigned t)
    : Scheme("biased(" + base->id() + ",t=" + std::to_string(t) + ")", base->n_ct(),
             base->msg_bits(), false),
      base_(std::move(base)),
      f_(std::move(f)),
      t_(t) {
  if (t_ < 1) throw Error(Errc::BadConfig, "biasing_wrap wants t >= 1");
}

KeyPair BiasingScheme::gen(RngStream& rng) const { return base_->gen(rng); }

BitStr BiasingScheme::enc(const BitStr& pk, const BitStr& m, RngStream& rng) const {
  BitStr c;
  for (unsigned i = 0; i < t_; i++) {
    c = base_->enc(pk, m, rng);
    if (f_(c) == 1) return c;
  }
  return c;  // last sample
}

std::optional<BitStr> BiasingScheme::dec(const BitStr& sk, const BitStr& c) const {
  return base_->dec(sk, c);
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Scheme> lowent_scheme(unsigned k, unsigned msg_bits, unsigned n_ct) {
  return std::make_shared<LowEntropyScheme>(k, msg_bits, n_ct);
}

std::shared_ptr<const Scheme> tiny_scheme() { return std::make_shared<TinyScheme>(); }

std::shared_ptr<const Scheme> biasing_wrap(std::shared_ptr<const Scheme> base,
                                           CiphertextDecoder f, unsigned t) {
  return std::make_shared<BiasingScheme>(std::move(base), std::move(f), t);
}

std::shared_ptr<const Scheme> make_scheme(const std::string& spec) {
  if (spec == "tiny") return tiny_scheme();
  if (spec.rfind("elg:", 0) == 0) {
    const GroupParams* gp = find_group(spec.substr(4));
    if (!gp) throw Error(Errc::BadConfig, "unknown group in scheme spec: " + spec);
    unsigned msg_bits = gp->ell / 2 - 1;
    if (gp->name == "desk512") msg_bits = kDeskMsgBits;
    return std::make_shared<ElgScheme>(*gp, msg_bits);
  }
  if (spec.rfind("lowent:", 0) == 0) {
    unsigned k = 6, msg = 4, ct = 16;
    std::string rest = spec.substr(7);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      std::string item = rest.substr(pos, next - pos);
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(Errc::BadConfig, "bad lowent spec");
      std::string key = item.substr(0, eq);
      unsigned val = unsigned(std::stoul(item.substr(eq + 1)));
      if (key == "k") k = val;
      else if (key == "msg") msg = val;
      else if (key == "ct") ct = val;
      else throw Error(Errc::BadConfig, "bad lowent key " + key);
      pos = next + 1;
    }
    return lowent_scheme(k, msg, ct);
  }
  throw Error(Errc::BadConfig, "unknown scheme spec: " + spec);
}

}  // namespace covertext
