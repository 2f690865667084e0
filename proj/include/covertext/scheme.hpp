#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "covertext/bitstr.hpp"
#include "covertext/group.hpp"
#include "covertext/rng.hpp"

namespace covertext {

struct KeyPair {
  BitStr pk;
  BitStr sk;
};

// The mandated public-key encryption scheme interface. Instances are
// immutable after construction; enc/dec are reentrant and take their own
// randomness source.
class Scheme {
 public:
  virtual ~Scheme() = default;

  const std::string& id() const { return id_; }
  unsigned n_ct() const { return n_ct_; }
  unsigned msg_bits() const { return msg_bits_; }
  bool enumerable() const { return enumerable_; }

  virtual KeyPair gen(RngStream& rng) const = 0;
  virtual BitStr enc(const BitStr& pk, const BitStr& m, RngStream& rng) const = 0;
  // nullopt = decode failure; never throws on malformed-but-sized input
  virtual std::optional<BitStr> dec(const BitStr& sk, const BitStr& c) const = 0;

  // Full equiprobable ciphertext set of m under pk; only for enumerable
  // schemes (every listed ciphertext has probability 1/size).
  virtual std::vector<BitStr> enumerate(const BitStr& pk, const BitStr& m) const;

 protected:
  Scheme(std::string id, unsigned n_ct, unsigned msg_bits, bool enumerable)
      : id_(std::move(id)), n_ct_(n_ct), msg_bits_(msg_bits), enumerable_(enumerable) {}

  std::string id_;
  unsigned n_ct_;
  unsigned msg_bits_;
  bool enumerable_;
};

// ElGamal on the QR subgroup of a safe-prime group, with sign-randomized
// components: c = ((-1)^b1 g^r, (-1)^b2 (m+1)^2 pk^r). The sign trick makes
// each component range over (almost all of) Z_p^*, killing the quadratic
// residue distinguisher; messages embed injectively as (m+1)^2 for
// msg_bits <= ell/2 - 1.
class ElgScheme : public Scheme {
 public:
  ElgScheme(const GroupParams& group, unsigned msg_bits);

  const GroupParams& group() const { return *group_; }

  KeyPair gen(RngStream& rng) const override;
  BitStr enc(const BitStr& pk, const BitStr& m, RngStream& rng) const override;
  std::optional<BitStr> dec(const BitStr& sk, const BitStr& c) const override;
  std::vector<BitStr> enumerate(const BitStr& pk, const BitStr& m) const override;

 private:
  const FixedBasePow& pk_table(const U512& pk) const;
  U512 encode_message(const BitStr& m) const;

  const GroupParams* group_;
  Fp fp_;
  FixedBasePow g_pow_;
  U512 exp_sqrt_;  // (p+1)/4
  U512 q_minus_1_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::array<std::uint64_t, 8>, std::unique_ptr<FixedBasePow>> pk_cache_;
  mutable std::vector<std::array<std::uint64_t, 8>> pk_cache_order_;
};

// Test-only scheme with ciphertext min-entropy exactly k per message:
// c = m || nonce || pad(key, m, nonce) with a k-bit uniform nonce and a
// deterministic pad. Flat on 2^k ciphertexts; not semantically secure.
class LowEntropyScheme : public Scheme {
 public:
  LowEntropyScheme(unsigned k, unsigned msg_bits, unsigned n_ct);

  unsigned k() const { return k_; }

  KeyPair gen(RngStream& rng) const override;
  BitStr enc(const BitStr& pk, const BitStr& m, RngStream& rng) const override;
  std::optional<BitStr> dec(const BitStr& sk, const BitStr& c) const override;
  std::vector<BitStr> enumerate(const BitStr& pk, const BitStr& m) const override;

 private:
  BitStr pad_for(const BitStr& key, const BitStr& m, const BitStr& nonce) const;
  unsigned k_;
};

// 8-bit-ciphertext scheme for exact enumeration oracles: 2-bit messages,
// ciphertext uniform over the 64-element residue class c mod 4 == m ^ offset.
class TinyScheme : public Scheme {
 public:
  TinyScheme();

  KeyPair gen(RngStream& rng) const override;
  BitStr enc(const BitStr& pk, const BitStr& m, RngStream& rng) const override;
  std::optional<BitStr> dec(const BitStr& sk, const BitStr& c) const override;
  std::vector<BitStr> enumerate(const BitStr& pk, const BitStr& m) const override;
};

using CiphertextDecoder = std::function<int(const BitStr&)>;

// The adversarial wrapper: E'.Enc resamples base encryptions up to t times
// until f(c) = 1, returning the last sample on failure; decryption is
// untouched, so correctness is preserved and every output is a genuine base
// ciphertext.
class BiasingScheme : public Scheme {
 public:
  BiasingScheme(std::shared_ptr<const Scheme> base, CiphertextDecoder f, unsigned t);

  KeyPair gen(RngStream& rng) const override;
  BitStr enc(const BitStr& pk, const BitStr& m, RngStream& rng) const override;
  std::optional<BitStr> dec(const BitStr& sk, const BitStr& c) const override;

 private:
  std::shared_ptr<const Scheme> base_;
  CiphertextDecoder f_;
  unsigned t_;
};

std::shared_ptr<const Scheme> lowent_scheme(unsigned k, unsigned msg_bits = 4,
                                            unsigned n_ct = 16);
std::shared_ptr<const Scheme> tiny_scheme();
std::shared_ptr<const Scheme> biasing_wrap(std::shared_ptr<const Scheme> base,
                                           CiphertextDecoder f, unsigned t);

// Scheme registry for config strings: "tiny", "elg:desk512", "elg:p23",
// "elg:tiny16", "lowent:k=6,msg=4,ct=16".
std::shared_ptr<const Scheme> make_scheme(const std::string& spec);

// Message width used by the desk-profile ElGamal instance.
inline constexpr unsigned kDeskMsgBits = 224;

}  // namespace covertext
