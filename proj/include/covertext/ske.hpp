#pragma once

#include "covertext/bitstr.hpp"
#include "covertext/kex.hpp"
#include "covertext/rng.hpp"

namespace covertext {

struct SkeKey {
  BitStr key;  // 256 bits
};

// SKE.Gen with identity coin-to-key map: the extracted shared secret is the
// key.
SkeKey ske_gen(const SharedKey& coins);

// nonce || (msg XOR keystream); total width = nonce_bits + msg width.
struct SkeCiphertext {
  BitStr nonce;
  BitStr body;

  BitStr concat() const;
  static SkeCiphertext split(const BitStr& bits, unsigned nonce_bits);
};

SkeCiphertext ske_enc(const SkeKey& key, const BitStr& msg, unsigned nonce_bits,
                      RngStream& rng);
BitStr ske_dec(const SkeKey& key, const SkeCiphertext& c);

// Deterministic keystream from a 256-bit key and a nonce of up to 128 bits.
// Reference instantiation: ChaCha20 block function (RFC 8439). Nonces up to
// 96 bits map straight onto the ChaCha nonce with block counter starting at
// 0; longer nonces spend their first 32 bits as the initial counter value.
// len_bits <= 2^20.
BitStr prf_stream(const BitStr& key, const BitStr& nonce, std::size_t len_bits);

}  // namespace covertext
