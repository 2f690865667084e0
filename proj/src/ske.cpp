#include "covertext/ske.hpp"

#include "covertext/chacha.hpp"
#include "covertext/error.hpp"

namespace covertext {

SkeKey ske_gen(const SharedKey& coins) {
  if (coins.key.size() != 256) throw Error(Errc::BadLength, "ske_gen wants 256-bit coins");
  return {coins.key};
}

BitStr SkeCiphertext::concat() const {
  BitStr out = nonce;
  out.append(body);
  return out;
}

SkeCiphertext SkeCiphertext::split(const BitStr& bits, unsigned nonce_bits) {
  if (bits.size() < nonce_bits) throw Error(Errc::BadLength, "ciphertext shorter than nonce");
  return {bits.slice(0, nonce_bits), bits.slice(nonce_bits, bits.size() - nonce_bits)};
}

BitStr prf_stream(const BitStr& key, const BitStr& nonce, std::size_t len_bits) {
  if (key.size() != 256) throw Error(Errc::BadLength, "prf_stream wants a 256-bit key");
  if (nonce.size() > 128) throw Error(Errc::TooLong, "nonce longer than 128 bits");
  if (len_bits > (std::size_t(1) << 20)) throw Error(Errc::TooLong, "stream longer than 2^20 bits");
  if (len_bits == 0) return BitStr(0);

  std::uint8_t k[32];
  for (int i = 0; i < 32; i++) k[i] = key.bytes()[i];
  std::uint8_t n12[12] = {0};
  std::uint32_t counter0 = 0;
  if (nonce.size() <= 96) {
    for (std::size_t i = 0; i < nonce.byte_size(); i++) n12[i] = nonce.bytes()[i];
  } else {
    counter0 = std::uint32_t(nonce.slice(0, 32).to_u64());
    BitStr rest = nonce.slice(32, nonce.size() - 32);
    for (std::size_t i = 0; i < rest.byte_size(); i++) n12[i] = rest.bytes()[i];
  }

  std::size_t nbytes = (len_bits + 7) / 8;
  std::vector<std::uint8_t> out(nbytes);
  std::uint8_t block[64];
  for (std::size_t off = 0; off < nbytes; off += 64) {
    chacha20_block(k, counter0 + std::uint32_t(off / 64), n12, block);
    std::size_t take = std::min<std::size_t>(64, nbytes - off);
    std::copy(block, block + take, out.begin() + off);
  }
  if (len_bits % 8 != 0) out.back() &= std::uint8_t(0xff << (8 - len_bits % 8));
  return BitStr::from_bytes(out, len_bits);
}

SkeCiphertext ske_enc(const SkeKey& key, const BitStr& msg, unsigned nonce_bits,
                      RngStream& rng) {
  if (msg.empty()) throw Error(Errc::BadLength, "empty message");
  BitStr nonce = rng.bitstr(nonce_bits);
  BitStr stream = prf_stream(key.key, nonce, msg.size());
  BitStr body(msg.size());
  for (std::size_t i = 0; i < msg.size(); i++)
    body.set_bit(i, msg.bit(i) ^ stream.bit(i));
  return {nonce, body};
}

BitStr ske_dec(const SkeKey& key, const SkeCiphertext& c) {
  BitStr stream = prf_stream(key.key, c.nonce, c.body.size());
  BitStr msg(c.body.size());
  for (std::size_t i = 0; i < c.body.size(); i++)
    msg.set_bit(i, c.body.bit(i) ^ stream.bit(i));
  return msg;
}

}  // namespace covertext
