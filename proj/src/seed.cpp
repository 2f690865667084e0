#include "covertext/seed.hpp"

#include "covertext/error.hpp"

namespace covertext {

BitStr compute_seed_bits(const Transcript& frames, unsigned d) {
  if (d == 0 || d % 2 != 0) throw Error(Errc::BadConfig, "d must be a positive even number");
  if (frames.rounds_complete(Party::P0) < d || frames.rounds_complete(Party::P1) < d)
    throw Error(Errc::NotEnoughFrames,
                "seed computation wants " + std::to_string(d) + " exchange-rounds");
  auto p0 = frames.by_party(Party::P0);
  auto p1 = frames.by_party(Party::P1);
  BitStr bits(d);
  for (unsigned j = 0; j < d / 2; j++) {
    bits.set_bit(2 * j, gt(p0[2 * j]->ciphertext, p0[2 * j + 1]->ciphertext));
    bits.set_bit(2 * j + 1, gt(p1[2 * j]->ciphertext, p1[2 * j + 1]->ciphertext));
  }
  return bits;
}

HashSeed hash_from_seed_bits(const BitStr& bits) {
  if (bits.size() > 128) throw Error(Errc::BadLength, "seed bits longer than 128");
  BitStr padded = bits;
  if (padded.size() < 128) padded.append(BitStr(128 - padded.size()));
  return seed_from_bits(padded);
}

Seed derive_seed(const Transcript& frames, unsigned d) {
  Seed s;
  s.bits = compute_seed_bits(frames, d);
  s.hash = hash_from_seed_bits(s.bits);
  for (unsigned j = 0; j < d / 2; j++) {
    std::pair<std::uint32_t, std::uint32_t> rounds{2 * j + 1, 2 * j + 2};
    s.provenance.push_back({Party::P0, rounds});
    s.provenance.push_back({Party::P1, rounds});
  }
  return s;
}

BitStr minentropy_seed(const CoverDist& dist, const Transcript& frames,
                       const std::vector<BitStr>& plaintexts, unsigned k1, unsigned v,
                       std::vector<std::string>* diagnostics) {
  if (minentropy_of(dist) < k1)
    throw Error(Errc::EntropyTooLow,
                "cover distribution declares H_inf = " +
                    std::to_string(minentropy_of(dist)) + " < k1 = " + std::to_string(k1));
  if (frames.size() != plaintexts.size())
    throw Error(Errc::ShapeMismatch, "plaintext/ciphertext pairs must align");
  if (frames.empty()) throw Error(Errc::NotEnoughFrames, "no pairs");

  BitStr out(0);
  for (std::size_t i = 0; i < frames.size(); i++) {
    const BitStr& m = plaintexts[i];
    const BitStr& c = frames[i].ciphertext;
    // common width: message width rounded up to a multiple of v
    std::size_t width = (m.size() + v - 1) / v * v;
    BitStr mb = m;
    if (mb.size() < width) mb.append(BitStr(width - mb.size()));
    BitStr cb = c.size() >= width ? c.slice(0, width) : c;
    if (cb.size() < width) cb.append(BitStr(width - cb.size()));
    bool m_zero = true;
    for (std::size_t b = 0; b < mb.size() && m_zero; b++) m_zero = !mb.bit(b);
    if (m_zero && diagnostics)
      diagnostics->push_back("pair " + std::to_string(i) +
                             ": all-zero plaintext contributes a zero block");
    out.append(ip_2ext(mb, cb, v));
  }
  return out;
}

}  // namespace covertext
