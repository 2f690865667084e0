#pragma once

#include <utility>
#include <vector>

#include "covertext/cover.hpp"
#include "covertext/extract.hpp"
#include "covertext/frame.hpp"

namespace covertext {

// The shared public extractor seed, with the transcript provenance of every
// bit. provenance[i] = (party whose ciphertext pair produced bit i, the
// round pair (2j-1, 2j)).
struct Seed {
  BitStr bits;
  HashSeed hash;
  std::vector<std::pair<Party, std::pair<std::uint32_t, std::uint32_t>>> provenance;
};

// GT bits from consecutive non-overlapping round pairs, P0's pair then P1's:
// (GT(c01,c02), GT(c11,c12), GT(c03,c04), ...). Needs d exchange-rounds of
// frames in both directions; d must be even.
BitStr compute_seed_bits(const Transcript& frames, unsigned d);

// compute_seed_bits plus hash-seed derivation and provenance. Seed bits
// shorter than 128 are zero-padded on the right before feeding the hash
// family.
Seed derive_seed(const Transcript& frames, unsigned d);

HashSeed hash_from_seed_bits(const BitStr& bits);

// Min-entropy seed variant: one inner-product block per (plaintext,
// ciphertext) pair, both trimmed/padded to a common multiple-of-v width.
// Requires the cover distribution to declare min-entropy >= k1.
BitStr minentropy_seed(const CoverDist& dist, const Transcript& frames,
                       const std::vector<BitStr>& plaintexts, unsigned k1, unsigned v,
                       std::vector<std::string>* diagnostics = nullptr);

}  // namespace covertext
