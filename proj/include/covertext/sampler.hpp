#pragma once

#include <cstdint>
#include <span>

#include "covertext/extract.hpp"
#include "covertext/scheme.hpp"

namespace covertext {

struct SampledCiphertext {
  BitStr ciphertext;
  std::uint64_t attempts = 0;
};

// Rejection sampler: re-encrypt m until the seeded extractor of the
// ciphertext equals the target block. The accepted ciphertext is a genuine
// encryption of m whose distribution is exactly the base encryption
// distribution conditioned on the extractor value. Throws
// BudgetExhaustedError after `budget` misses.
SampledCiphertext rejection_sample(const Scheme& scheme, const BitStr& pk,
                                   const BitStr& m, const HashSeed& hash,
                                   const BitStr& target, std::uint64_t budget,
                                   RngStream& rng);

// Concatenation of the extractor over each frame's ciphertext; inverse of
// blockwise embedding.
BitStr recombine(const HashSeed& hash, std::span<const BitStr> ciphertexts, unsigned v);

}  // namespace covertext
