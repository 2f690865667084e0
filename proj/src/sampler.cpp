#include "covertext/sampler.hpp"

#include "covertext/error.hpp"

namespace covertext {

SampledCiphertext rejection_sample(const Scheme& scheme, const BitStr& pk,
                                   const BitStr& m, const HashSeed& hash,
                                   const BitStr& target, std::uint64_t budget,
                                   RngStream& rng) {
  if (budget < 1) throw Error(Errc::BadConfig, "budget must be >= 1");
  unsigned v = unsigned(target.size());
  for (std::uint64_t attempt = 1; attempt <= budget; attempt++) {
    BitStr c = scheme.enc(pk, m, rng);
    if (ext_seeded(hash, c, v) == target) return {std::move(c), attempt};
  }
  throw BudgetExhaustedError(budget);
}

BitStr recombine(const HashSeed& hash, std::span<const BitStr> ciphertexts, unsigned v) {
  BitStr out(0);
  for (const BitStr& c : ciphertexts) out.append(ext_seeded(hash, c, v));
  return out;
}

}  // namespace covertext
