#pragma once

#include "covertext/bitstr.hpp"
#include "covertext/group.hpp"
#include "covertext/params.hpp"
#include "covertext/rng.hpp"

namespace covertext {

// One-round Diffie-Hellman with uniform-looking messages: the party sends
// (-1)^sign * g^x encoded as an ell-bit string. Random sign plus the
// near-power-of-two modulus make the message statistically close to a
// uniform ell-bit string.
struct KexState {
  U512 exponent;             // secret x in [1, q-1]
  bool sign = false;
  BitStr sent;               // ell_kex bits
  const GroupParams* group = nullptr;
};

std::pair<KexState, BitStr> kex_round1(const SecurityParams& params,
                                       const GroupParams& group, RngStream& rng);

struct SharedKey {
  BitStr key;                // 256 bits
  bool degenerate = false;   // peer element was the identity
};

// Completes the exchange: shared group element (peer^2)^x = g^{2xx'} (the
// squaring cancels both signs), then a fixed public extraction to 256 bits.
SharedKey kex_finish(const KexState& state, const BitStr& peer_msg);

}  // namespace covertext
