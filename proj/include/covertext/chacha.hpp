#pragma once

#include <cstdint>

namespace covertext {

// ChaCha20 block function per RFC 8439: 32-byte key, 32-bit block counter,
// 12-byte nonce, 64-byte keystream block out.
void chacha20_block(const std::uint8_t key[32], std::uint32_t counter,
                    const std::uint8_t nonce[12], std::uint8_t out[64]);

}  // namespace covertext
