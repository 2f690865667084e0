#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace covertext {

// All lengths in bits.
//   kappa        hidden-message length per communication-phase run
//   n_ct         ciphertext length of the mandated scheme
//   v            extractor output bits per ciphertext
//   d            shared-seed length (= seed-phase exchange-rounds)
//   ell_kex      key-exchange message length
//   xi_ske       secret-key ciphertext length (nonce + kappa)
//   max_attempts rejection-sampling budget per ciphertext
struct SecurityParams {
  std::uint32_t kappa = 0;
  std::uint32_t n_ct = 0;
  std::uint32_t v = 0;
  std::uint32_t d = 0;
  std::uint32_t ell_kex = 0;
  std::uint32_t xi_ske = 0;
  std::uint32_t max_attempts = 0;

  std::uint32_t kex_blocks() const { return ell_kex / v; }    // per kex message
  std::uint32_t comm_blocks() const { return xi_ske / v; }    // per hidden message
  std::uint32_t nonce_bits() const { return xi_ske - kappa; }

  // Throws Error(BadConfig) on violation.
  void validate() const;
};

enum class Profile { Desk, Tiny, Bench };

Profile parse_profile(std::string_view name);  // case-insensitive
std::string_view profile_name(Profile p);

SecurityParams resolve_profile(Profile name);

struct ParamProfile {
  Profile name;
  SecurityParams resolved;
};

}  // namespace covertext
