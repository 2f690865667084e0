#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "covertext/cover.hpp"
#include "covertext/engine.hpp"
#include "covertext/group.hpp"
#include "covertext/params.hpp"
#include "covertext/scheme.hpp"

namespace covertext {

// Raw run configuration, as read from flags and key=value config files.
// COVERTEXT_RNG_SEED in the environment overrides rng_seed.
struct RunConfig {
  std::string profile = "desk";
  std::string scheme;                // empty = profile default
  std::string dist = "constant:0";
  std::string mode = "subliminal";
  std::uint64_t rng_seed = 1;
  std::string role = "p0";
  std::string peer = "local";
  std::vector<std::string> msgs;     // hidden messages, hex
  std::uint32_t expect = 0;          // embeddings expected from the peer
  std::uint32_t trailing = 0;
  std::string transcript_out;
  std::string keys_out;              // directory for pk.hex / sk.hex dumps
  std::string group_file;            // ElGamal group override

  void merge_file(const std::string& path);  // key=value lines
  void apply_env();
};

struct ResolvedRun {
  Profile profile;
  SecurityParams params;
  std::shared_ptr<const Scheme> scheme;
  const GroupParams* kex_group = nullptr;
  std::shared_ptr<const CoverDist> dist;
  Mode mode;
  std::uint64_t rng_seed = 0;
  Party role;
  std::vector<BitStr> messages;
  std::uint32_t expect = 0;
  std::uint32_t trailing = 0;

  SessionSpec session_spec(Party msg_sender) const;
};

ResolvedRun resolve_config(const RunConfig& cfg);

// Accepts "len:hex" or a bare hex string of exactly len_bits.
BitStr parse_message_hex(const std::string& text, unsigned len_bits);

// Default scheme spec and key-exchange group for a profile.
std::string default_scheme_spec(Profile p);
const GroupParams& default_kex_group(Profile p);

}  // namespace covertext
