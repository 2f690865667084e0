#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "covertext/frame.hpp"

namespace covertext {

// On-wire frame: magic "SC" (0x53 0x43), version 0x01, direction byte
// (0x00 P0->P1, 0x01 P1->P0), 4-byte big-endian round, 4-byte big-endian
// payload byte count, ciphertext bytes. No phase information ever crosses
// the wire.
inline constexpr std::uint8_t kWireMagic0 = 0x53;
inline constexpr std::uint8_t kWireMagic1 = 0x43;
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::size_t kWireHeaderBytes = 12;

std::vector<std::uint8_t> frame_encode(const TranscriptFrame& frame);

// Decodes one frame from the front of `data`; n_ct gives the ciphertext bit
// width (the wire carries only the byte count). Returns the frame and the
// number of bytes consumed. Throws BadMagic/BadVersion/Truncated. The phase
// tag of a decoded frame is Idle: the wire carries none.
std::pair<TranscriptFrame, std::size_t> frame_decode(std::span<const std::uint8_t> data,
                                                     unsigned n_ct);

// Transcript files: one header line of comma-separated key=value pairs
// ("profile=..., mode=..., rngseed=..." plus scheme/dist metadata), then one
// lowercase-hex wire frame per line.
struct TranscriptHeader {
  std::string profile = "desk";
  std::string mode = "honest";
  std::uint64_t rngseed = 0;
  std::string scheme;
  std::string dist;
  std::map<std::string, std::string> extra;

  std::string line() const;
  static TranscriptHeader parse(const std::string& line);
};

void write_transcript_file(const std::string& path, const TranscriptHeader& header,
                           const Transcript& transcript);
std::pair<TranscriptHeader, Transcript> read_transcript_file(const std::string& path,
                                                             unsigned n_ct = 0);

// Key files: "scheme=<id>" header line, then the hex BitStr.
void save_key_file(const std::string& path, const std::string& scheme_id, const BitStr& key);
std::pair<std::string, BitStr> load_key_file(const std::string& path);

}  // namespace covertext
