#include "covertext/wire.hpp"

#include <fstream>
#include <sstream>

#include "covertext/error.hpp"
#include "covertext/params.hpp"

namespace covertext {

std::vector<std::uint8_t> frame_encode(const TranscriptFrame& frame) {
  std::vector<std::uint8_t> out;
  out.reserve(kWireHeaderBytes + frame.ciphertext.byte_size());
  out.push_back(kWireMagic0);
  out.push_back(kWireMagic1);
  out.push_back(kWireVersion);
  out.push_back(frame.party == Party::P0 ? 0x00 : 0x01);
  for (int s = 24; s >= 0; s -= 8) out.push_back(std::uint8_t(frame.round >> s));
  std::uint32_t len = std::uint32_t(frame.ciphertext.byte_size());
  for (int s = 24; s >= 0; s -= 8) out.push_back(std::uint8_t(len >> s));
  out.insert(out.end(), frame.ciphertext.bytes().begin(), frame.ciphertext.bytes().end());
  return out;
}

std::pair<TranscriptFrame, std::size_t> frame_decode(std::span<const std::uint8_t> data,
                                                     unsigned n_ct) {
  if (data.size() < kWireHeaderBytes) throw Error(Errc::Truncated, "frame header incomplete");
  if (data[0] != kWireMagic0 || data[1] != kWireMagic1)
    throw Error(Errc::BadMagic, "bad frame magic");
  if (data[2] != kWireVersion) throw Error(Errc::BadVersion, "unsupported frame version");
  if (data[3] > 1) throw Error(Errc::BadVersion, "bad direction byte");
  std::uint32_t round = 0, len = 0;
  for (int i = 0; i < 4; i++) round = round << 8 | data[4 + i];
  for (int i = 0; i < 4; i++) len = len << 8 | data[8 + i];
  if (round < 1) throw Error(Errc::BadVersion, "round must be >= 1");
  if (len != (n_ct + 7) / 8)
    throw Error(Errc::BadLength, "payload length does not match ciphertext width");
  if (data.size() < kWireHeaderBytes + len) throw Error(Errc::Truncated, "frame payload incomplete");
  BitStr ct = BitStr::from_bytes(data.subspan(kWireHeaderBytes, len), n_ct);
  TranscriptFrame frame{data[3] == 0 ? Party::P0 : Party::P1, round, Phase::Idle,
                        std::move(ct)};
  return {std::move(frame), kWireHeaderBytes + len};
}

std::string TranscriptHeader::line() const {
  std::ostringstream out;
  out << "profile=" << profile << ", mode=" << mode << ", rngseed=" << rngseed;
  if (!scheme.empty()) out << ", scheme=" << scheme;
  if (!dist.empty()) out << ", dist=" << dist;
  for (const auto& [k, v] : extra) out << ", " << k << "=" << v;
  return out.str();
}

TranscriptHeader TranscriptHeader::parse(const std::string& line) {
  TranscriptHeader h;
  h.profile.clear();
  h.mode.clear();
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t end = line.find(',', pos);
    if (end == std::string::npos) end = line.size();
    std::string item = line.substr(pos, end - pos);
    std::size_t s = item.find_first_not_of(' ');
    if (s != std::string::npos) item = item.substr(s);
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::BadConfig, "bad transcript header item: " + item);
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "profile") h.profile = val;
    else if (key == "mode") h.mode = val;
    else if (key == "rngseed") h.rngseed = std::stoull(val);
    else if (key == "scheme") h.scheme = val;
    else if (key == "dist") h.dist = val;
    else h.extra[key] = val;
    pos = end + 1;
  }
  if (h.profile.empty()) throw Error(Errc::BadConfig, "transcript header missing profile");
  return h;
}

void write_transcript_file(const std::string& path, const TranscriptHeader& header,
                           const Transcript& transcript) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << header.line() << "\n";
  static const char digits[] = "0123456789abcdef";
  for (const auto& frame : transcript.frames()) {
    std::string hex;
    for (std::uint8_t b : frame_encode(frame)) {
      hex.push_back(digits[b >> 4]);
      hex.push_back(digits[b & 0xf]);
    }
    out << hex << "\n";
  }
}

std::pair<TranscriptHeader, Transcript> read_transcript_file(const std::string& path,
                                                             unsigned n_ct) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::Truncated, "empty transcript file");
  TranscriptHeader header = TranscriptHeader::parse(line);
  if (n_ct == 0) n_ct = resolve_profile(parse_profile(header.profile)).n_ct;
  Transcript transcript;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.size() % 2 != 0) throw Error(Errc::Truncated, "odd hex line");
    std::vector<std::uint8_t> raw(line.size() / 2);
    for (std::size_t i = 0; i < raw.size(); i++) {
      auto nib = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw Error(Errc::BadConfig, "bad hex in transcript");
      };
      raw[i] = std::uint8_t(nib(line[2 * i]) << 4 | nib(line[2 * i + 1]));
    }
    auto [frame, used] = frame_decode(raw, n_ct);
    if (used != raw.size()) throw Error(Errc::BadLength, "trailing bytes in frame line");
    transcript.push(std::move(frame));
  }
  return {header, std::move(transcript)};
}

void save_key_file(const std::string& path, const std::string& scheme_id, const BitStr& key) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << "scheme=" << scheme_id << "\n" << key.hex() << "\n";
}

std::pair<std::string, BitStr> load_key_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::string header, hex;
  if (!std::getline(in, header) || !std::getline(in, hex))
    throw Error(Errc::Truncated, "key file incomplete");
  if (header.rfind("scheme=", 0) != 0)
    throw Error(Errc::BadConfig, "key file missing scheme header");
  return {header.substr(7), BitStr::from_hex(hex)};
}

}  // namespace covertext
