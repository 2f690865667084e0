#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "covertext/channel.hpp"
#include "covertext/engine.hpp"
#include "covertext/net.hpp"
#include "covertext/wire.hpp"

namespace covertext {

// Frame-level transport: wire framing over some byte stream.
class FrameStream {
 public:
  virtual ~FrameStream() = default;
  virtual void send_frame(const TranscriptFrame& frame) = 0;
  virtual TranscriptFrame recv_frame(unsigned n_ct) = 0;
};

class ChannelFrameStream : public FrameStream {
 public:
  explicit ChannelFrameStream(std::shared_ptr<ByteChannel> channel)
      : channel_(std::move(channel)) {}
  void send_frame(const TranscriptFrame& frame) override;
  TranscriptFrame recv_frame(unsigned n_ct) override;

 private:
  std::shared_ptr<ByteChannel> channel_;
};

class TcpFrameStream : public FrameStream {
 public:
  explicit TcpFrameStream(TcpConn conn) : conn_(std::move(conn)) {}
  void send_frame(const TranscriptFrame& frame) override;
  TranscriptFrame recv_frame(unsigned n_ct) override;

 private:
  TcpConn conn_;
};

// The eavesdropper's recorder: frames in processing order, flushed to a
// golden-format transcript file.
class FrameTap {
 public:
  FrameTap(std::string path, TranscriptHeader header)
      : path_(std::move(path)), header_(std::move(header)) {}
  void observe(const TranscriptFrame& frame) { transcript_.push(frame); }
  const Transcript& transcript() const { return transcript_; }
  void write() const { write_transcript_file(path_, header_, transcript_); }

 private:
  std::string path_;
  TranscriptHeader header_;
  Transcript transcript_;
};

struct PartySchedule {
  std::vector<BitStr> my_msgs;   // embedded by this party, in order
  std::uint32_t peer_msgs = 0;   // embeddings expected from the peer
  std::uint32_t total_rounds = 0;
};

struct PartyOutcome {
  std::vector<BitStr> recovered;
  std::vector<std::string> diagnostics;
};

// Drives one engine over a frame stream for the full schedule. The tap, when
// present, records sent and received frames in processing order — identical
// to the in-process driver's order, which is what makes tapped TCP runs
// byte-identical to local runs with the same seeds.
PartyOutcome run_party_session(PartyEngine& engine, FrameStream& stream,
                               RngStream& rng, const PartySchedule& schedule,
                               FrameTap* tap = nullptr);

// Passive relay: accepts one connection, forwards both directions to the
// target, and records every complete frame (in completion order) to the tap
// file. Returns the number of frames recorded.
std::size_t eavesdrop_relay(TcpServer& server, const std::string& forward_host,
                            std::uint16_t forward_port, const std::string& record_path,
                            const TranscriptHeader& header, unsigned n_ct);

}  // namespace covertext
