#include "covertext/session.hpp"

#include <mutex>
#include <thread>

#include "covertext/error.hpp"

namespace covertext {

void ChannelFrameStream::send_frame(const TranscriptFrame& frame) {
  channel_->send(frame_encode(frame));
}

TranscriptFrame ChannelFrameStream::recv_frame(unsigned n_ct) {
  std::vector<std::uint8_t> buf(kWireHeaderBytes + (n_ct + 7) / 8);
  channel_->recv_exact(buf.data(), buf.size());
  return frame_decode(buf, n_ct).first;
}

void TcpFrameStream::send_frame(const TranscriptFrame& frame) {
  conn_.send_all(frame_encode(frame));
}

TranscriptFrame TcpFrameStream::recv_frame(unsigned n_ct) {
  std::vector<std::uint8_t> buf(kWireHeaderBytes + (n_ct + 7) / 8);
  conn_.recv_exact(buf.data(), buf.size());
  return frame_decode(buf, n_ct).first;
}

PartyOutcome run_party_session(PartyEngine& engine, FrameStream& stream,
                               RngStream& rng, const PartySchedule& schedule,
                               FrameTap* tap) {
  unsigned n_ct = engine.params().n_ct;
  PartyOutcome outcome;
  std::size_t next_msg = 0;
  std::uint32_t peer_left = schedule.peer_msgs;

  auto hooks = [&] {
    // embed our next message, or arm for the peer's, as soon as legal
    if (engine.mode() != Mode::Subliminal) return;
    if (engine.phase() == EnginePhase::Idle && engine.key_established()) {
      if (next_msg < schedule.my_msgs.size()) {
        engine.embed(schedule.my_msgs[next_msg], rng);
        next_msg++;
      } else if (peer_left > 0) {
        engine.expect_embedding();
      }
    }
  };
  auto drain = [&] {
    for (auto& ev : engine.take_events())
      if (ev.kind == EngineEvent::Kind::MessageRecovered) {
        outcome.recovered.push_back(ev.payload);
        if (peer_left > 0) peer_left--;
      }
  };

  for (std::uint32_t round = 1; round <= schedule.total_rounds; round++) {
    if (engine.role() == Party::P0) {
      if (round > 1) {
        TranscriptFrame in = stream.recv_frame(n_ct);
        if (tap) tap->observe(in);
        engine.ingest(in);
      }
      hooks();
      TranscriptFrame out = engine.produce(rng);
      if (tap) tap->observe(out);
      stream.send_frame(out);
    } else {
      TranscriptFrame in = stream.recv_frame(n_ct);
      if (tap) tap->observe(in);
      engine.ingest(in);
      hooks();
      TranscriptFrame out = engine.produce(rng);
      if (tap) tap->observe(out);
      stream.send_frame(out);
    }
    drain();
  }
  // P0 still needs the peer's final frame of the last round
  if (engine.role() == Party::P0) {
    TranscriptFrame in = stream.recv_frame(n_ct);
    if (tap) tap->observe(in);
    engine.ingest(in);
    drain();
  }
  for (const auto& d : engine.diagnostics()) outcome.diagnostics.push_back(d);
  return outcome;
}

std::size_t eavesdrop_relay(TcpServer& server, const std::string& forward_host,
                            std::uint16_t forward_port, const std::string& record_path,
                            const TranscriptHeader& header, unsigned n_ct) {
  TcpConn a = server.accept_one();
  TcpConn b = tcp_connect(forward_host, forward_port);
  FrameTap tap(record_path, header);
  std::mutex mu;
  std::size_t frame_bytes = kWireHeaderBytes + (n_ct + 7) / 8;

  // Recording happens before forwarding, so the tap order matches the
  // protocol's strict alternation.
  auto pump = [&](TcpConn& from, TcpConn& to) {
    std::vector<std::uint8_t> buf(frame_bytes);
    try {
      for (;;) {
        from.recv_exact(buf.data(), buf.size());
        auto [frame, used] = frame_decode(buf, n_ct);
        {
          std::lock_guard<std::mutex> lock(mu);
          tap.observe(frame);
        }
        to.send_all(buf);
      }
    } catch (const Error&) {
      // EOF or peer shutdown ends the session
    }
    from.close();
    to.close();
  };
  std::thread backward([&] { pump(b, a); });
  pump(a, b);
  backward.join();
  tap.write();
  return tap.transcript().size();
}

}  // namespace covertext
