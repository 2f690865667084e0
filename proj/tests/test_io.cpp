#include <doctest.h>

#include <cstdio>
#include <thread>

#include "covertext/channel.hpp"
#include "covertext/config.hpp"
#include "covertext/net.hpp"
#include "covertext/session.hpp"
#include "covertext/wire.hpp"

using namespace covertext;

TEST_CASE("wire frames encode to the documented layout") {
  TranscriptFrame frame{Party::P1, 9, Phase::Comm, BitStr::from_u64(0xAB, 8)};
  auto bytes = frame_encode(frame);
  REQUIRE(bytes.size() == 13);  // 2 magic + 1 version + 1 direction + 4 round + 4 length + 1
  CHECK(bytes[0] == 0x53);
  CHECK(bytes[1] == 0x43);
  CHECK(bytes[2] == 0x01);
  CHECK(bytes[3] == 0x01);
  CHECK(bytes[7] == 9);
  CHECK(bytes[11] == 1);
  CHECK(bytes[12] == 0xAB);

  auto [back, used] = frame_decode(bytes, 8);
  CHECK(used == 13);
  CHECK(back.party == Party::P1);
  CHECK(back.round == 9);
  CHECK(back.ciphertext == frame.ciphertext);
  CHECK(back.phase == Phase::Idle);  // no phase crosses the wire
}

TEST_CASE("frame decoding rejects malformed input") {
  TranscriptFrame frame{Party::P0, 1, Phase::Seed, BitStr::from_u64(0x7, 8)};
  auto bytes = frame_encode(frame);

  auto corrupt = bytes;
  corrupt[0] = 0x00;
  CHECK_THROWS_AS(frame_decode(corrupt, 8), Error);
  corrupt = bytes;
  corrupt[2] = 0x02;
  CHECK_THROWS_AS(frame_decode(corrupt, 8), Error);
  CHECK_THROWS_AS(frame_decode(std::span(bytes).subspan(0, 5), 8), Error);
  CHECK_THROWS_AS(frame_decode(std::span(bytes).subspan(0, 12), 8), Error);
  CHECK_THROWS_AS(frame_decode(bytes, 16), Error);  // width mismatch
}

TEST_CASE("frame round-trip property") {
  RngStream rng(123, 0);
  for (int i = 0; i < 10000; i++) {
    TranscriptFrame f{rng.coin() ? Party::P0 : Party::P1,
                      std::uint32_t(rng.below(100000) + 1), Phase::Idle, rng.bitstr(1024)};
    auto bytes = frame_encode(f);
    auto [back, used] = frame_decode(bytes, 1024);
    REQUIRE(used == bytes.size());
    REQUIRE(back.party == f.party);
    REQUIRE(back.round == f.round);
    REQUIRE(back.ciphertext == f.ciphertext);
  }
}

TEST_CASE("transcript files round-trip") {
  Transcript t;
  RngStream rng(9, 0);
  for (std::uint32_t round = 1; round <= 10; round++) {
    t.push({Party::P0, round, Phase::Seed, rng.bitstr(8)});
    t.push({Party::P1, round, Phase::Seed, rng.bitstr(8)});
  }
  TranscriptHeader header;
  header.profile = "tiny";
  header.mode = "honest";
  header.rngseed = 77;
  header.scheme = "tiny";
  header.dist = "flat:2";
  std::string path = "io_roundtrip.transcript";
  write_transcript_file(path, header, t);
  auto [h2, t2] = read_transcript_file(path);
  CHECK(h2.profile == "tiny");
  CHECK(h2.mode == "honest");
  CHECK(h2.rngseed == 77);
  CHECK(h2.scheme == "tiny");
  REQUIRE(t2.size() == t.size());
  for (std::size_t i = 0; i < t.size(); i++) REQUIRE(t2[i].ciphertext == t[i].ciphertext);
  std::remove(path.c_str());

  CHECK_THROWS_AS(TranscriptHeader::parse("no equals sign"), Error);
}

TEST_CASE("key files round-trip") {
  BitStr key = RngStream(5, 0).bitstr(512);
  save_key_file("io_key.hex", "elg:desk512", key);
  auto [id, back] = load_key_file("io_key.hex");
  CHECK(id == "elg:desk512");
  CHECK(back == key);
  std::remove("io_key.hex");
}

TEST_CASE("in-process channels carry ordered bytes with backpressure") {
  auto [a, b] = channel_pair(1024);
  SUBCASE("send/recv identity across the capacity limit") {
    std::vector<std::uint8_t> big(20000);
    for (std::size_t i = 0; i < big.size(); i++) big[i] = std::uint8_t(i * 7);
    std::thread writer([&, a = a] { a->send(big); });
    std::vector<std::uint8_t> got(big.size());
    b->recv_exact(got.data(), got.size());
    writer.join();
    CHECK(got == big);
  }
  SUBCASE("close lets the peer drain, then signals EOF") {
    std::vector<std::uint8_t> data{1, 2, 3};
    a->send(data);
    a->close();
    std::uint8_t buf[8];
    CHECK(b->recv(buf, 8) == 3);
    CHECK(b->recv(buf, 8) == 0);  // EOF after drain
    CHECK_THROWS_AS(b->send(data), Error);
  }
}

TEST_CASE("tcp loopback echo and refused reconnect") {
  TcpServer server(0);
  std::uint16_t port = server.port();
  std::thread peer([&] {
    TcpConn conn = server.accept_one();
    std::uint8_t buf[4];
    conn.recv_exact(buf, 4);
    conn.send_all(std::span<const std::uint8_t>(buf, 4));
  });
  TcpConn client = tcp_connect("127.0.0.1", port);
  std::uint8_t msg[4] = {0xde, 0xad, 0xbe, 0xef};
  client.send_all(msg);
  std::uint8_t echo[4];
  client.recv_exact(echo, 4);
  peer.join();
  CHECK(std::memcmp(msg, echo, 4) == 0);
  // the listener is gone mid-session: further connects are refused
  CHECK_THROWS_AS(tcp_connect("127.0.0.1", port), Error);
}

namespace {

SessionSpec tiny_session_spec(std::uint64_t seed) {
  SessionSpec spec;
  spec.params = resolve_profile(Profile::Tiny);
  spec.scheme = tiny_scheme();
  spec.kex_group = &group_tiny16();
  spec.dist = uniform_flat_dist(2, 2);
  spec.mode = Mode::Subliminal;
  spec.rng_seed = seed;
  spec.messages = {{Party::P0, BitStr::from_u64(0x5a, 8)}};
  return spec;
}

PartyEngine engine_for(const SessionSpec& spec, Party role) {
  RngStream kgen(spec.rng_seed, 0);
  KeyPair kp0 = spec.scheme->gen(kgen), kp1 = spec.scheme->gen(kgen);
  bool p0 = role == Party::P0;
  return PartyEngine({role, spec.mode, spec.params, spec.scheme, spec.kex_group, spec.dist,
                      p0 ? kp0 : kp1, p0 ? kp1.pk : kp0.pk});
}

TranscriptHeader tiny_header(const SessionSpec& spec) {
  TranscriptHeader h;
  h.profile = "tiny";
  h.mode = std::string(mode_name(spec.mode));
  h.rngseed = spec.rng_seed;
  h.scheme = spec.scheme->id();
  h.dist = spec.dist->spec();
  return h;
}

}  // namespace

TEST_CASE("a tapped tcp run is byte-identical to the in-process run") {
  SessionSpec spec = tiny_session_spec(4);
  RunReport local = run_local_session(spec);
  TranscriptHeader header = tiny_header(spec);
  write_transcript_file("io_local.transcript", header, local.frames);

  std::uint32_t total = scheduled_rounds(spec);
  PartySchedule sched_p0{{spec.messages[0].second}, 0, total};
  PartySchedule sched_p1{{}, 1, total};

  SUBCASE("over the in-process channel pair") {
    auto [ca, cb] = channel_pair();
    FrameTap tap("io_channel.transcript", header);
    std::thread p1_thread([&, cb = cb] {
      PartyEngine p1 = engine_for(spec, Party::P1);
      RngStream rng(spec.rng_seed, 2);
      ChannelFrameStream stream(cb);
      run_party_session(p1, stream, rng, sched_p1);
    });
    PartyEngine p0 = engine_for(spec, Party::P0);
    RngStream rng(spec.rng_seed, 1);
    ChannelFrameStream stream(ca);
    PartyOutcome out = run_party_session(p0, stream, rng, sched_p0, &tap);
    p1_thread.join();
    tap.write();
    REQUIRE(out.recovered.empty());  // P0 is the sender here

    std::ifstream a("io_local.transcript"), b("io_channel.transcript");
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    std::remove("io_channel.transcript");
  }

  SUBCASE("over tcp, tapped at the serving endpoint") {
    TcpServer server(0);
    std::uint16_t port = server.port();
    std::thread p1_thread([&] {
      TcpFrameStream stream(tcp_connect("127.0.0.1", port));
      PartyEngine p1 = engine_for(spec, Party::P1);
      RngStream rng(spec.rng_seed, 2);
      run_party_session(p1, stream, rng, sched_p1);
    });
    FrameTap tap("io_tcp.transcript", header);
    TcpFrameStream stream(server.accept_one());
    PartyEngine p0 = engine_for(spec, Party::P0);
    RngStream rng(spec.rng_seed, 1);
    run_party_session(p0, stream, rng, sched_p0, &tap);
    p1_thread.join();
    tap.write();

    std::ifstream a("io_local.transcript"), b("io_tcp.transcript");
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    std::remove("io_tcp.transcript");
  }
  std::remove("io_local.transcript");
}

TEST_CASE("the eavesdrop relay records the union of both directions") {
  SessionSpec spec = tiny_session_spec(4);
  TranscriptHeader header = tiny_header(spec);
  std::uint32_t total = scheduled_rounds(spec);

  TcpServer inner(0);       // P1 listens here
  TcpServer relay_front(0); // the relay listens here
  std::uint16_t inner_port = inner.port();

  std::thread p1_thread([&] {
    TcpFrameStream stream(inner.accept_one());
    PartyEngine p1 = engine_for(spec, Party::P1);
    RngStream rng(spec.rng_seed, 2);
    run_party_session(p1, stream, rng, {{}, 1, total});
  });
  std::thread relay_thread([&] {
    eavesdrop_relay(relay_front, "127.0.0.1", inner_port, "io_relay.transcript", header, 8);
  });
  TcpFrameStream stream(tcp_connect("127.0.0.1", relay_front.port()));
  PartyEngine p0 = engine_for(spec, Party::P0);
  RngStream rng(spec.rng_seed, 1);
  run_party_session(p0, stream, rng, {{spec.messages[0].second}, 0, total});
  p1_thread.join();
  relay_thread.join();

  auto [h, tapped] = read_transcript_file("io_relay.transcript");
  CHECK(tapped.size() == 2 * total);
  RunReport local = run_local_session(spec);
  for (std::size_t i = 0; i < tapped.size(); i++)
    REQUIRE(tapped[i].ciphertext == local.frames[i].ciphertext);
  std::remove("io_relay.transcript");
}

TEST_CASE("run config files and message parsing") {
  std::string path = "io_config.txt";
  {
    std::ofstream out(path);
    out << "# comment\nprofile=tiny\nmode=subliminal\nrngseed=12\nmsg=8:a5\n";
  }
  RunConfig cfg;
  cfg.merge_file(path);
  CHECK(cfg.profile == "tiny");
  CHECK(cfg.rng_seed == 12);
  REQUIRE(cfg.msgs.size() == 1);
  ResolvedRun run = resolve_config(cfg);
  CHECK(run.params.n_ct == 8);
  CHECK(run.messages[0] == BitStr::from_u64(0xa5, 8));
  std::remove(path.c_str());

  CHECK(parse_message_hex("a5", 8) == BitStr::from_u64(0xa5, 8));
  CHECK(parse_message_hex("8:a5", 8) == BitStr::from_u64(0xa5, 8));
  CHECK_THROWS_AS(parse_message_hex("16:a5a5", 8), Error);

  RunConfig bad;
  bad.profile = "desk";
  bad.scheme = "tiny";  // 8-bit ciphertexts do not fit the desk profile
  CHECK_THROWS_AS(resolve_config(bad), Error);
}
