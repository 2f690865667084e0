#include <doctest.h>

#include <fstream>

#include "covertext/engine.hpp"
#include "covertext/error.hpp"
#include "covertext/wire.hpp"

using namespace covertext;

namespace {

SessionSpec tiny_spec(Mode mode, std::uint64_t seed) {
  SessionSpec spec;
  spec.params = resolve_profile(Profile::Tiny);
  spec.scheme = tiny_scheme();
  spec.kex_group = &group_tiny16();
  spec.dist = uniform_flat_dist(2, 2);
  spec.mode = mode;
  spec.rng_seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("honest runs are plain encryptions of the cover conversation") {
  SessionSpec spec = tiny_spec(Mode::Honest, 11);
  spec.total_rounds_override = 60;
  RunReport report = run_local_session(spec);
  REQUIRE(report.frames.size() == 120);
  CHECK(report.attempts_p0.empty());  // the rejection sampler never runs
  CHECK(report.attempts_p1.empty());
  CHECK(report.seed.has_value());    // derived, stored, never used
  std::string why;
  CHECK(verify_cover_conversation(report, *spec.scheme, &why));
}

TEST_CASE("subliminal end-to-end on the tiny profile, exact round count") {
  // r = d + ell_kex/v = 8 + 8 = 16, r' = xi_ske/v = 8
  for (unsigned p : {1u, 2u}) {
    SessionSpec spec = tiny_spec(Mode::Subliminal, 4);
    RngStream msgs(1234, p);
    for (unsigned i = 0; i < p; i++) spec.messages.push_back({Party::P0, msgs.bitstr(8)});
    RunReport report = run_local_session(spec);
    REQUIRE(report.recovered.size() == p);
    for (unsigned i = 0; i < p; i++) REQUIRE(report.recovered[i] == spec.messages[i].second);
    // transcript length r + p r' exchange-rounds, nothing more
    CHECK(report.frames.size() == 2 * (16 + p * 8));
    CHECK(report.attempts_p0.size() == 8 + p * 8);  // kex blocks + payload blocks
    CHECK(report.attempts_p1.size() == 8);
    std::string why;
    CHECK(verify_cover_conversation(report, *spec.scheme, &why));
  }
}

TEST_CASE("either party can initiate the communication phase") {
  SessionSpec spec = tiny_spec(Mode::Subliminal, 10);
  RngStream msgs(77, 0);
  BitStr m0 = msgs.bitstr(8), m1 = msgs.bitstr(8);
  spec.messages = {{Party::P1, m0}, {Party::P0, m1}};
  RunReport report = run_local_session(spec);
  REQUIRE(report.recovered.size() == 2);
  CHECK(report.recovered[0] == m0);
  CHECK(report.recovered[1] == m1);
}

TEST_CASE("seed phases are byte-identical across modes") {
  SessionSpec honest = tiny_spec(Mode::Honest, 500);
  honest.total_rounds_override = 16;
  SessionSpec sub = tiny_spec(Mode::Subliminal, 500);
  sub.total_rounds_override = 16;
  RunReport h = run_local_session(honest), s = run_local_session(sub);
  unsigned d = resolve_profile(Profile::Tiny).d;
  for (std::size_t i = 0; i < h.frames.size(); i++) {
    if (h.frames[i].round > d) continue;
    REQUIRE(h.frames[i].ciphertext == s.frames[i].ciphertext);
  }
  // both modes derive the same seed from the same frames
  REQUIRE(h.seed.has_value());
  REQUIRE(s.seed.has_value());
  CHECK(h.seed->bits == s.seed->bits);
}

TEST_CASE("the eavesdropper can read the embedded key-exchange transcript") {
  // drive two engines by hand so the key-exchange state stays accessible
  SessionSpec spec = tiny_spec(Mode::Subliminal, 21);
  RngStream kgen(spec.rng_seed, 0);
  KeyPair kp0 = spec.scheme->gen(kgen), kp1 = spec.scheme->gen(kgen);
  PartyEngine p0({Party::P0, Mode::Subliminal, spec.params, spec.scheme, spec.kex_group,
                  spec.dist, kp0, kp1.pk});
  PartyEngine p1({Party::P1, Mode::Subliminal, spec.params, spec.scheme, spec.kex_group,
                  spec.dist, kp1, kp0.pk});
  RngStream r0(spec.rng_seed, 1), r1(spec.rng_seed, 2);

  Transcript wire;
  std::optional<TranscriptFrame> last_p1;
  for (std::uint32_t round = 1; round <= 16; round++) {
    if (last_p1) p0.ingest(*last_p1);
    TranscriptFrame f0 = p0.produce(r0);
    wire.push(f0);
    p1.ingest(f0);
    TranscriptFrame f1 = p1.produce(r1);
    wire.push(f1);
    last_p1 = f1;
  }
  p0.ingest(*last_p1);
  REQUIRE(p0.key_established());
  REQUIRE(p1.key_established());

  // the observer recomputes the seed and extracts each party's kex message
  Seed seed = derive_seed(wire, spec.params.d);
  REQUIRE(p0.seed().has_value());
  CHECK(seed.bits == p0.seed()->bits);
  for (Party party : {Party::P0, Party::P1}) {
    auto frames = wire.by_party(party);
    std::vector<BitStr> kex_cts;
    for (auto* f : frames)
      if (f->round > spec.params.d && f->round <= spec.params.d + spec.params.kex_blocks())
        kex_cts.push_back(f->ciphertext);
    BitStr extracted = recombine(seed.hash, kex_cts, spec.params.v);
    const auto& engine = party == Party::P0 ? p0 : p1;
    (void)engine;
    // the extracted string is exactly the lambda message the sender produced
    const std::optional<KexState>& st = party == Party::P0 ? p0.kex_state() : p1.kex_state();
    REQUIRE(st.has_value());
    REQUIRE(extracted == st->sent);
  }
}

TEST_CASE("embed preconditions") {
  SessionSpec spec = tiny_spec(Mode::Subliminal, 31);
  RngStream kgen(spec.rng_seed, 0);
  KeyPair kp0 = spec.scheme->gen(kgen), kp1 = spec.scheme->gen(kgen);
  PartyEngine engine({Party::P0, Mode::Subliminal, spec.params, spec.scheme, spec.kex_group,
                      spec.dist, kp0, kp1.pk});
  RngStream rng(1, 1);
  CHECK_THROWS_AS(engine.embed(BitStr(8), rng), Error);  // before setup completes

  PartyEngine honest({Party::P0, Mode::Honest, spec.params, spec.scheme, nullptr,
                      spec.dist, kp0, kp1.pk});
  CHECK_THROWS_AS(honest.embed(BitStr(8), rng), Error);  // honest engines never embed
}

TEST_CASE("protocol desync is detected") {
  SessionSpec spec = tiny_spec(Mode::Subliminal, 41);
  RngStream kgen(spec.rng_seed, 0);
  KeyPair kp0 = spec.scheme->gen(kgen), kp1 = spec.scheme->gen(kgen);
  PartyEngine p0({Party::P0, Mode::Subliminal, spec.params, spec.scheme, spec.kex_group,
                  spec.dist, kp0, kp1.pk});
  RngStream rng(2, 1);
  TranscriptFrame f0 = p0.produce(rng);

  SUBCASE("frame from the wrong party") {
    CHECK_THROWS_AS(p0.ingest(f0), Error);  // P0 cannot ingest its own frame
  }
  SUBCASE("round gap") {
    TranscriptFrame bad{Party::P1, 2, Phase::Seed, BitStr::from_u64(1, 8)};
    CHECK_THROWS_AS(p0.ingest(bad), Error);
  }
  SUBCASE("produce without ingesting first") {
    CHECK_THROWS_AS(p0.produce(rng), Error);
  }
}

TEST_CASE("budget exhaustion bubbles up with round context") {
  SessionSpec spec = tiny_spec(Mode::Subliminal, 51);
  spec.scheme = lowent_scheme(0, 2, 8);  // one ciphertext per message
  RunReport report;
  try {
    report = run_local_session(spec);
    // no messages scheduled; the kex phase itself must already die
    FAIL("expected BudgetExhausted during the key exchange");
  } catch (const BudgetExhaustedError& e) {
    CHECK(std::string(e.what()).find("round") != std::string::npos);
  }
}

TEST_CASE("desk profile end-to-end with the elgamal scheme") {
  SessionSpec spec;
  spec.params = resolve_profile(Profile::Desk);
  spec.scheme = make_scheme("elg:desk512");
  spec.kex_group = &group_desk512();
  spec.dist = constant_dist(BitStr(spec.scheme->msg_bits()));  // the inauspicious case
  spec.mode = Mode::Subliminal;
  spec.rng_seed = 4242;
  RngStream msgs(999, 0);
  BitStr hidden = msgs.bitstr(128);
  spec.messages = {{Party::P0, hidden}};
  RunReport report = run_local_session(spec);
  REQUIRE(report.recovered.size() == 1);
  CHECK(report.recovered[0] == hidden);
  CHECK(report.frames.size() == 2 * (128 + 128 + 64));
  std::string why;
  CHECK(verify_cover_conversation(report, *spec.scheme, &why));
}

TEST_CASE("golden transcripts stay byte-exact") {
  auto check_golden = [](const SessionSpec& spec, const std::string& name) {
    RunReport report = run_local_session(spec);
    TranscriptHeader header;
    header.profile = spec.params.n_ct == 8 ? "tiny" : "desk";
    header.mode = std::string(mode_name(spec.mode));
    header.rngseed = spec.rng_seed;
    header.scheme = spec.scheme->id();
    header.dist = spec.dist->spec();
    std::string fresh = "golden_fresh_" + name;
    write_transcript_file(fresh, header, report.frames);

    std::string golden = std::string(COVERTEXT_SOURCE_DIR) + "/tests/data/" + name;
    std::ifstream want(golden), got(fresh);
    REQUIRE(want.good());
    REQUIRE(got.good());
    std::string a((std::istreambuf_iterator<char>(want)), std::istreambuf_iterator<char>());
    std::string b((std::istreambuf_iterator<char>(got)), std::istreambuf_iterator<char>());
    REQUIRE(a == b);
    std::remove(fresh.c_str());
  };

  SessionSpec tiny = tiny_spec(Mode::Subliminal, 4);
  tiny.messages = {{Party::P0, BitStr::from_u64(0xa5, 8)}};
  check_golden(tiny, "golden_tiny.transcript");

  SessionSpec desk;
  desk.params = resolve_profile(Profile::Desk);
  desk.scheme = make_scheme("elg:desk512");
  desk.kex_group = &group_desk512();
  desk.dist = uniform_flat_dist(16, desk.scheme->msg_bits());
  desk.mode = Mode::Subliminal;
  desk.rng_seed = 7;
  desk.messages = {{Party::P0, BitStr::from_hex("128:0123456789abcdef0123456789abcdef")}};
  check_golden(desk, "golden_desk.transcript");
}
