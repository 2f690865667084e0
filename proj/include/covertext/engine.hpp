#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "covertext/cover.hpp"
#include "covertext/frame.hpp"
#include "covertext/kex.hpp"
#include "covertext/params.hpp"
#include "covertext/sampler.hpp"
#include "covertext/scheme.hpp"
#include "covertext/seed.hpp"
#include "covertext/ske.hpp"

namespace covertext {

enum class Mode { Honest, Subliminal };

Mode parse_mode(std::string_view name);
std::string_view mode_name(Mode m);

// Engine-internal state; frames carry the coarser Phase tag.
enum class EnginePhase { Seed, Kex, Idle, CommSend, CommRecv };

std::string_view engine_phase_name(EnginePhase p);

struct EngineEvent {
  enum class Kind { SeedEstablished, KeyEstablished, MessageRecovered, Note };
  Kind kind;
  BitStr payload;    // recovered message, when applicable
  std::string note;
};

struct EngineConfig {
  Party role = Party::P0;
  Mode mode = Mode::Honest;
  SecurityParams params;
  std::shared_ptr<const Scheme> scheme;
  const GroupParams* kex_group = nullptr;  // required in Subliminal mode
  std::shared_ptr<const CoverDist> dist;
  KeyPair my_keys;
  BitStr peer_pk;
};

// One party's protocol state machine. An exchange-round for this engine is
// an ingest of the peer's latest frame followed by a produce of its own.
//
// Phase schedule (Subliminal): rounds 1..d plain encryptions, then the seed
// is derived from GT over consecutive ciphertext pairs; rounds d+1..d+nu
// carry one rejection-sampled v-bit block of the key-exchange message per
// round in each direction; after that the engine idles until embed() queues
// a hidden message, which occupies xi_ske/v rounds of one-sided
// rejection-sampled blocks. Honest engines run the same seed-phase byte
// stream, derive the seed too (and never use it), and send plain
// encryptions forever.
class PartyEngine {
 public:
  explicit PartyEngine(EngineConfig cfg);

  void ingest(const TranscriptFrame& frame);
  TranscriptFrame produce(RngStream& rng);
  // Convenience wrapper: ingest (if present) then produce.
  TranscriptFrame step(const std::optional<TranscriptFrame>& incoming, RngStream& rng);

  // Queues a hidden message; requires Idle phase and an established key.
  void embed(const BitStr& msg, RngStream& rng);
  // Arms the engine to treat the peer's next frames as an embedding; used by
  // drivers whose delivery path carries no phase annotation (the wire).
  void expect_embedding();

  std::vector<EngineEvent> take_events();

  Party role() const { return cfg_.role; }
  Mode mode() const { return cfg_.mode; }
  const SecurityParams& params() const { return cfg_.params; }
  EnginePhase phase() const { return phase_; }
  std::uint32_t round() const { return my_round_; }
  const std::optional<Seed>& seed() const { return seed_; }
  const std::optional<KexState>& kex_state() const { return kex_state_; }
  bool key_established() const { return sk_star_.has_value(); }
  const Transcript& transcript() const { return transcript_; }
  const std::vector<BitStr>& conversation() const { return plaintexts_; }
  const std::vector<BitStr>& sent_plaintexts() const { return sent_plaintexts_; }
  const std::vector<std::uint64_t>& attempts_log() const { return attempts_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  BitStr embed_block(const BitStr& block, const BitStr& cover_msg, RngStream& rng);
  void maybe_finish_seed();
  void maybe_finish_kex();
  void note(std::string text);

  EngineConfig cfg_;
  EnginePhase phase_ = EnginePhase::Seed;
  std::uint32_t my_round_ = 0;
  std::uint32_t peer_round_ = 0;

  Transcript transcript_;
  std::vector<BitStr> plaintexts_;        // conversation as locally known
  std::vector<BitStr> sent_plaintexts_;   // only this party's messages
  std::vector<BitStr> peer_kex_cts_;
  std::vector<BitStr> recv_comm_cts_;

  std::optional<Seed> seed_;
  std::optional<KexState> kex_state_;
  std::vector<BitStr> kex_blocks_;
  std::uint32_t kex_sent_ = 0;
  std::optional<SkeKey> sk_star_;
  std::vector<BitStr> payload_blocks_;
  std::uint32_t payload_sent_ = 0;
  bool expecting_ = false;

  std::vector<EngineEvent> events_;
  std::vector<std::uint64_t> attempts_;
  std::vector<std::string> diagnostics_;
};

struct RunReport {
  Transcript frames;
  std::vector<BitStr> recovered;
  std::vector<std::uint64_t> attempts_p0;
  std::vector<std::uint64_t> attempts_p1;
  std::optional<Seed> seed;
  std::vector<std::string> diagnostics;
  std::vector<BitStr> sent_plaintexts_p0;
  std::vector<BitStr> sent_plaintexts_p1;
  KeyPair keys_p0;
  KeyPair keys_p1;
};

struct SessionSpec {
  SecurityParams params;
  std::shared_ptr<const Scheme> scheme;
  const GroupParams* kex_group = nullptr;
  std::shared_ptr<const CoverDist> dist;
  Mode mode = Mode::Honest;
  std::uint64_t rng_seed = 0;
  // Hidden messages in embedding order, each with its sending party.
  std::vector<std::pair<Party, BitStr>> messages;
  // Extra plain exchange-rounds appended after the schedule (or, for Honest
  // runs, the schedule is plain anyway). 0 keeps the exact
  // r + p*r' exchange-round count.
  std::uint32_t trailing_rounds = 0;
  // When nonzero, run exactly this many exchange-rounds (used to shape
  // honest transcripts to a subliminal run's length).
  std::uint32_t total_rounds_override = 0;
};

// Runs both engines in-process. Key generation draws from rng stream 0,
// P0 from stream 1, P1 from stream 2.
RunReport run_local_session(const SessionSpec& spec);

// Exchange-round count of the subliminal schedule for this spec.
std::uint32_t scheduled_rounds(const SessionSpec& spec);

// Observer check: every frame decrypts (under the receiving party's key) to
// exactly the plaintext its sender logged. Returns false and fills `why` on
// the first mismatch.
bool verify_cover_conversation(const RunReport& report, const Scheme& scheme,
                               std::string* why = nullptr);

}  // namespace covertext
