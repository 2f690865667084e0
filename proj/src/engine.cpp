#include "covertext/engine.hpp"

#include <algorithm>

#include "covertext/error.hpp"

namespace covertext {

Mode parse_mode(std::string_view name) {
  if (name == "honest") return Mode::Honest;
  if (name == "subliminal") return Mode::Subliminal;
  throw Error(Errc::BadConfig, "unknown mode: " + std::string(name));
}

std::string_view mode_name(Mode m) {
  return m == Mode::Honest ? "honest" : "subliminal";
}

std::string_view engine_phase_name(EnginePhase p) {
  switch (p) {
    case EnginePhase::Seed: return "seed";
    case EnginePhase::Kex: return "kex";
    case EnginePhase::Idle: return "idle";
    case EnginePhase::CommSend: return "comm-send";
    case EnginePhase::CommRecv: return "comm-recv";
  }
  return "?";
}

PartyEngine::PartyEngine(EngineConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.params.validate();
  if (!cfg_.scheme || !cfg_.dist) throw Error(Errc::BadConfig, "engine wants scheme and dist");
  if (cfg_.scheme->n_ct() != cfg_.params.n_ct)
    throw Error(Errc::BadConfig, "scheme ciphertext width does not match profile");
  if (cfg_.dist->msg_bits() != cfg_.scheme->msg_bits())
    throw Error(Errc::BadConfig, "cover distribution width does not match scheme");
  if (cfg_.mode == Mode::Subliminal) {
    if (!cfg_.kex_group) throw Error(Errc::BadConfig, "subliminal engine wants a kex group");
    if (cfg_.kex_group->ell != cfg_.params.ell_kex)
      throw Error(Errc::BadConfig, "kex group width does not match ell_kex");
  }
}

void PartyEngine::note(std::string text) {
  diagnostics_.push_back(text);
  events_.push_back({EngineEvent::Kind::Note, {}, std::move(text)});
}

void PartyEngine::ingest(const TranscriptFrame& frame) {
  if (frame.party != other(cfg_.role))
    throw Error(Errc::ProtocolDesync, "frame from the wrong party");
  if (frame.round != peer_round_ + 1)
    throw Error(Errc::ProtocolDesync,
                "expected peer round " + std::to_string(peer_round_ + 1) + ", got " +
                    std::to_string(frame.round));
  auto plaintext = cfg_.scheme->dec(cfg_.my_keys.sk, frame.ciphertext);
  if (!plaintext)
    throw Error(Errc::ProtocolDesync,
                "frame at round " + std::to_string(frame.round) + " does not decrypt");
  peer_round_ = frame.round;
  transcript_.push(frame);
  plaintexts_.push_back(*plaintext);

  if (phase_ == EnginePhase::Seed) {
    maybe_finish_seed();
    // a seed-phase ingest never carries kex or comm payload
    return;
  }
  if (cfg_.mode == Mode::Honest) return;

  bool in_kex_window =
      frame.round > cfg_.params.d && frame.round <= cfg_.params.d + cfg_.params.kex_blocks();
  if (in_kex_window) {
    peer_kex_cts_.push_back(frame.ciphertext);
    maybe_finish_kex();
    return;
  }
  if (phase_ == EnginePhase::Idle && sk_star_ && (expecting_ || frame.phase == Phase::Comm)) {
    phase_ = EnginePhase::CommRecv;
    recv_comm_cts_.clear();
  }
  if (phase_ == EnginePhase::CommRecv) {
    recv_comm_cts_.push_back(frame.ciphertext);
    if (recv_comm_cts_.size() == cfg_.params.comm_blocks()) {
      BitStr cstar = recombine(seed_->hash, recv_comm_cts_, cfg_.params.v);
      BitStr msg = ske_dec(*sk_star_, SkeCiphertext::split(cstar, cfg_.params.nonce_bits()));
      events_.push_back({EngineEvent::Kind::MessageRecovered, msg, ""});
      recv_comm_cts_.clear();
      expecting_ = false;
      phase_ = EnginePhase::Idle;
    }
  }
}

BitStr PartyEngine::embed_block(const BitStr& block, const BitStr& cover_msg,
                                RngStream& rng) {
  try {
    auto [ct, attempts] = rejection_sample(*cfg_.scheme, cfg_.peer_pk, cover_msg,
                                           seed_->hash, block, cfg_.params.max_attempts, rng);
    attempts_.push_back(attempts);
    return ct;
  } catch (const BudgetExhaustedError& e) {
    throw BudgetExhaustedError(e.attempts(),
                               "round " + std::to_string(my_round_ + 1) + ", " +
                                   std::string(engine_phase_name(phase_)) + " block");
  }
}

TranscriptFrame PartyEngine::produce(RngStream& rng) {
  if (cfg_.role == Party::P0) {
    if (my_round_ != peer_round_)
      throw Error(Errc::ProtocolDesync, "P0 speaks first; ingest the peer frame first");
  } else {
    if (my_round_ + 1 != peer_round_)
      throw Error(Errc::ProtocolDesync, "P1 responds; ingest the peer frame first");
  }
  std::uint32_t round = my_round_ + 1;
  BitStr cover_msg = cfg_.dist->next(plaintexts_, rng);
  BitStr ciphertext;
  Phase tag = Phase::Idle;
  switch (phase_) {
    case EnginePhase::Seed:
      tag = Phase::Seed;
      ciphertext = cfg_.scheme->enc(cfg_.peer_pk, cover_msg, rng);
      break;
    case EnginePhase::Kex: {
      tag = Phase::Kex;
      if (!kex_state_) {
        auto [st, msg] = kex_round1(cfg_.params, *cfg_.kex_group, rng);
        kex_state_ = st;
        for (std::uint32_t i = 0; i < cfg_.params.kex_blocks(); i++)
          kex_blocks_.push_back(msg.slice(std::size_t(i) * cfg_.params.v, cfg_.params.v));
      }
      ciphertext = embed_block(kex_blocks_[kex_sent_], cover_msg, rng);
      kex_sent_++;
      break;
    }
    case EnginePhase::CommSend:
      tag = Phase::Comm;
      ciphertext = embed_block(payload_blocks_[payload_sent_], cover_msg, rng);
      payload_sent_++;
      break;
    case EnginePhase::CommRecv:
    case EnginePhase::Idle:
      ciphertext = cfg_.scheme->enc(cfg_.peer_pk, cover_msg, rng);
      break;
  }
  my_round_ = round;
  plaintexts_.push_back(cover_msg);
  sent_plaintexts_.push_back(cover_msg);
  TranscriptFrame frame{cfg_.role, round, tag, ciphertext};
  transcript_.push(frame);

  if (phase_ == EnginePhase::Seed) maybe_finish_seed();
  if (phase_ == EnginePhase::Kex) maybe_finish_kex();
  if (phase_ == EnginePhase::CommSend && payload_sent_ == payload_blocks_.size()) {
    payload_blocks_.clear();
    payload_sent_ = 0;
    phase_ = EnginePhase::Idle;
  }
  return frame;
}

TranscriptFrame PartyEngine::step(const std::optional<TranscriptFrame>& incoming,
                                  RngStream& rng) {
  if (incoming) ingest(*incoming);
  return produce(rng);
}

void PartyEngine::maybe_finish_seed() {
  if (phase_ != EnginePhase::Seed) return;
  unsigned d = cfg_.params.d;
  if (transcript_.rounds_complete(Party::P0) < d || transcript_.rounds_complete(Party::P1) < d)
    return;
  seed_ = derive_seed(transcript_, d);
  events_.push_back({EngineEvent::Kind::SeedEstablished, seed_->bits, ""});
  // Honest engines keep the derived seed for the report and never use it.
  phase_ = cfg_.mode == Mode::Subliminal ? EnginePhase::Kex : EnginePhase::Idle;
}

void PartyEngine::maybe_finish_kex() {
  if (phase_ != EnginePhase::Kex) return;
  std::uint32_t nu = cfg_.params.kex_blocks();
  if (kex_sent_ < nu || peer_kex_cts_.size() < nu) return;
  BitStr peer_msg = recombine(seed_->hash, peer_kex_cts_, cfg_.params.v);
  SharedKey shared = kex_finish(*kex_state_, peer_msg);
  if (shared.degenerate) note("kex degenerate: shared element is the identity");
  sk_star_ = ske_gen(shared);
  events_.push_back({EngineEvent::Kind::KeyEstablished, {}, ""});
  phase_ = EnginePhase::Idle;
}

void PartyEngine::embed(const BitStr& msg, RngStream& rng) {
  if (cfg_.mode != Mode::Subliminal || phase_ != EnginePhase::Idle || !sk_star_)
    throw Error(Errc::NotReady, "embed wants an idle subliminal engine with sk*");
  if (msg.size() != cfg_.params.kappa)
    throw Error(Errc::BadLength, "hidden message must be kappa bits");
  SkeCiphertext cstar = ske_enc(*sk_star_, msg, cfg_.params.nonce_bits(), rng);
  BitStr payload = cstar.concat();
  payload_blocks_.clear();
  for (std::uint32_t i = 0; i < cfg_.params.comm_blocks(); i++)
    payload_blocks_.push_back(payload.slice(std::size_t(i) * cfg_.params.v, cfg_.params.v));
  payload_sent_ = 0;
  phase_ = EnginePhase::CommSend;
}

void PartyEngine::expect_embedding() {
  if (cfg_.mode != Mode::Subliminal || !sk_star_)
    throw Error(Errc::NotReady, "expect_embedding wants an established key");
  expecting_ = true;
}

std::vector<EngineEvent> PartyEngine::take_events() {
  std::vector<EngineEvent> out;
  out.swap(events_);
  return out;
}

std::uint32_t scheduled_rounds(const SessionSpec& spec) {
  std::uint32_t r = spec.params.d + spec.params.kex_blocks();
  std::uint32_t total = r + std::uint32_t(spec.messages.size()) * spec.params.comm_blocks();
  // a P1-initiated final message needs one extra round for P0 to collect it
  if (!spec.messages.empty() && spec.messages.back().first == Party::P1) total += 1;
  return total + spec.trailing_rounds;
}

RunReport run_local_session(const SessionSpec& spec) {
  RngStream kgen(spec.rng_seed, 0);
  KeyPair kp0 = spec.scheme->gen(kgen);
  KeyPair kp1 = spec.scheme->gen(kgen);

  EngineConfig c0{Party::P0, spec.mode, spec.params, spec.scheme,
                  spec.kex_group, spec.dist, kp0, kp1.pk};
  EngineConfig c1{Party::P1, spec.mode, spec.params, spec.scheme,
                  spec.kex_group, spec.dist, kp1, kp0.pk};
  PartyEngine p0(std::move(c0)), p1(std::move(c1));
  RngStream rng0(spec.rng_seed, 1), rng1(spec.rng_seed, 2);

  std::uint32_t total = spec.total_rounds_override ? spec.total_rounds_override
                                                   : scheduled_rounds(spec);
  std::deque<std::pair<Party, BitStr>> pending(spec.messages.begin(), spec.messages.end());

  RunReport report;
  report.keys_p0 = kp0;
  report.keys_p1 = kp1;
  std::optional<TranscriptFrame> last_p1;

  auto drain = [&report](PartyEngine& engine) {
    for (auto& ev : engine.take_events())
      if (ev.kind == EngineEvent::Kind::MessageRecovered)
        report.recovered.push_back(ev.payload);
  };
  auto maybe_embed = [&](PartyEngine& engine, RngStream& rng) {
    if (spec.mode != Mode::Subliminal || pending.empty()) return;
    if (pending.front().first != engine.role()) return;
    if (engine.phase() == EnginePhase::Idle && engine.key_established()) {
      engine.embed(pending.front().second, rng);
      pending.pop_front();
    }
  };

  for (std::uint32_t round = 1; round <= total; round++) {
    if (last_p1) p0.ingest(*last_p1);
    maybe_embed(p0, rng0);
    TranscriptFrame f0 = p0.produce(rng0);
    drain(p0);
    report.frames.push(f0);

    p1.ingest(f0);
    maybe_embed(p1, rng1);
    TranscriptFrame f1 = p1.produce(rng1);
    drain(p1);
    report.frames.push(f1);
    last_p1 = f1;
  }

  report.seed = p0.seed();
  report.attempts_p0 = p0.attempts_log();
  report.attempts_p1 = p1.attempts_log();
  report.sent_plaintexts_p0 = p0.sent_plaintexts();
  report.sent_plaintexts_p1 = p1.sent_plaintexts();
  for (const auto& dnote : p0.diagnostics()) report.diagnostics.push_back("p0: " + dnote);
  for (const auto& dnote : p1.diagnostics()) report.diagnostics.push_back("p1: " + dnote);
  if (!pending.empty())
    report.diagnostics.push_back(std::to_string(pending.size()) +
                                 " hidden message(s) never embedded");
  return report;
}

bool verify_cover_conversation(const RunReport& report, const Scheme& scheme,
                               std::string* why) {
  std::size_t seen[2] = {0, 0};
  for (const auto& frame : report.frames.frames()) {
    bool from_p0 = frame.party == Party::P0;
    const auto& log = from_p0 ? report.sent_plaintexts_p0 : report.sent_plaintexts_p1;
    const BitStr& sk = from_p0 ? report.keys_p1.sk : report.keys_p0.sk;
    std::size_t& idx = seen[from_p0 ? 0 : 1];
    if (idx >= log.size()) {
      if (why) *why = "missing plaintext log entry";
      return false;
    }
    auto pt = scheme.dec(sk, frame.ciphertext);
    if (!pt || !(*pt == log[idx])) {
      if (why)
        *why = "frame " + std::to_string(frame.round) + " from " +
               (from_p0 ? "P0" : "P1") + " does not decrypt to the logged cover message";
      return false;
    }
    idx++;
  }
  return true;
}

}  // namespace covertext
