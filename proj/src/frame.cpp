#include "covertext/frame.hpp"

#include "covertext/error.hpp"

namespace covertext {

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Seed: return "seed";
    case Phase::Kex: return "kex";
    case Phase::Comm: return "comm";
    case Phase::Idle: return "idle";
  }
  return "?";
}

void Transcript::push(TranscriptFrame frame) {
  std::uint32_t& last = last_round_[frame.party == Party::P0 ? 0 : 1];
  if (frame.round != last + 1)
    throw Error(Errc::ProtocolDesync,
                "expected round " + std::to_string(last + 1) + " from party, got " +
                    std::to_string(frame.round));
  last = frame.round;
  frames_.push_back(std::move(frame));
}

std::vector<const TranscriptFrame*> Transcript::by_party(Party party) const {
  std::vector<const TranscriptFrame*> out;
  for (const auto& f : frames_)
    if (f.party == party) out.push_back(&f);
  return out;
}

}  // namespace covertext
