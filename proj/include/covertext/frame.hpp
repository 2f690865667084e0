#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "covertext/bitstr.hpp"

namespace covertext {

enum class Party : std::uint8_t { P0 = 0, P1 = 1 };

inline Party other(Party p) { return p == Party::P0 ? Party::P1 : Party::P0; }

// Phase tags annotate frames in local logs and in-process delivery only; the
// wire format carries nothing but direction, round and ciphertext.
enum class Phase : std::uint8_t { Seed, Kex, Comm, Idle };

std::string_view phase_name(Phase p);

struct TranscriptFrame {
  Party party;            // sender
  std::uint32_t round;    // exchange-round index, starts at 1
  Phase phase;            // local annotation, never on the wire
  BitStr ciphertext;      // n_ct bits
};

// Ordered frame list with the (party, round) uniqueness / contiguity
// invariant: per party, rounds run 1,2,3,... with no gaps.
class Transcript {
 public:
  void push(TranscriptFrame frame);
  const std::vector<TranscriptFrame>& frames() const { return frames_; }
  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }
  const TranscriptFrame& operator[](std::size_t i) const { return frames_[i]; }

  // Frames sent by `party`, in round order.
  std::vector<const TranscriptFrame*> by_party(Party party) const;
  std::uint32_t rounds_complete(Party party) const {
    return party == Party::P0 ? last_round_[0] : last_round_[1];
  }

 private:
  std::vector<TranscriptFrame> frames_;
  std::uint32_t last_round_[2] = {0, 0};
};

}  // namespace covertext
