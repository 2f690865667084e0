#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "covertext/bitstr.hpp"
#include "covertext/rng.hpp"

namespace covertext {

// Next-message oracle producing the innocuous plaintext conversation. The
// protocol must work for every one of these, including Constant.
class CoverDist {
 public:
  virtual ~CoverDist() = default;

  unsigned msg_bits() const { return msg_bits_; }
  const std::string& spec() const { return spec_; }

  // Sample the next message given the plaintext conversation so far.
  virtual BitStr next(const std::vector<BitStr>& transcript, RngStream& rng) const = 0;
  // Exact min-entropy for flat-by-construction kinds; a declared lower bound
  // of 0 otherwise.
  virtual unsigned min_entropy() const = 0;
  // Support membership, used by the distinguisher battery's decrypt check.
  virtual bool supports(const BitStr& msg) const = 0;

 protected:
  CoverDist(std::string spec, unsigned msg_bits)
      : spec_(std::move(spec)), msg_bits_(msg_bits) {}

  std::string spec_;
  unsigned msg_bits_;
};

// Always the same message; H_inf = 0.
std::shared_ptr<const CoverDist> constant_dist(const BitStr& msg);

// Flat on the lexicographically-first 2^k messages of the given width;
// H_inf = k exactly.
std::shared_ptr<const CoverDist> uniform_flat_dist(unsigned k, unsigned msg_bits);

// Bigram text model over a UTF-8 corpus file; messages are token sequences
// encoded as fixed-width zero-padded byte strings. Declares min-entropy 0.
std::shared_ptr<const CoverDist> ngram_text_dist(const std::string& corpus_path,
                                                 unsigned msg_bits);

// Parse "constant:<hex-or-int>", "flat:<k>", "ngram:<path>". The message
// width comes from the scheme.
std::shared_ptr<const CoverDist> make_cover_dist(const std::string& spec,
                                                 unsigned msg_bits);

unsigned minentropy_of(const CoverDist& dist);

}  // namespace covertext
