#include "covertext/cover.hpp"

#include <fstream>
#include <sstream>

#include "covertext/error.hpp"

namespace covertext {

namespace {

class ConstantDist : public CoverDist {
 public:
  explicit ConstantDist(BitStr msg)
      : CoverDist("constant:" + msg.hex(), unsigned(msg.size())), msg_(std::move(msg)) {}

  BitStr next(const std::vector<BitStr>&, RngStream&) const override { return msg_; }
  unsigned min_entropy() const override { return 0; }
  bool supports(const BitStr& msg) const override { return msg == msg_; }

 private:
  BitStr msg_;
};

class UniformFlatDist : public CoverDist {
 public:
  UniformFlatDist(unsigned k, unsigned msg_bits)
      : CoverDist("flat:" + std::to_string(k), msg_bits), k_(k) {
    if (k > msg_bits) throw Error(Errc::BadK, "flat cover wants k <= msg_bits");
  }

  BitStr next(const std::vector<BitStr>&, RngStream& rng) const override {
    // lexicographically-first support = integers [0, 2^k), uniform
    BitStr m(msg_bits_);
    unsigned done = 0;
    while (done < k_) {
      unsigned take = std::min(64u, k_ - done);
      std::uint64_t w = rng.bits(take);
      for (unsigned j = 0; j < take; j++)
        m.set_bit(msg_bits_ - 1 - (done + j), (w >> j) & 1);
      done += take;
    }
    return m;
  }
  unsigned min_entropy() const override { return k_; }
  bool supports(const BitStr& msg) const override {
    if (msg.size() != msg_bits_) return false;
    for (unsigned i = 0; i + k_ < msg_bits_; i++)
      if (msg.bit(i)) return false;
    return true;
  }

 private:
  unsigned k_;
};

class NgramTextDist : public CoverDist {
 public:
  NgramTextDist(const std::string& path, unsigned msg_bits)
      : CoverDist("ngram:" + path, msg_bits) {
    if (msg_bits % 8 != 0 || msg_bits < 16)
      throw Error(Errc::BadConfig, "ngram cover wants a byte-aligned width >= 16");
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open corpus " + path);
    std::string tok, prev;
    while (in >> tok) {
      vocab_.insert({tok, 0}).first->second++;
      if (!prev.empty()) bigrams_[prev].push_back(tok);
      prev = tok;
    }
    if (bigrams_.empty()) throw Error(Errc::BadConfig, "corpus too small");
    for (const auto& [word, _] : vocab_) starts_.push_back(word);
  }

  BitStr next(const std::vector<BitStr>& transcript, RngStream& rng) const override {
    std::string context;
    if (!transcript.empty()) {
      std::string last = decode_text(transcript.back());
      auto sp = last.find_last_of(' ');
      context = sp == std::string::npos ? last : last.substr(sp + 1);
    }
    std::string text;
    std::string cur = context;
    std::size_t budget = msg_bits_ / 8;
    for (;;) {
      auto it = bigrams_.find(cur);
      const std::string& word =
          (it != bigrams_.end() && !it->second.empty())
              ? it->second[rng.below(it->second.size())]
              : starts_[rng.below(starts_.size())];
      std::size_t need = word.size() + (text.empty() ? 0 : 1);
      if (text.size() + need > budget) break;
      if (!text.empty()) text.push_back(' ');
      text += word;
      cur = word;
    }
    if (text.empty()) text = starts_[rng.below(starts_.size())].substr(0, budget);
    return encode_text(text);
  }

  unsigned min_entropy() const override { return 0; }  // declared, conservative

  bool supports(const BitStr& msg) const override {
    std::istringstream words(decode_text(msg));
    std::string tok;
    while (words >> tok)
      if (!vocab_.contains(tok)) return false;
    return true;
  }

 private:
  BitStr encode_text(const std::string& text) const {
    std::vector<std::uint8_t> raw(msg_bits_ / 8, 0);
    for (std::size_t i = 0; i < text.size() && i < raw.size(); i++)
      raw[i] = std::uint8_t(text[i]);
    return BitStr::from_bytes(raw, msg_bits_);
  }
  std::string decode_text(const BitStr& msg) const {
    std::string out;
    for (std::uint8_t b : msg.bytes())
      if (b) out.push_back(char(b));
    return out;
  }

  std::map<std::string, std::size_t> vocab_;
  std::map<std::string, std::vector<std::string>> bigrams_;
  std::vector<std::string> starts_;
};

}  // namespace

std::shared_ptr<const CoverDist> constant_dist(const BitStr& msg) {
  return std::make_shared<ConstantDist>(msg);
}

std::shared_ptr<const CoverDist> uniform_flat_dist(unsigned k, unsigned msg_bits) {
  return std::make_shared<UniformFlatDist>(k, msg_bits);
}

std::shared_ptr<const CoverDist> ngram_text_dist(const std::string& corpus_path,
                                                 unsigned msg_bits) {
  return std::make_shared<NgramTextDist>(corpus_path, msg_bits);
}

std::shared_ptr<const CoverDist> make_cover_dist(const std::string& spec,
                                                 unsigned msg_bits) {
  if (spec.rfind("constant:", 0) == 0) {
    std::string val = spec.substr(9);
    BitStr msg;
    if (val.find(':') != std::string::npos) {
      msg = BitStr::from_hex(val);
      if (msg.size() != msg_bits)
        throw Error(Errc::BadConfig, "constant message width mismatch");
    } else {
      std::uint64_t v = std::stoull(val);
      msg = BitStr(msg_bits);
      for (unsigned i = 0; i < 64 && i < msg_bits; i++)
        msg.set_bit(msg_bits - 1 - i, (v >> i) & 1);
      if (msg_bits < 64 && (v >> msg_bits) != 0)
        throw Error(Errc::BadConfig, "constant value too wide");
    }
    return constant_dist(msg);
  }
  if (spec.rfind("flat:", 0) == 0)
    return uniform_flat_dist(unsigned(std::stoul(spec.substr(5))), msg_bits);
  if (spec.rfind("ngram:", 0) == 0) return ngram_text_dist(spec.substr(6), msg_bits);
  throw Error(Errc::BadConfig, "unknown cover dist spec: " + spec);
}

unsigned minentropy_of(const CoverDist& dist) { return dist.min_entropy(); }

}  // namespace covertext
