#include "covertext/config.hpp"

#include <cstdlib>
#include <fstream>

#include "covertext/error.hpp"

namespace covertext {

void RunConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open config " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::BadConfig, "bad config line: " + line);
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "profile") profile = val;
    else if (key == "scheme") scheme = val;
    else if (key == "dist") dist = val;
    else if (key == "mode") mode = val;
    else if (key == "rngseed") rng_seed = std::stoull(val);
    else if (key == "role") role = val;
    else if (key == "peer") peer = val;
    else if (key == "msg") msgs.push_back(val);
    else if (key == "expect") expect = std::uint32_t(std::stoul(val));
    else if (key == "trailing") trailing = std::uint32_t(std::stoul(val));
    else if (key == "transcript_out") transcript_out = val;
    else if (key == "keys_out") keys_out = val;
    else if (key == "group_file") group_file = val;
    else throw Error(Errc::BadConfig, "unknown config key: " + key);
  }
}

void RunConfig::apply_env() {
  if (const char* s = std::getenv("COVERTEXT_RNG_SEED")) rng_seed = std::stoull(s);
}

BitStr parse_message_hex(const std::string& text, unsigned len_bits) {
  if (text.find(':') != std::string::npos) {
    BitStr m = BitStr::from_hex(text);
    if (m.size() != len_bits)
      throw Error(Errc::BadLength, "message must be " + std::to_string(len_bits) + " bits");
    return m;
  }
  return BitStr::from_hex(std::to_string(len_bits) + ":" + text);
}

std::string default_scheme_spec(Profile p) {
  return p == Profile::Tiny ? "tiny" : "elg:desk512";
}

const GroupParams& default_kex_group(Profile p) {
  return p == Profile::Tiny ? group_tiny16() : group_desk512();
}

ResolvedRun resolve_config(const RunConfig& cfg) {
  ResolvedRun r;
  r.profile = parse_profile(cfg.profile);
  r.params = resolve_profile(r.profile);
  r.mode = parse_mode(cfg.mode);
  r.rng_seed = cfg.rng_seed;
  r.trailing = cfg.trailing;
  r.expect = cfg.expect;

  if (cfg.role == "p0" || cfg.role == "P0") r.role = Party::P0;
  else if (cfg.role == "p1" || cfg.role == "P1") r.role = Party::P1;
  else throw Error(Errc::BadConfig, "role must be p0 or p1");

  std::string scheme_spec = cfg.scheme.empty() ? default_scheme_spec(r.profile) : cfg.scheme;
  if (!cfg.group_file.empty()) {
    static GroupParams loaded;  // keeps the group alive for the run
    loaded = load_group_file(cfg.group_file);
    loaded.validate();
    unsigned msg_bits = loaded.ell / 2 - 1;
    if (loaded.ell == group_desk512().ell) msg_bits = kDeskMsgBits;
    r.scheme = std::make_shared<ElgScheme>(loaded, msg_bits);
    r.kex_group = &loaded;
  } else {
    r.scheme = make_scheme(scheme_spec);
    r.kex_group = &default_kex_group(r.profile);
  }
  if (r.scheme->n_ct() != r.params.n_ct)
    throw Error(Errc::BadConfig, "scheme ciphertext width does not match profile");
  r.dist = make_cover_dist(cfg.dist, r.scheme->msg_bits());

  for (const auto& m : cfg.msgs) r.messages.push_back(parse_message_hex(m, r.params.kappa));
  return r;
}

SessionSpec ResolvedRun::session_spec(Party msg_sender) const {
  SessionSpec spec;
  spec.params = params;
  spec.scheme = scheme;
  spec.kex_group = kex_group;
  spec.dist = dist;
  spec.mode = mode;
  spec.rng_seed = rng_seed;
  for (const auto& m : messages) spec.messages.push_back({msg_sender, m});
  spec.trailing_rounds = trailing;
  return spec;
}

}  // namespace covertext
