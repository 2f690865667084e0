#include <chrono>
#include <iostream>
#include <numeric>

#include "covertext/chacha.hpp"
#include "covertext/config.hpp"
#include "covertext/engine.hpp"
#include "covertext/error.hpp"
#include "covertext/estimators.hpp"
#include "covertext/pmf.hpp"
#include "covertext/sampler.hpp"

namespace covertext {

namespace {

bool check(const char* name, bool ok) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
  return ok;
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

int cmd_selftest() {
  bool ok = true;

  // ChaCha20 block vector (RFC 8439, 2.3.2)
  {
    std::uint8_t key[32], nonce[12] = {0, 0, 0, 9, 0, 0, 0, 0x4a, 0, 0, 0, 0}, out[64];
    for (int i = 0; i < 32; i++) key[i] = std::uint8_t(i);
    chacha20_block(key, 1, nonce, out);
    static const std::uint8_t expect[8] = {0x10, 0xf1, 0xe7, 0xe4, 0xd1, 0x3b, 0x59, 0x15};
    bool match = true;
    for (int i = 0; i < 8; i++) match = match && out[i] == expect[i];
    ok &= check("chacha20 block vector", match);
  }

  // GT bias identity on every flat support of width 3
  {
    bool all = true;
    for (unsigned mask = 1; mask < 256 && all; mask++) {
      std::vector<BitStr> support;
      for (unsigned x = 0; x < 8; x++)
        if (mask >> x & 1) support.push_back(BitStr::from_u64(x, 3));
      double want = 1.0 / (2.0 * double(support.size()));
      all = std::abs(gt_bias_exact(support) - want) < 1e-15;
    }
    ok &= check("gt bias = CP/2 on all 3-bit supports", all);
  }

  // group structure
  {
    bool groups_ok = true;
    try {
      group_p23().validate();
      group_tiny16().validate();
      group_desk512().validate(10);
    } catch (const Error&) {
      groups_ok = false;
    }
    ok &= check("named groups validate", groups_ok);
  }

  // exhaustive ElGamal correctness on the p23 group
  {
    ElgScheme elg(group_p23(), 1);
    RngStream rng(11, 0);
    bool all = true;
    for (int trial = 0; trial < 20 && all; trial++) {
      KeyPair kp = elg.gen(rng);
      for (std::uint64_t m = 0; m < 2 && all; m++) {
        BitStr msg = BitStr::from_u64(m, 1);
        auto back = elg.dec(kp.sk, elg.enc(kp.pk, msg, rng));
        all = back && *back == msg;
      }
    }
    ok &= check("p23 ElGamal round-trips", all);
  }

  // tiny-scheme fiber exactness: rejection sampling over a uniform target
  // reproduces the plain encryption pmf
  {
    auto tiny = tiny_scheme();
    RngStream rng(5, 0);
    KeyPair kp = tiny->gen(rng);
    BitStr m = BitStr::from_u64(1, 2);
    auto support = tiny->enumerate(kp.pk, m);
    HashSeed seed{Gf64{0x9e3779b97f4a7c15ULL}, Gf64{0x5851f42d4c957f2dULL}};
    std::vector<double> pmf(256, 0.0);
    bool fibers_ok = true;
    for (std::uint64_t target = 0; target < 4; target++) {
      std::vector<const BitStr*> fiber;
      for (const auto& c : support)
        if (ext_seeded(seed, c, 2).to_u64() == target) fiber.push_back(&c);
      if (fiber.empty()) {
        fibers_ok = false;
        break;
      }
      for (const auto* c : fiber) pmf[c->to_u64()] += 0.25 / double(fiber.size());
    }
    double dist = 1.0;
    if (fibers_ok) {
      Pmf plain = Pmf::from_flat_support(8, support);
      dist = stat_distance(Pmf(8, pmf), plain);
    }
    ok &= check("tiny fiber pmf matches plain encryption exactly", fibers_ok && dist < 1e-12);
  }

  // tiny-profile end-to-end run
  {
    SessionSpec spec;
    spec.params = resolve_profile(Profile::Tiny);
    spec.scheme = tiny_scheme();
    spec.kex_group = &group_tiny16();
    spec.dist = uniform_flat_dist(2, 2);
    spec.mode = Mode::Subliminal;
    spec.rng_seed = 4;
    BitStr msg = BitStr::from_u64(0xa5, 8);
    spec.messages = {{Party::P0, msg}};
    RunReport report = run_local_session(spec);
    ok &= check("tiny end-to-end recovery",
                report.recovered.size() == 1 && report.recovered[0] == msg);
    std::string why;
    ok &= check("tiny frames decrypt to logged cover messages",
                verify_cover_conversation(report, *spec.scheme, &why));
  }

  std::cout << (ok ? "selftest ok" : "selftest FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_bench(const std::string& profile_name_arg) {
  Profile profile = parse_profile(profile_name_arg);
  SecurityParams params = resolve_profile(profile);
  auto scheme = make_scheme(default_scheme_spec(profile));
  RngStream rng(99, 0);
  KeyPair kp = scheme->gen(rng);
  BitStr m(scheme->msg_bits());

  double t0 = now_ms();
  const int encs = profile == Profile::Tiny ? 200000 : 2000;
  for (int i = 0; i < encs; i++) scheme->enc(kp.pk, m, rng);
  double enc_ms = (now_ms() - t0) / encs;

  HashSeed seed{Gf64{0x243f6a8885a308d3ULL}, Gf64{0x13198a2e03707344ULL}};
  std::uint64_t attempts_total = 0;
  const int embeds = profile == Profile::Tiny ? 20000 : 200;
  t0 = now_ms();
  for (int i = 0; i < embeds; i++) {
    BitStr target = rng.bitstr(params.v);
    attempts_total +=
        rejection_sample(*scheme, kp.pk, m, seed, target, params.max_attempts, rng).attempts;
  }
  double embed_ms = (now_ms() - t0) / embeds;

  std::cout << "profile=" << profile_name(profile) << " scheme=" << scheme->id() << "\n"
            << "enc_us=" << enc_ms * 1000 << "\n"
            << "embed_us=" << embed_ms * 1000 << " mean_attempts="
            << double(attempts_total) / embeds << " expected=" << (1u << params.v) << "\n"
            << "hidden_bits_per_ciphertext=" << params.v << "\n"
            << "attempts_per_sec=" << (embed_ms > 0 ? 1000.0 * double(attempts_total) / embeds / embed_ms : 0)
            << "\n";
  return 0;
}

}  // namespace covertext
