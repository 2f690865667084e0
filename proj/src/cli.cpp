#include "covertext/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "covertext/battery.hpp"
#include "covertext/config.hpp"
#include "covertext/error.hpp"
#include "covertext/estimators.hpp"
#include "covertext/session.hpp"

namespace covertext {

namespace {

void add_run_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "key=value config file");
  cmd->add_option("--profile", cfg.profile, "desk | tiny | bench");
  cmd->add_option("--scheme", cfg.scheme, "scheme spec (default per profile)");
  cmd->add_option("--dist", cfg.dist, "cover distribution spec");
  cmd->add_option("--mode", cfg.mode, "honest | subliminal");
  cmd->add_option("--seed", cfg.rng_seed, "rng seed");
  cmd->add_option("--msg", cfg.msgs, "hidden message hex (repeatable)");
  cmd->add_option("--expect", cfg.expect, "embeddings expected from the peer");
  cmd->add_option("--trailing", cfg.trailing, "extra idle exchange-rounds");
  cmd->add_option("--out", cfg.transcript_out, "transcript output path");
  cmd->add_option("--keys-out", cfg.keys_out, "directory for key dumps");
  cmd->add_option("--group-file", cfg.group_file, "ElGamal group parameter file");
}

RunConfig finish_config(RunConfig cfg, const std::string& config_path) {
  if (!config_path.empty()) {
    RunConfig base;
    base.merge_file(config_path);
    // flags win over file values only where changed from defaults; simplest
    // consistent rule: file first, then explicit flags reapplied by CLI11 --
    // so merge the file into a fresh config and copy flag-set fields across.
    // CLI11 already stored flag values into cfg; fields left at defaults are
    // taken from the file.
    RunConfig defaults;
    auto pick = [](auto& dst, const auto& flag, const auto& def, const auto& file) {
      dst = (flag == def) ? file : flag;
    };
    RunConfig out = base;
    pick(out.profile, cfg.profile, defaults.profile, base.profile);
    pick(out.scheme, cfg.scheme, defaults.scheme, base.scheme);
    pick(out.dist, cfg.dist, defaults.dist, base.dist);
    pick(out.mode, cfg.mode, defaults.mode, base.mode);
    pick(out.rng_seed, cfg.rng_seed, defaults.rng_seed, base.rng_seed);
    pick(out.role, cfg.role, defaults.role, base.role);
    pick(out.peer, cfg.peer, defaults.peer, base.peer);
    pick(out.expect, cfg.expect, defaults.expect, base.expect);
    pick(out.trailing, cfg.trailing, defaults.trailing, base.trailing);
    pick(out.transcript_out, cfg.transcript_out, defaults.transcript_out, base.transcript_out);
    pick(out.keys_out, cfg.keys_out, defaults.keys_out, base.keys_out);
    pick(out.group_file, cfg.group_file, defaults.group_file, base.group_file);
    if (!cfg.msgs.empty()) out.msgs = cfg.msgs;
    cfg = out;
  }
  cfg.apply_env();
  return cfg;
}

TranscriptHeader header_for(const RunConfig& cfg, const ResolvedRun& run) {
  TranscriptHeader h;
  h.profile = std::string(profile_name(run.profile));
  h.mode = std::string(mode_name(run.mode));
  h.rngseed = run.rng_seed;
  h.scheme = run.scheme->id();
  h.dist = run.dist->spec();
  (void)cfg;
  return h;
}

void dump_keys(const std::string& dir, const Scheme& scheme, const RunReport& report) {
  save_key_file(dir + "/pk0.hex", scheme.id(), report.keys_p0.pk);
  save_key_file(dir + "/sk0.hex", scheme.id(), report.keys_p0.sk);
  save_key_file(dir + "/pk1.hex", scheme.id(), report.keys_p1.pk);
  save_key_file(dir + "/sk1.hex", scheme.id(), report.keys_p1.sk);
}

int cmd_run_local(const RunConfig& raw) {
  ResolvedRun run = resolve_config(raw);
  SessionSpec spec = run.session_spec(run.role);
  RunReport report = run_local_session(spec);

  std::cout << "profile=" << profile_name(run.profile) << " mode=" << mode_name(run.mode)
            << " scheme=" << run.scheme->id() << " rngseed=" << run.rng_seed << "\n";
  std::cout << "rounds=" << report.frames.size() / 2 << " frames=" << report.frames.size()
            << "\n";
  if (report.seed) std::cout << "seed=" << report.seed->bits.hex() << "\n";
  auto attempts = report.attempts_p0;
  attempts.insert(attempts.end(), report.attempts_p1.begin(), report.attempts_p1.end());
  if (!attempts.empty()) {
    double mean = std::accumulate(attempts.begin(), attempts.end(), 0.0) / double(attempts.size());
    std::uint64_t worst = *std::max_element(attempts.begin(), attempts.end());
    std::cout << "embedded_blocks=" << attempts.size() << " mean_attempts=" << mean
              << " max_attempts=" << worst << "\n";
  }
  for (const auto& d : report.diagnostics) std::cout << "diag: " << d << "\n";
  for (const auto& m : report.recovered) std::cout << "recovered=" << m.hex() << "\n";

  if (!raw.transcript_out.empty())
    write_transcript_file(raw.transcript_out, header_for(raw, run), report.frames);
  if (!raw.keys_out.empty()) dump_keys(raw.keys_out, *run.scheme, report);

  if (run.mode == Mode::Subliminal) {
    if (report.recovered.size() != run.messages.size()) {
      std::cout << "verdict=FAIL (recovered " << report.recovered.size() << "/"
                << run.messages.size() << ")\n";
      return 1;
    }
    for (std::size_t i = 0; i < run.messages.size(); i++)
      if (!(report.recovered[i] == run.messages[i])) {
        std::cout << "verdict=FAIL (message " << i << " mismatch)\n";
        return 1;
      }
  }
  std::cout << "verdict=ok\n";
  return 0;
}

int cmd_tcp(const RunConfig& raw, bool is_server, std::uint16_t listen_port,
            const std::string& tap_path) {
  ResolvedRun run = resolve_config(raw);

  // Both parties derive both key pairs from the shared seed (the mandated
  // keys are public context for the two conspirators).
  RngStream kgen(run.rng_seed, 0);
  KeyPair kp0 = run.scheme->gen(kgen);
  KeyPair kp1 = run.scheme->gen(kgen);
  bool am_p0 = run.role == Party::P0;

  EngineConfig ec{run.role, run.mode, run.params, run.scheme, run.kex_group,
                  run.dist, am_p0 ? kp0 : kp1, am_p0 ? kp1.pk : kp0.pk};
  PartyEngine engine(std::move(ec));
  RngStream rng(run.rng_seed, am_p0 ? 1 : 2);

  PartySchedule schedule;
  schedule.my_msgs = run.messages;
  schedule.peer_msgs = run.expect;
  // total rounds must cover my messages plus the peer's
  std::uint32_t p_total = std::uint32_t(run.messages.size()) + run.expect;
  schedule.total_rounds = run.params.d + run.params.kex_blocks() +
                          p_total * run.params.comm_blocks() + run.trailing;
  // a P1-sent final embedding needs one extra round for P0 to collect it
  if (p_total > 0) {
    Party last_sender = run.messages.empty() ? other(run.role) : run.role;
    if (last_sender == Party::P1) schedule.total_rounds += 1;
  }

  std::unique_ptr<FrameTap> tap;
  if (!tap_path.empty())
    tap = std::make_unique<FrameTap>(tap_path, header_for(raw, run));

  PartyOutcome outcome;
  if (is_server) {
    TcpServer server(listen_port);
    std::cout << "listening on 127.0.0.1:" << server.port() << "\n";
    TcpFrameStream stream(server.accept_one());
    outcome = run_party_session(engine, stream, rng, schedule, tap.get());
  } else {
    auto colon = raw.peer.rfind(':');
    if (colon == std::string::npos)
      throw Error(Errc::BadConfig, "peer must be host:port");
    TcpFrameStream stream(tcp_connect(raw.peer.substr(0, colon),
                                      std::uint16_t(std::stoul(raw.peer.substr(colon + 1)))));
    outcome = run_party_session(engine, stream, rng, schedule, tap.get());
  }
  if (tap) tap->write();
  for (const auto& d : outcome.diagnostics) std::cout << "diag: " << d << "\n";
  for (const auto& m : outcome.recovered) std::cout << "recovered=" << m.hex() << "\n";
  if (run.expect > 0 && outcome.recovered.size() != run.expect) {
    std::cout << "verdict=FAIL (recovered " << outcome.recovered.size() << "/" << run.expect
              << ")\n";
    return 1;
  }
  std::cout << "verdict=ok\n";
  return 0;
}

int cmd_battery(const std::string& a_path, const std::string& b_path,
                const std::string& sk0_path, const std::string& sk1_path, bool as_json,
                double alpha) {
  auto [ha, ta] = read_transcript_file(a_path);
  auto [hb, tb] = read_transcript_file(b_path);
  if (ha.profile != hb.profile)
    throw Error(Errc::ShapeMismatch, "transcripts come from different profiles");
  SecurityParams params = resolve_profile(parse_profile(ha.profile));
  auto scheme = make_scheme(ha.scheme.empty() ? default_scheme_spec(parse_profile(ha.profile))
                                              : ha.scheme);
  std::optional<ObserverKeys> keys;
  if (!sk0_path.empty() && !sk1_path.empty()) {
    auto [id0, sk0] = load_key_file(sk0_path);
    auto [id1, sk1] = load_key_file(sk1_path);
    if (id0 != scheme->id() || id1 != scheme->id())
      throw Error(Errc::BadConfig, "key files belong to a different scheme");
    keys = ObserverKeys{sk0, sk1};
  }
  std::shared_ptr<const CoverDist> dist;
  if (!ha.dist.empty()) dist = make_cover_dist(ha.dist, scheme->msg_bits());
  BatteryReport report =
      battery(ta, tb, params, *scheme, keys, dist.get(), std::nullopt, alpha);
  std::cout << (as_json ? report.json() + "\n" : report.text());
  return report.pass ? 0 : 1;
}

int cmd_attack_demo(unsigned t, std::size_t trials, std::uint64_t seed,
                    const std::string& scheme_spec) {
  auto base = make_scheme(scheme_spec);
  auto lsb = [](const BitStr& c) { return int(c.bit(c.size() - 1)); };
  auto wrapped = biasing_wrap(base, lsb, t);

  RngStream rng(seed, 7);
  KeyPair kp = wrapped->gen(rng);
  BitStr m(base->msg_bits());  // fixed cover message

  std::size_t ones = 0;
  for (std::size_t i = 0; i < trials; i++)
    ones += std::size_t(lsb(wrapped->enc(kp.pk, m, rng)));
  double freq = double(ones) / double(trials);
  double bound = 1.0 - std::pow(2.0, -double(t));
  std::cout << "decoder_bias=" << freq << " bound=" << bound << " trials=" << trials << "\n";

  // The one-ciphertext-at-a-time strawman under E': embed bit b by
  // re-encrypting until lsb(c) = b. For b = 0 the wrapper starves it.
  std::size_t per = trials / 10;
  std::size_t errors[2] = {0, 0};
  for (int b = 0; b < 2; b++) {
    for (std::size_t i = 0; i < per; i++) {
      BitStr c;
      bool hit = false;
      for (int attempt = 0; attempt < 16 && !hit; attempt++) {
        c = wrapped->enc(kp.pk, m, rng);
        hit = lsb(c) == b;
      }
      if (lsb(c) != b) errors[b]++;
    }
    std::cout << "strawman_error_rate[msg=" << b << "]=" << double(errors[b]) / double(per)
              << "\n";
  }
  double worst = std::max(errors[0], errors[1]) / double(per);
  std::cout << "strawman_worst_error=" << worst << "\n";
  bool ok = freq >= bound - 3 * std::sqrt(bound * (1 - bound) / double(trials)) && worst >= 0.49;
  std::cout << "verdict=" << (ok ? "ok" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

// defined in cli_selftest.cpp
int cmd_selftest();
int cmd_bench(const std::string& profile_name_arg);

int cli_main(int argc, char** argv) {
  CLI::App app{"subliminal-channel protocol stack and verification harness"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  auto* run_local = app.add_subcommand("run-local", "run both parties in-process");
  add_run_flags(run_local, cfg, config_path);

  auto* serve = app.add_subcommand("serve", "run one party as a TCP listener");
  std::uint16_t listen_port = 7753;
  std::string tap_path;
  add_run_flags(serve, cfg, config_path);
  serve->add_option("--listen", listen_port, "listen port");
  serve->add_option("--tap", tap_path, "record the session to a transcript file");
  serve->add_option("--role", cfg.role, "p0 | p1");

  auto* connect = app.add_subcommand("connect", "run one party as a TCP client");
  add_run_flags(connect, cfg, config_path);
  connect->add_option("--peer", cfg.peer, "host:port");
  connect->add_option("--tap", tap_path, "record the session to a transcript file");
  connect->add_option("--role", cfg.role, "p0 | p1");

  auto* eaves = app.add_subcommand("eavesdrop", "passive recording relay");
  std::string forward, record_path = "tap.transcript";
  std::string eprofile = "desk", emode = "unknown";
  std::uint64_t eseed = 0;
  eaves->add_option("--listen", listen_port, "listen port")->required();
  eaves->add_option("--forward", forward, "host:port to forward to")->required();
  eaves->add_option("--record", record_path, "transcript output path");
  eaves->add_option("--profile", eprofile, "profile (fixes the frame width)");
  eaves->add_option("--mode", emode, "mode stamped into the header");
  eaves->add_option("--seed", eseed, "rngseed stamped into the header");

  auto* attack = app.add_subcommand("attack-demo", "locally decodable strawman vs biasing E'");
  unsigned attack_t = 10;
  std::size_t attack_trials = 100000;
  std::uint64_t attack_seed = 1;
  std::string attack_scheme = "elg:desk512";
  attack->add_option("--t", attack_t, "biasing resample budget");
  attack->add_option("--trials", attack_trials, "encryptions to measure");
  attack->add_option("--seed", attack_seed, "rng seed");
  attack->add_option("--scheme", attack_scheme, "base scheme spec");

  auto* bat = app.add_subcommand("battery", "distinguisher battery over two transcripts");
  std::string a_path, b_path, sk0_path, sk1_path;
  bool as_json = false;
  double alpha = 1e-3;
  bat->add_option("--a", a_path, "first transcript")->required();
  bat->add_option("--b", b_path, "second transcript")->required();
  bat->add_option("--sk0", sk0_path, "P0 secret key file (enables decrypt checks)");
  bat->add_option("--sk1", sk1_path, "P1 secret key file");
  bat->add_flag("--json", as_json, "machine-readable report");
  bat->add_option("--alpha", alpha, "family-wise rejection level");

  auto* self = app.add_subcommand("selftest", "exhaustive small-instance oracles");
  auto* bench = app.add_subcommand("bench", "rejection-sampling and group-arithmetic throughput");
  std::string bench_profile = "desk";
  bench->add_option("--profile", bench_profile, "profile to benchmark");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run_local->parsed()) return cmd_run_local(finish_config(cfg, config_path));
    if (serve->parsed()) return cmd_tcp(finish_config(cfg, config_path), true, listen_port, tap_path);
    if (connect->parsed()) return cmd_tcp(finish_config(cfg, config_path), false, 0, tap_path);
    if (eaves->parsed()) {
      SecurityParams params = resolve_profile(parse_profile(eprofile));
      auto colon = forward.rfind(':');
      if (colon == std::string::npos) throw Error(Errc::BadConfig, "forward must be host:port");
      TranscriptHeader header;
      header.profile = eprofile;
      header.mode = emode;
      header.rngseed = eseed;
      TcpServer server(listen_port);
      std::cout << "relaying 127.0.0.1:" << server.port() << " -> " << forward << "\n";
      std::size_t n = eavesdrop_relay(server, forward.substr(0, colon),
                                      std::uint16_t(std::stoul(forward.substr(colon + 1))),
                                      record_path, header, params.n_ct);
      std::cout << "recorded " << n << " frames to " << record_path << "\n";
      return 0;
    }
    if (attack->parsed())
      return cmd_attack_demo(attack_t, attack_trials, attack_seed, attack_scheme);
    if (bat->parsed()) return cmd_battery(a_path, b_path, sk0_path, sk1_path, as_json, alpha);
    if (self->parsed()) return cmd_selftest();
    if (bench->parsed()) return cmd_bench(bench_profile);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace covertext
