#include "covertext/battery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covertext/error.hpp"
#include "covertext/estimators.hpp"
#include "covertext/seed.hpp"

namespace covertext {

const BatteryTest* BatteryReport::find(const std::string& name) const {
  for (const auto& t : tests)
    if (t.name == name) return &t;
  return nullptr;
}

std::string BatteryReport::text() const {
  std::ostringstream out;
  for (const auto& t : tests) {
    out << t.name << ": ";
    if (!t.applicable) {
      out << "skipped (" << t.detail << ")\n";
      continue;
    }
    out << (t.pass ? "pass" : "FAIL") << " statistic=" << t.statistic;
    if (t.z != 0) out << " z=" << t.z;
    out << " p=" << t.p;
    if (!t.detail.empty()) out << " (" << t.detail << ")";
    out << "\n";
  }
  out << "verdict=" << (pass ? "pass" : "FAIL") << " family_alpha=" << family_alpha << "\n";
  return out.str();
}

std::string BatteryReport::json() const {
  std::ostringstream out;
  out << "{\"tests\":[";
  for (std::size_t i = 0; i < tests.size(); i++) {
    const auto& t = tests[i];
    out << (i ? "," : "") << "{\"name\":\"" << t.name << "\",\"applicable\":"
        << (t.applicable ? "true" : "false") << ",\"statistic\":" << t.statistic
        << ",\"z\":" << t.z << ",\"p\":" << t.p << ",\"pass\":" << (t.pass ? "true" : "false")
        << "}";
  }
  out << "],\"family_alpha\":" << family_alpha
      << ",\"verdict\":\"" << (pass ? "pass" : "fail") << "\"}";
  return out.str();
}

namespace {

struct Extracted {
  std::vector<std::uint64_t> outputs;        // post-seed-phase extractor outputs
  std::vector<std::uint64_t> pair_outputs;   // consecutive output pairs, joint-coded
};

Extracted extract_outputs(const Transcript& t, const SecurityParams& params,
                          const HashSeed& seed) {
  Extracted e;
  std::vector<std::uint64_t> last_by_party[2];
  for (const auto& f : t.frames()) {
    if (f.round <= params.d) continue;
    std::uint64_t o = ext_seeded(seed, f.ciphertext, params.v).to_u64();
    e.outputs.push_back(o);
    auto& prev = last_by_party[f.party == Party::P0 ? 0 : 1];
    if (!prev.empty()) e.pair_outputs.push_back(prev.back() << params.v | o);
    prev.push_back(o);
  }
  return e;
}

// two-sample Pearson chi-square over [0, 2^bits)
BatteryTest two_sample_chi2(const std::string& name, const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b, unsigned bits) {
  BatteryTest t;
  t.name = name;
  std::size_t cells = std::size_t(1) << bits;
  if (a.size() < 5 * cells || b.size() < 5 * cells) {
    t.applicable = false;
    t.detail = "too few samples";
    return t;
  }
  std::vector<double> ca(cells, 0), cb(cells, 0);
  for (auto x : a) ca[x] += 1;
  for (auto x : b) cb[x] += 1;
  double na = double(a.size()), nb = double(b.size());
  double stat = 0;
  for (std::size_t i = 0; i < cells; i++) {
    double tot = ca[i] + cb[i];
    if (tot == 0) continue;
    double ea = tot * na / (na + nb), eb = tot * nb / (na + nb);
    stat += (ca[i] - ea) * (ca[i] - ea) / ea + (cb[i] - eb) * (cb[i] - eb) / eb;
  }
  t.statistic = stat;
  t.p = chi2_sf(stat, double(cells - 1));
  return t;
}

BatteryTest two_sample_bit_z(const std::string& name,
                             const std::vector<const TranscriptFrame*>& a,
                             const std::vector<const TranscriptFrame*>& b, unsigned n_ct) {
  BatteryTest t;
  t.name = name;
  if (a.empty() || b.empty()) {
    t.applicable = false;
    t.detail = "empty transcript";
    return t;
  }
  double worst_p = 1;
  double worst_z = 0;
  unsigned worst_pos = 0;
  for (unsigned pos = 0; pos < n_ct; pos++) {
    double ona = 0, onb = 0;
    for (auto* f : a) ona += f->ciphertext.bit(pos);
    for (auto* f : b) onb += f->ciphertext.bit(pos);
    double na = double(a.size()), nb = double(b.size());
    double pooled = (ona + onb) / (na + nb);
    if (pooled <= 0 || pooled >= 1) continue;
    double z = (ona / na - onb / nb) /
               std::sqrt(pooled * (1 - pooled) * (1 / na + 1 / nb));
    double p = normal_two_sided_p(z);
    if (p < worst_p) {
      worst_p = p;
      worst_z = z;
      worst_pos = pos;
    }
  }
  t.z = worst_z;
  t.statistic = std::abs(worst_z);
  t.p = std::min(1.0, worst_p * n_ct);  // Bonferroni over bit positions
  t.detail = "worst bit " + std::to_string(worst_pos);
  return t;
}

std::vector<std::uint64_t> gt_bits(const Transcript& t) {
  std::vector<std::uint64_t> bits;
  for (Party party : {Party::P0, Party::P1}) {
    auto frames = t.by_party(party);
    for (std::size_t i = 0; i + 1 < frames.size(); i += 2)
      bits.push_back(std::uint64_t(gt(frames[i]->ciphertext, frames[i + 1]->ciphertext)));
  }
  return bits;
}

}  // namespace

BatteryReport battery(const Transcript& ta, const Transcript& tb,
                      const SecurityParams& params, const Scheme& scheme,
                      const std::optional<ObserverKeys>& observer_keys,
                      const CoverDist* dist, const std::optional<HashSeed>& seed_hint,
                      double family_alpha) {
  if (ta.size() != tb.size())
    throw Error(Errc::ShapeMismatch, "battery wants equal frame counts");
  if (ta.empty()) throw Error(Errc::ShapeMismatch, "battery wants nonempty transcripts");

  BatteryReport report;
  report.family_alpha = family_alpha;

  // (1) decrypt-and-check, not a p-test
  {
    BatteryTest t;
    t.name = "decrypt-support";
    if (!observer_keys || !dist) {
      t.applicable = false;
      t.detail = observer_keys ? "no cover distribution" : "no observer keys";
    } else {
      std::size_t bad = 0, total = 0;
      for (const Transcript* tr : {&ta, &tb}) {
        for (const auto& f : tr->frames()) {
          const BitStr& sk = f.party == Party::P0 ? observer_keys->sk1 : observer_keys->sk0;
          auto m = scheme.dec(sk, f.ciphertext);
          if (!m || !dist->supports(*m)) bad++;
          total++;
        }
      }
      t.statistic = double(bad);
      t.pass = bad == 0;
      t.detail = std::to_string(bad) + "/" + std::to_string(total) + " frames off-support";
    }
    report.tests.push_back(t);
  }

  // transcripts' own seeds (what any eavesdropper computes), unless overridden
  HashSeed seed_a{}, seed_b{};
  bool have_seeds = true;
  if (seed_hint) {
    seed_a = seed_b = *seed_hint;
  } else if (ta.rounds_complete(Party::P0) >= params.d &&
             ta.rounds_complete(Party::P1) >= params.d &&
             tb.rounds_complete(Party::P0) >= params.d &&
             tb.rounds_complete(Party::P1) >= params.d) {
    seed_a = hash_from_seed_bits(compute_seed_bits(ta, params.d));
    seed_b = hash_from_seed_bits(compute_seed_bits(tb, params.d));
  } else {
    have_seeds = false;
  }

  // (2) per-bit frequencies
  auto all_a = ta.by_party(Party::P0);
  {
    auto p1 = ta.by_party(Party::P1);
    all_a.insert(all_a.end(), p1.begin(), p1.end());
  }
  auto all_b = tb.by_party(Party::P0);
  {
    auto p1 = tb.by_party(Party::P1);
    all_b.insert(all_b.end(), p1.begin(), p1.end());
  }
  report.tests.push_back(two_sample_bit_z("bit-frequency", all_a, all_b, params.n_ct));

  // (3) extractor outputs and (5) their lag-1 joint distribution
  if (have_seeds) {
    Extracted ea = extract_outputs(ta, params, seed_a);
    Extracted eb = extract_outputs(tb, params, seed_b);
    report.tests.push_back(two_sample_chi2("ext-output", ea.outputs, eb.outputs, params.v));
    report.tests.push_back(
        two_sample_chi2("ext-correlation", ea.pair_outputs, eb.pair_outputs, 2 * params.v));
  } else {
    for (const char* name : {"ext-output", "ext-correlation"}) {
      BatteryTest t;
      t.name = name;
      t.applicable = false;
      t.detail = "no seed available";
      report.tests.push_back(t);
    }
  }

  // (4) GT statistics across rounds
  {
    auto ga = gt_bits(ta);
    auto gb = gt_bits(tb);
    BatteryTest t;
    t.name = "gt-pairs";
    if (ga.size() < 30 || gb.size() < 30) {
      t.applicable = false;
      t.detail = "too few pairs";
    } else {
      double sa = 0, sb = 0;
      for (auto x : ga) sa += double(x);
      for (auto x : gb) sb += double(x);
      double na = double(ga.size()), nb = double(gb.size());
      double pooled = (sa + sb) / (na + nb);
      if (pooled > 0 && pooled < 1) {
        t.z = (sa / na - sb / nb) / std::sqrt(pooled * (1 - pooled) * (1 / na + 1 / nb));
        t.statistic = std::abs(t.z);
        t.p = normal_two_sided_p(t.z);
      }
    }
    report.tests.push_back(t);
  }

  // Bonferroni verdict across the applicable p-tests
  std::size_t p_tests = 0;
  for (const auto& t : report.tests)
    if (t.applicable && t.name != "decrypt-support") p_tests++;
  double threshold = p_tests ? family_alpha / double(p_tests) : 0;
  for (auto& t : report.tests) {
    if (!t.applicable) continue;
    if (t.name == "decrypt-support") {
      if (!t.pass) report.pass = false;
      continue;
    }
    t.pass = t.p > threshold;
    if (!t.pass) report.pass = false;
  }
  return report;
}

}  // namespace covertext
