#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "covertext/battery.hpp"
#include "covertext/engine.hpp"
#include "covertext/estimators.hpp"
#include "covertext/pmf.hpp"
#include "covertext/scheme.hpp"

using namespace covertext;

TEST_CASE("statistical distance basics") {
  Pmf fair(1, {0.5, 0.5});
  Pmf skew(1, {0.375, 0.625});
  CHECK(stat_distance(fair, fair) == 0.0);
  CHECK(stat_distance(fair, skew) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK_THROWS_AS(stat_distance(fair, Pmf(2, {0.25, 0.25, 0.25, 0.25})), Error);
  CHECK_THROWS_AS(Pmf(1, {0.7, 0.7}), Error);
  CHECK_THROWS_AS(Pmf(1, {-0.1, 1.1}), Error);
}

TEST_CASE("half-L1 equals the max-set form and obeys the triangle inequality") {
  RngStream rng(91, 0);
  auto random_pmf = [&](unsigned bits) {
    std::vector<double> p(1u << bits);
    double sum = 0;
    for (double& x : p) sum += (x = double(rng.below(1000) + 1));
    for (double& x : p) x /= sum;
    return Pmf(bits, p);
  };
  for (int i = 0; i < 300; i++) {
    Pmf a = random_pmf(4), b = random_pmf(4), c = random_pmf(4);
    double ab = stat_distance(a, b);
    REQUIRE(ab == doctest::Approx(stat_distance_maxset(a, b)).epsilon(1e-12));
    REQUIRE(ab <= stat_distance(a, c) + stat_distance(c, b) + 1e-12);
    REQUIRE(ab == doctest::Approx(stat_distance(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("collision probability estimator") {
  RngStream rng(93, 0);
  SUBCASE("flat source") {
    std::vector<std::uint64_t> samples;
    for (int i = 0; i < 100000; i++) samples.push_back(rng.bits(6));
    auto est = collision_prob(samples);
    CHECK(est.cp == doctest::Approx(1.0 / 64).epsilon(0.1));
    CHECK(est.renyi2_bits() == doctest::Approx(6.0).epsilon(0.05));
    CHECK(est.variance > 0);
  }
  SUBCASE("constant source") {
    std::vector<std::uint64_t> samples(1000, 7);
    CHECK(collision_prob(samples).cp == 1.0);
  }
  SUBCASE("elgamal ciphertexts on p23 hit the enumerated value") {
    ElgScheme p23(group_p23(), 1);
    KeyPair kp = p23.gen(rng);
    BitStr m = BitStr::from_u64(0, 1);
    // exact: flat over 4(q-1) = 40 distinct ciphertexts
    auto support = p23.enumerate(kp.pk, m);
    REQUIRE(support.size() == 40);
    std::vector<BitStr> samples;
    for (int i = 0; i < 60000; i++) samples.push_back(p23.enc(kp.pk, m, rng));
    CHECK(collision_prob(samples).cp == doctest::Approx(1.0 / 40).epsilon(0.05));
  }
  std::vector<std::uint64_t> one(1, 0);
  CHECK_THROWS_AS(collision_prob(one), Error);
}

TEST_CASE("gt_bias_exact on the documented supports") {
  std::vector<BitStr> all2;
  for (std::uint64_t x = 0; x < 4; x++) all2.push_back(BitStr::from_u64(x, 2));
  CHECK(gt_bias_exact(all2) == doctest::Approx(0.125).epsilon(1e-12));  // 10/16 - 1/2

  std::vector<BitStr> lone{BitStr::from_u64(5, 4)};
  CHECK(gt_bias_exact(lone) == doctest::Approx(0.5).epsilon(1e-12));  // GT == 1 always

  std::vector<BitStr> flat8;
  for (std::uint64_t x = 0; x < 8; x++) flat8.push_back(BitStr::from_u64(x * 3 + 1, 6));
  CHECK(gt_bias_exact(flat8) == doctest::Approx(1.0 / 16).epsilon(1e-12));
}

TEST_CASE("incomplete gamma against frozen reference values") {
  // references computed with an independent library implementation
  CHECK(chi2_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi2_sf(9.487729036781154, 4) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi2_sf(30.57791416689249, 15) == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(chi2_sf(310.45738600489926, 255) == doctest::Approx(0.01000000229465536).epsilon(1e-7));
  CHECK(chi2_sf(0.5, 3) == doctest::Approx(0.9188914116546758).epsilon(1e-10));
  CHECK(gamma_q(0.5, 2.0) == doctest::Approx(0.04550026389635857).epsilon(1e-10));
  CHECK(gamma_q(7.5, 3.0) == doctest::Approx(0.9797477467178134).epsilon(1e-10));
  CHECK(gamma_q(120.0, 100.0) == doctest::Approx(0.9717696060351343).epsilon(1e-10));
  CHECK(gamma_q(2.0, 0.0) == 1.0);
}

TEST_CASE("chi_square p-values are uniform under the null") {
  RngStream rng(97, 0);
  std::vector<double> pvals;
  for (int run = 0; run < 200; run++) {
    std::vector<std::uint64_t> samples;
    for (int i = 0; i < 2000; i++) samples.push_back(rng.bits(4));
    pvals.push_back(chi_square(samples, 4));
  }
  std::sort(pvals.begin(), pvals.end());
  double ks = 0;
  for (std::size_t i = 0; i < pvals.size(); i++) {
    double empirical = double(i + 1) / double(pvals.size());
    ks = std::max(ks, std::abs(empirical - pvals[i]));
  }
  CHECK(ks < 0.12);  // ~KS 5% critical value for n = 200, with headroom

  SUBCASE("constant stream is annihilated") {
    std::vector<std::uint64_t> flat(5000, 9);
    CHECK(chi_square(flat, 4) < 1e-12);
  }
  SUBCASE("too few samples") {
    std::vector<std::uint64_t> few(79, 0);
    CHECK_THROWS_AS(chi_square(few, 4), Error);
  }
}

namespace {

RunReport tiny_session(Mode mode, std::uint64_t seed, std::uint32_t rounds) {
  SessionSpec spec;
  spec.params = resolve_profile(Profile::Tiny);
  spec.scheme = tiny_scheme();
  spec.kex_group = &group_tiny16();
  spec.dist = uniform_flat_dist(2, 2);
  spec.mode = mode;
  spec.rng_seed = seed;
  spec.total_rounds_override = rounds;
  return run_local_session(spec);
}

}  // namespace

TEST_CASE("battery: honest vs honest passes, and the report is symmetric") {
  RunReport a = tiny_session(Mode::Honest, 1000, 400);
  RunReport b = tiny_session(Mode::Honest, 2000, 400);
  SecurityParams params = resolve_profile(Profile::Tiny);
  auto scheme = tiny_scheme();
  auto dist = uniform_flat_dist(2, 2);

  ObserverKeys keys{a.keys_p0.sk, a.keys_p1.sk};
  BatteryReport fwd = battery(a.frames, b.frames, params, *scheme, std::nullopt, dist.get());
  CHECK(fwd.pass);
  REQUIRE(fwd.find("ext-output") != nullptr);
  CHECK(fwd.find("decrypt-support")->applicable == false);  // no keys passed

  BatteryReport rev = battery(b.frames, a.frames, params, *scheme, std::nullopt, dist.get());
  CHECK(rev.pass);
  CHECK(fwd.find("gt-pairs")->z == doctest::Approx(-rev.find("gt-pairs")->z).epsilon(1e-9));
  CHECK(fwd.find("ext-output")->statistic ==
        doctest::Approx(rev.find("ext-output")->statistic).epsilon(1e-9));

  // decrypt-support works when the observer holds this run's keys
  BatteryReport with_keys =
      battery(a.frames, a.frames, params, *scheme, keys, dist.get());
  CHECK(with_keys.find("decrypt-support")->applicable);
  CHECK(with_keys.find("decrypt-support")->pass);

  Transcript shorter;
  shorter.push(a.frames[0]);
  CHECK_THROWS_AS(battery(a.frames, shorter, params, *scheme, std::nullopt, nullptr), Error);
}

TEST_CASE("battery reports render as text and json") {
  RunReport a = tiny_session(Mode::Honest, 3000, 200);
  RunReport b = tiny_session(Mode::Honest, 4000, 200);
  BatteryReport rep = battery(a.frames, b.frames, resolve_profile(Profile::Tiny),
                              *tiny_scheme(), std::nullopt, nullptr);
  std::string text = rep.text();
  CHECK(text.find("verdict=") != std::string::npos);
  std::string json = rep.json();
  CHECK(json.find("\"tests\":[") != std::string::npos);
  CHECK(json.find("\"verdict\":\"pass\"") != std::string::npos);
}
