#include <doctest.h>

#include <cmath>
#include <map>

#include "covertext/error.hpp"
#include "covertext/estimators.hpp"
#include "covertext/sampler.hpp"
#include "covertext/seed.hpp"

using namespace covertext;

namespace {

// a hash seed under which every (message, target) fiber of the tiny scheme
// is nonempty at v = 2 (checked by the first test below)
const HashSeed kTinySeed{Gf64{0x9e3779b97f4a7c15ULL}, Gf64{0x5851f42d4c957f2dULL}};

}  // namespace

TEST_CASE("tiny fibers: all four targets reachable, conditional law exact") {
  auto tiny = tiny_scheme();
  RngStream rng(61, 0);
  KeyPair kp = tiny->gen(rng);
  for (std::uint64_t mval = 0; mval < 4; mval++) {
    BitStr m = BitStr::from_u64(mval, 2);
    auto support = tiny->enumerate(kp.pk, m);
    std::map<std::uint64_t, std::vector<std::uint64_t>> fibers;
    for (const auto& c : support)
      fibers[ext_seeded(kTinySeed, c, 2).to_u64()].push_back(c.to_u64());
    REQUIRE(fibers.size() == 4);
    for (auto& [target, members] : fibers) REQUIRE(members.size() == 16);
  }

  SUBCASE("sampled output distribution is flat on the fiber") {
    BitStr m = BitStr::from_u64(3, 2);
    BitStr target = BitStr::from_u64(1, 2);
    std::map<std::uint64_t, std::uint64_t> hits;
    for (int i = 0; i < 40000; i++) {
      auto out = rejection_sample(*tiny, kp.pk, m, kTinySeed, target, 64, rng);
      REQUIRE(ext_seeded(kTinySeed, out.ciphertext, 2) == target);
      REQUIRE(*tiny->dec(kp.sk, out.ciphertext) == m);
      hits[out.ciphertext.to_u64()]++;
    }
    REQUIRE(hits.size() == 16);
    std::vector<std::uint64_t> values;
    for (auto& [c, n] : hits)
      for (std::uint64_t i = 0; i < n; i++) values.push_back(std::uint64_t(
          std::distance(hits.begin(), hits.find(c))));
    CHECK(chi_square(values, 4) > 0.001);
  }
}

TEST_CASE("rejection attempt counts follow the geometric law") {
  auto tiny = tiny_scheme();
  RngStream rng(67, 0);
  KeyPair kp = tiny->gen(rng);
  BitStr m = BitStr::from_u64(0, 2);
  double total = 0;
  const int trials = 40000;
  // v = 2 on the tiny scheme: expected 4 attempts
  for (int i = 0; i < trials; i++) {
    BitStr target = rng.bitstr(2);
    total += double(rejection_sample(*tiny, kp.pk, m, kTinySeed, target, 256, rng).attempts);
  }
  CHECK(total / trials == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("a replayed rng hits on the first attempt") {
  auto tiny = tiny_scheme();
  RngStream rng(71, 0);
  KeyPair kp = tiny->gen(rng);
  BitStr m = BitStr::from_u64(2, 2);
  RngStream fresh(555, 3), replay(555, 3);
  BitStr first = tiny->enc(kp.pk, m, fresh);
  BitStr target = ext_seeded(kTinySeed, first, 2);
  auto out = rejection_sample(*tiny, kp.pk, m, kTinySeed, target, 64, replay);
  CHECK(out.attempts == 1);
  CHECK(out.ciphertext == first);
}

TEST_CASE("budget exhaustion on an extractor-constant scheme") {
  // k = 0 gives a single ciphertext per message: the adversarial fixed point
  auto frozen = lowent_scheme(0, 4, 16);
  RngStream rng(73, 0);
  KeyPair kp = frozen->gen(rng);
  BitStr m = BitStr::from_u64(5, 4);
  BitStr stuck = ext_seeded(kTinySeed, frozen->enc(kp.pk, m, rng), 2);
  BitStr other = BitStr::from_u64(stuck.to_u64() ^ 1, 2);
  try {
    rejection_sample(*frozen, kp.pk, m, kTinySeed, other, 50, rng);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhaustedError& e) {
    CHECK(e.attempts() == 50);
    CHECK(e.code() == Errc::BudgetExhausted);
  }
}

TEST_CASE("recombine inverts blockwise embedding") {
  auto tiny = tiny_scheme();
  RngStream rng(79, 0);
  KeyPair kp = tiny->gen(rng);
  for (int trial = 0; trial < 300; trial++) {
    unsigned blocks = 1 + unsigned(rng.below(12));
    BitStr s = rng.bitstr(2 * blocks);
    std::vector<BitStr> cts;
    for (unsigned i = 0; i < blocks; i++) {
      BitStr m = rng.bitstr(2);
      cts.push_back(
          rejection_sample(*tiny, kp.pk, m, kTinySeed, s.slice(2 * i, 2), 256, rng).ciphertext);
    }
    REQUIRE(recombine(kTinySeed, cts, 2) == s);

    // tampering one frame only disturbs that frame's block
    if (blocks >= 2) {
      unsigned victim = unsigned(rng.below(blocks));
      cts[victim].set_bit(rng.below(8), !cts[victim].bit(0));
      BitStr out = recombine(kTinySeed, cts, 2);
      for (unsigned i = 0; i < blocks; i++) {
        if (i == victim) continue;
        REQUIRE(out.slice(2 * i, 2) == s.slice(2 * i, 2));
      }
    }
  }
  CHECK(recombine(kTinySeed, std::vector<BitStr>{}, 2).empty());
}

namespace {

Transcript make_transcript(const std::vector<std::pair<Party, std::uint64_t>>& entries,
                           unsigned width) {
  Transcript t;
  std::uint32_t rounds[2] = {0, 0};
  for (auto [party, value] : entries) {
    std::uint32_t& r = rounds[party == Party::P0 ? 0 : 1];
    t.push({party, ++r, Phase::Seed, BitStr::from_u64(value, width)});
  }
  return t;
}

}  // namespace

TEST_CASE("seed bits are GT of consecutive non-overlapping pairs, P0 first") {
  Transcript t = make_transcript({{Party::P0, 5}, {Party::P1, 2}, {Party::P0, 3}, {Party::P1, 7}}, 8);
  BitStr bits = compute_seed_bits(t, 2);
  REQUIRE(bits.size() == 2);
  CHECK(bits.bit(0) == 1);  // GT(5, 3)
  CHECK(bits.bit(1) == 0);  // GT(2, 7)

  SUBCASE("equal ciphertexts in a pair give 1") {
    Transcript e = make_transcript({{Party::P0, 9}, {Party::P1, 1}, {Party::P0, 9}, {Party::P1, 0}}, 8);
    BitStr b = compute_seed_bits(e, 2);
    CHECK(b.bit(0) == 1);
  }
  SUBCASE("not enough frames") {
    CHECK_THROWS_AS(compute_seed_bits(t, 4), Error);
    CHECK_THROWS_AS(compute_seed_bits(t, 3), Error);
  }
}

TEST_CASE("derive_seed carries provenance and the zero-padded hash") {
  RngStream rng(83, 0);
  std::vector<std::pair<Party, std::uint64_t>> entries;
  for (int round = 0; round < 8; round++) {
    entries.push_back({Party::P0, rng.bits(16)});
    entries.push_back({Party::P1, rng.bits(16)});
  }
  Transcript t = make_transcript(entries, 16);
  Seed seed = derive_seed(t, 8);
  REQUIRE(seed.bits.size() == 8);
  REQUIRE(seed.provenance.size() == 8);
  CHECK(seed.provenance[0].first == Party::P0);
  CHECK(seed.provenance[1].first == Party::P1);
  CHECK(seed.provenance[0].second == std::make_pair(1u, 2u));
  CHECK(seed.provenance[6].second == std::make_pair(7u, 8u));

  BitStr padded = seed.bits;
  padded.append(BitStr(120));
  CHECK(seed.hash == seed_from_bits(padded));
}

TEST_CASE("min-entropy seed variant") {
  auto flat = uniform_flat_dist(6, 8);
  auto constant = constant_dist(BitStr::from_u64(1, 8));
  RngStream rng(89, 0);

  std::vector<std::pair<Party, std::uint64_t>> entries;
  std::vector<BitStr> plaintexts;
  std::vector<BitStr> empty_history;
  for (int round = 0; round < 2; round++)
    for (Party p : {Party::P0, Party::P1}) {
      entries.push_back({p, rng.bits(16)});
      plaintexts.push_back(flat->next(empty_history, rng));
    }
  Transcript t;
  std::uint32_t rounds[2] = {0, 0};
  for (auto [party, value] : entries) {
    std::uint32_t& r = rounds[party == Party::P0 ? 0 : 1];
    t.push({party, ++r, Phase::Seed, BitStr::from_u64(value, 16)});
  }

  BitStr seed = minentropy_seed(*flat, t, plaintexts, 5, 2);
  CHECK(seed.size() == 4 * 2);  // one v-bit block per pair

  CHECK_THROWS_AS(minentropy_seed(*constant, t, plaintexts, 5, 2), Error);
  std::vector<BitStr> short_list(plaintexts.begin(), plaintexts.end() - 1);
  CHECK_THROWS_AS(minentropy_seed(*flat, t, short_list, 5, 2), Error);

  SUBCASE("all-zero plaintexts are flagged") {
    std::vector<BitStr> zeros(plaintexts.size(), BitStr(8));
    std::vector<std::string> diags;
    minentropy_seed(*flat, t, zeros, 5, 2, &diags);
    CHECK(diags.size() == plaintexts.size());
  }
}
