#include <doctest.h>

#include "covertext/bitstr.hpp"
#include "covertext/rng.hpp"

using namespace covertext;

TEST_CASE("bitstr_cmp on the documented examples") {
  CHECK(bitstr_cmp(BitStr::from_u64(0b101, 3), BitStr::from_u64(0b011, 3)) ==
        Ordering::Greater);
  BitStr x = BitStr::from_u64(0b1101, 4);
  CHECK(bitstr_cmp(x, x) == Ordering::Equal);
  CHECK(bitstr_cmp(BitStr::from_u64(0, 4), BitStr::from_u64(1, 4)) == Ordering::Less);
  CHECK_THROWS_AS(bitstr_cmp(BitStr(3), BitStr(4)), Error);
}

TEST_CASE("bitstr_cmp equals unsigned integer comparison, exhaustively") {
  for (unsigned len : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
    for (std::uint64_t a = 0; a < (1ull << len); a++)
      for (std::uint64_t b = 0; b < (1ull << len); b++) {
        Ordering want = a < b ? Ordering::Less : a > b ? Ordering::Greater : Ordering::Equal;
        REQUIRE(bitstr_cmp(BitStr::from_u64(a, len), BitStr::from_u64(b, len)) == want);
      }
  }
  // spot the upper end of the range the ordering claim covers
  RngStream rng(7, 0);
  for (int i = 0; i < 20000; i++) {
    std::uint64_t a = rng.bits(12), b = rng.bits(12);
    Ordering want = a < b ? Ordering::Less : a > b ? Ordering::Greater : Ordering::Equal;
    REQUIRE(bitstr_cmp(BitStr::from_u64(a, 12), BitStr::from_u64(b, 12)) == want);
  }
}

TEST_CASE("hex encode/decode is the identity") {
  RngStream rng(3, 0);
  for (unsigned len : {0u, 1u, 5u, 8u, 13u, 64u, 65u, 128u, 1024u}) {
    BitStr s = rng.bitstr(len);
    BitStr back = BitStr::from_hex(s.hex());
    REQUIRE(back == s);
    REQUIRE(back.size() == len);
  }
  CHECK(BitStr::from_u64(0b10110, 5).hex() == "5:b0");
  CHECK_THROWS_AS(BitStr::from_hex("nonsense"), Error);
  CHECK_THROWS_AS(BitStr::from_hex("8:f"), Error);
}

TEST_CASE("unused trailing bits stay zero") {
  std::vector<std::uint8_t> raw{0xff};
  BitStr s = BitStr::from_bytes(raw, 5);
  CHECK(s.bytes()[0] == 0xf8);
  s.set_bit(4, false);
  CHECK(s.bytes()[0] == 0xf0);
}

TEST_CASE("slice, append and block64 agree with bit addressing") {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 200; trial++) {
    unsigned la = unsigned(rng.below(150)), lb = unsigned(rng.below(150));
    BitStr a = rng.bitstr(la), b = rng.bitstr(lb);
    BitStr joined = a;
    joined.append(b);
    REQUIRE(joined.size() == la + lb);
    for (unsigned i = 0; i < la; i++) REQUIRE(joined.bit(i) == a.bit(i));
    for (unsigned i = 0; i < lb; i++) REQUIRE(joined.bit(la + i) == b.bit(i));
    if (la > 0) {
      unsigned start = unsigned(rng.below(la));
      unsigned len = unsigned(rng.below(la - start + 1));
      BitStr sl = a.slice(start, len);
      for (unsigned i = 0; i < len; i++) REQUIRE(sl.bit(i) == a.bit(start + i));
    }
  }
  BitStr v = BitStr::from_u64(0xdeadbeef, 64);
  CHECK(v.block64(0) == 0xdeadbeefull);
  CHECK(v.to_u64() == 0xdeadbeefull);
  BitStr w = BitStr::from_u64(0b1011, 4);
  CHECK(w.block64(0) == 0xb000000000000000ull);  // MSB-first, zero-padded
}
