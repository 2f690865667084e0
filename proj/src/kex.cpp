#include "covertext/kex.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "covertext/error.hpp"
#include "covertext/extract.hpp"

namespace covertext {

namespace {

struct GroupCtx {
  Fp fp;
  FixedBasePow gpow;
  explicit GroupCtx(const GroupParams& g)
      : fp(g.p), gpow(fp, g.g, g.ell >= 256 ? 12u : 4u) {}
};

const GroupCtx& ctx_for(const GroupParams& g) {
  static std::mutex mu;
  static std::map<const GroupParams*, std::unique_ptr<GroupCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[&g];
  if (!slot) slot = std::make_unique<GroupCtx>(g);
  return *slot;
}

}  // namespace

std::pair<KexState, BitStr> kex_round1(const SecurityParams& params,
                                       const GroupParams& group, RngStream& rng) {
  if (params.ell_kex != group.ell)
    throw Error(Errc::BadConfig, "ell_kex must equal the group's element width");
  const GroupCtx& ctx = ctx_for(group);
  U512 q1 = u512_sub(group.q, U512::from_u64(1));
  U512 x = u512_add(u512_random_below(rng, q1), U512::from_u64(1));
  bool sign = rng.coin();
  U512 value = ctx.gpow.pow(x);
  if (sign) value = ctx.fp.submod(U512{}, value);
  KexState st{x, sign, value.to_bits(group.ell), &group};
  return {st, st.sent};
}

SharedKey kex_finish(const KexState& state, const BitStr& peer_msg) {
  const GroupParams& group = *state.group;
  if (peer_msg.size() != group.ell)
    throw Error(Errc::BadLength, "peer message has wrong width");
  U512 u = U512::from_bits(peer_msg);
  if (u.is_zero() || u512_cmp(u, group.p) >= 0)
    throw Error(Errc::BadElement, "peer message is not in Z_p^*");
  const Fp& fp = ctx_for(group).fp;
  // (peer^2)^x; the squaring cancels both parties' signs
  U512 secret = fp.powmod(fp.mulmod(u, u), state.exponent);
  BitStr encoded = secret.to_bits(group.ell);
  // 256-bit key via eight fixed public domain-separation seeds
  BitStr key(0);
  for (std::uint64_t j = 0; j < 8; j++) {
    RngStream kdf(0x636f7665726b6478ULL, j);  // fixed, public
    HashSeed hs{Gf64{kdf.next_u64()}, Gf64{kdf.next_u64()}};
    if (hs.a.value == 0) hs.a.value = 1;
    key.append(ext_seeded(hs, encoded, 32));
  }
  return {key, secret == U512::from_u64(1)};
}

}  // namespace covertext
