#include "covertext/params.hpp"

#include <algorithm>
#include <cctype>

#include "covertext/error.hpp"

namespace covertext {

void SecurityParams::validate() const {
  if (v < 1 || v > 32) throw Error(Errc::BadConfig, "v out of range");
  if (d == 0 || d % 2 != 0) throw Error(Errc::BadConfig, "d must be a positive multiple of 2");
  if (ell_kex % v != 0) throw Error(Errc::BadConfig, "ell_kex must be a multiple of v");
  if (xi_ske % v != 0) throw Error(Errc::BadConfig, "xi_ske must be a multiple of v");
  if (xi_ske < kappa) throw Error(Errc::BadConfig, "xi_ske smaller than kappa");
  if (max_attempts < (1u << v))
    throw Error(Errc::BadConfig, "max_attempts below expected rejection cost 2^v");
  if (n_ct == 0 || kappa == 0) throw Error(Errc::BadConfig, "zero length");
}

Profile parse_profile(std::string_view name) {
  std::string low(name);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (low == "desk") return Profile::Desk;
  if (low == "tiny") return Profile::Tiny;
  if (low == "bench") return Profile::Bench;
  throw Error(Errc::UnknownProfile, std::string(name));
}

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::Desk: return "desk";
    case Profile::Tiny: return "tiny";
    case Profile::Bench: return "bench";
  }
  return "?";
}

SecurityParams resolve_profile(Profile name) {
  SecurityParams sp;
  switch (name) {
    case Profile::Desk:
      // max_attempts = 64*2^v: per-block failure probability <= e^-64.
      sp = {.kappa = 128, .n_ct = 1024, .v = 4, .d = 128,
            .ell_kex = 512, .xi_ske = 256, .max_attempts = 1024};
      break;
    case Profile::Tiny:
      sp = {.kappa = 8, .n_ct = 8, .v = 2, .d = 8,
            .ell_kex = 16, .xi_ske = 16, .max_attempts = 64};
      break;
    case Profile::Bench:
      sp = {.kappa = 128, .n_ct = 1024, .v = 8, .d = 128,
            .ell_kex = 512, .xi_ske = 256, .max_attempts = 16384};
      break;
  }
  sp.validate();
  return sp;
}

}  // namespace covertext
