#include "covertext/group.hpp"

#include <cmath>
#include <fstream>

#include "covertext/error.hpp"

namespace covertext {

void GroupParams::validate(int mr_rounds) const {
  if (p.bit_length() != ell || ell == 0 || ell > 512)
    throw Error(Errc::BadGroup, "ell does not match bit length of p");
  if ((p.w[0] & 3) != 3) throw Error(Errc::BadGroup, "p != 3 (mod 4)");
  U512 two_q_plus_1 = u512_add(u512_add(q, q), U512::from_u64(1));
  if (!(two_q_plus_1 == p)) throw Error(Errc::BadGroup, "p != 2q + 1");
  if (!is_probable_prime(p, mr_rounds)) throw Error(Errc::BadGroup, "p not prime");
  if (!is_probable_prime(q, mr_rounds)) throw Error(Errc::BadGroup, "q not prime");
  Fp fp(p);
  if (g.is_zero() || g == U512::from_u64(1) || u512_cmp(g, p) >= 0)
    throw Error(Errc::BadGroup, "bad generator");
  if (!(fp.powmod(g, q) == U512::from_u64(1)))
    throw Error(Errc::BadGroup, "g does not generate the order-q subgroup");
}

double GroupParams::encoding_slack() const {
  U512 comp;
  for (int i = 0; i < 8; i++) comp.w[i] = ~p.w[i];
  // comp + 1 = 2^512 - p; drop the 2^512 - 2^ell excess when ell < 512
  comp = u512_add(comp, U512::from_u64(1));
  double value = 0;
  for (int i = 7; i >= 0; i--) value = value * 18446744073709551616.0 + double(comp.w[i]);
  if (ell < 512) value -= std::pow(2.0, 512.0) - std::pow(2.0, double(ell));
  return value / std::pow(2.0, double(ell));
}

namespace {

GroupParams make_group(const char* name, const char* p_dec, const char* q_dec,
                       std::uint64_t g_val) {
  GroupParams gp;
  gp.name = name;
  gp.p = U512::from_decimal(p_dec);
  gp.q = U512::from_decimal(q_dec);
  gp.g = U512::from_u64(g_val);
  gp.ell = gp.p.bit_length();
  return gp;
}

}  // namespace

const GroupParams& group_p23() {
  static const GroupParams g = make_group("p23", "23", "11", 2);
  return g;
}

const GroupParams& group_tiny16() {
  static const GroupParams g = make_group("tiny16", "65267", "32633", 3);
  return g;
}

const GroupParams& group_desk512() {
  // p = 2^512 - 38117, the largest safe prime below 2^512; q = (p-1)/2.
  static const GroupParams g = make_group(
      "desk512",
      "134078079299425970995740249982058461274793658205923933777235614437217640"
      "300735469768018742981669034276900318581864860508537538828119465699464336"
      "49006045979",
      "670390396497129854978701249910292306373968291029619668886178072186088201"
      "503677348840093714908345171384501592909324302542687694140597328497321682"
      "4503022989",
      3);
  return g;
}

const GroupParams* find_group(const std::string& name) {
  if (name == "p23") return &group_p23();
  if (name == "tiny16") return &group_tiny16();
  if (name == "desk512") return &group_desk512();
  return nullptr;
}

GroupParams load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open group file " + path);
  GroupParams gp;
  gp.name = path;
  std::string line;
  bool have_p = false, have_q = false, have_g = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::BadConfig, "bad group file line: " + line);
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "p") gp.p = U512::from_decimal(val), have_p = true;
    else if (key == "q") gp.q = U512::from_decimal(val), have_q = true;
    else if (key == "g") gp.g = U512::from_decimal(val), have_g = true;
    else throw Error(Errc::BadConfig, "unknown group file key: " + key);
  }
  if (!have_p || !have_q || !have_g)
    throw Error(Errc::BadConfig, "group file missing p, q or g");
  gp.ell = gp.p.bit_length();
  return gp;
}

void save_group_file(const GroupParams& group, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write group file " + path);
  out << "p=" << group.p.to_decimal() << "\n"
      << "q=" << group.q.to_decimal() << "\n"
      << "g=" << group.g.to_decimal() << "\n";
}

}  // namespace covertext
