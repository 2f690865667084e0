#pragma once

#include <string>

#include "covertext/mont.hpp"

namespace covertext {

// Schnorr group inside Z_p^* for a safe prime p = 2q + 1, p = 3 (mod 4);
// g generates the order-q subgroup of quadratic residues. Elements encode as
// ell-bit strings, so uniform subgroup elements with random sign are within
// (2^ell - p)/2^ell of uniform ell-bit strings.
struct GroupParams {
  std::string name;
  U512 p;
  U512 q;
  U512 g;
  unsigned ell = 0;  // bit length of the element encoding

  // Structural checks: primality of p and q, p = 2q+1, p = 3 (mod 4),
  // g a generator of the QR subgroup, ell consistent. Throws BadGroup.
  void validate(int mr_rounds = 40) const;

  // (2^ell - p) / 2^ell, the statistical slack of the element encoding.
  double encoding_slack() const;
};

// Named groups committed to the repo.
const GroupParams& group_p23();      // p = 23, exhaustive-test group
const GroupParams& group_tiny16();   // 16-bit group for the tiny profile
const GroupParams& group_desk512();  // 512-bit group, p = 2^512 - 38117

const GroupParams* find_group(const std::string& name);  // nullptr if unknown

// Plain-text group file: "p=...\nq=...\ng=...\n" in decimal.
GroupParams load_group_file(const std::string& path);
void save_group_file(const GroupParams& group, const std::string& path);

}  // namespace covertext
