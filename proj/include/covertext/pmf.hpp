#pragma once

#include <cstdint>
#include <vector>

#include "covertext/bitstr.hpp"

namespace covertext {

// Probability mass function over domain [0, 2^domain_bits). Entries must be
// non-negative and sum to 1 within 1e-12.
class Pmf {
 public:
  Pmf(unsigned domain_bits, std::vector<double> probabilities);

  static Pmf from_samples(unsigned domain_bits, const std::vector<std::uint64_t>& samples);
  // Exact pmf of an equiprobable ciphertext list (values must fit the domain).
  static Pmf from_flat_support(unsigned domain_bits, const std::vector<BitStr>& support);

  unsigned domain_bits() const { return domain_bits_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probabilities() const { return p_; }

 private:
  unsigned domain_bits_;
  std::vector<double> p_;
};

// Half-L1 statistical distance; equal domains required.
double stat_distance(const Pmf& p, const Pmf& q);

// The max-over-events form, equal to stat_distance by definition; kept as an
// independent route for property tests.
double stat_distance_maxset(const Pmf& p, const Pmf& q);

}  // namespace covertext
