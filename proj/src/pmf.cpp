#include "covertext/pmf.hpp"

#include <cmath>

#include "covertext/error.hpp"

namespace covertext {

Pmf::Pmf(unsigned domain_bits, std::vector<double> probabilities)
    : domain_bits_(domain_bits), p_(std::move(probabilities)) {
  if (domain_bits > 26) throw Error(Errc::DomainMismatch, "pmf domain too large");
  if (p_.size() != (std::size_t(1) << domain_bits))
    throw Error(Errc::DomainMismatch, "pmf size does not match domain");
  double sum = 0;
  for (double x : p_) {
    if (x < 0) throw Error(Errc::DomainMismatch, "negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw Error(Errc::DomainMismatch, "pmf does not sum to 1");
}

Pmf Pmf::from_samples(unsigned domain_bits, const std::vector<std::uint64_t>& samples) {
  if (samples.empty()) throw Error(Errc::TooFewSamples, "no samples");
  std::vector<double> p(std::size_t(1) << domain_bits, 0.0);
  for (std::uint64_t s : samples) {
    if (s >= p.size()) throw Error(Errc::DomainMismatch, "sample outside domain");
    p[s] += 1.0;
  }
  for (double& x : p) x /= double(samples.size());
  return Pmf(domain_bits, std::move(p));
}

Pmf Pmf::from_flat_support(unsigned domain_bits, const std::vector<BitStr>& support) {
  if (support.empty()) throw Error(Errc::TooFewSamples, "empty support");
  std::vector<double> p(std::size_t(1) << domain_bits, 0.0);
  for (const BitStr& s : support) {
    std::uint64_t v = s.to_u64();
    if (v >= p.size()) throw Error(Errc::DomainMismatch, "support value outside domain");
    p[v] += 1.0 / double(support.size());
  }
  return Pmf(domain_bits, std::move(p));
}

double stat_distance(const Pmf& p, const Pmf& q) {
  if (p.domain_bits() != q.domain_bits())
    throw Error(Errc::DomainMismatch, "stat_distance wants equal domains");
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); i++) acc += std::abs(p[i] - q[i]);
  return acc / 2;
}

double stat_distance_maxset(const Pmf& p, const Pmf& q) {
  if (p.domain_bits() != q.domain_bits())
    throw Error(Errc::DomainMismatch, "stat_distance wants equal domains");
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); i++)
    if (p[i] > q[i]) acc += p[i] - q[i];
  return acc;
}

}  // namespace covertext
