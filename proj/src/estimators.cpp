#include "covertext/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "covertext/error.hpp"

namespace covertext {

double CollisionEstimate::renyi2_bits() const {
  return cp > 0 ? -std::log2(cp) : std::numeric_limits<double>::infinity();
}

namespace {

CollisionEstimate collision_from_counts(const std::map<std::uint64_t, std::uint64_t>& counts,
                                        double n) {
  // U-statistic: colliding ordered pairs / (n (n-1))
  double pairs = 0, p2 = 0, p3 = 0;
  for (const auto& [_, c] : counts) {
    double cd = double(c);
    pairs += cd * (cd - 1);
    double ph = cd / n;
    p2 += ph * ph;
    p3 += ph * ph * ph;
  }
  CollisionEstimate est;
  est.cp = pairs / (n * (n - 1));
  // asymptotic variance of the U-statistic with plug-in moments
  double zeta1 = std::max(0.0, p3 - p2 * p2);
  double zeta2 = std::max(0.0, p2 - p2 * p2);
  est.variance = 4 * (n - 2) / (n * (n - 1)) * zeta1 + 2 / (n * (n - 1)) * zeta2;
  return est;
}

}  // namespace

CollisionEstimate collision_prob(const std::vector<std::uint64_t>& samples) {
  if (samples.size() < 2) throw Error(Errc::TooFewSamples, "collision_prob wants >= 2 samples");
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s : samples) counts[s]++;
  return collision_from_counts(counts, double(samples.size()));
}

CollisionEstimate collision_prob(const std::vector<BitStr>& samples) {
  if (samples.size() < 2) throw Error(Errc::TooFewSamples, "collision_prob wants >= 2 samples");
  std::vector<std::string> keys;
  keys.reserve(samples.size());
  for (const auto& s : samples) keys.emplace_back(s.bytes().begin(), s.bytes().end());
  std::sort(keys.begin(), keys.end());
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t distinct = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) j++;
    counts[distinct++] = j - i;
    i = j;
  }
  return collision_from_counts(counts, double(samples.size()));
}

double gt_bias_exact(const std::vector<BitStr>& support) {
  if (support.empty()) throw Error(Errc::TooFewSamples, "empty support");
  double n = double(support.size());
  double ge = 0;
  for (const auto& x : support)
    for (const auto& y : support)
      if (bitstr_cmp(x, y) != Ordering::Less) ge += 1;
  return std::abs(ge / (n * n) - 0.5);
}

double gamma_q(double s, double x) {
  if (x < 0 || s <= 0) throw Error(Errc::DomainMismatch, "gamma_q wants s > 0, x >= 0");
  if (x == 0) return 1.0;
  double lg = std::lgamma(s);
  if (x < s + 1) {
    // P(s,x) by series, Q = 1 - P
    double sum = 1.0 / s, term = sum;
    for (int n = 1; n < 10000; n++) {
      term *= x / (s + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    double p = sum * std::exp(-x + s * std::log(x) - lg);
    return std::clamp(1.0 - p, 0.0, 1.0);
  }
  // Q(s,x) by Lentz continued fraction
  double tiny = 1e-300;
  double b = x + 1 - s, c = 1 / tiny, d = 1 / b, h = d;
  for (int i = 1; i < 10000; i++) {
    double an = -double(i) * (double(i) - s);
    b += 2;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  double q = std::exp(-x + s * std::log(x) - lg) * h;
  return std::clamp(q, 0.0, 1.0);
}

double chi2_sf(double statistic, double dof) {
  return gamma_q(dof / 2, statistic / 2);
}

double normal_two_sided_p(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

double chi_square(const std::vector<std::uint64_t>& samples, unsigned bucket_bits) {
  std::size_t buckets = std::size_t(1) << bucket_bits;
  if (samples.size() < 5 * buckets)
    throw Error(Errc::TooFewSamples, "chi_square wants >= 5 * 2^bucket_bits samples");
  std::vector<double> counts(buckets, 0.0);
  for (std::uint64_t s : samples) {
    if (s >= buckets) throw Error(Errc::DomainMismatch, "sample outside bucket range");
    counts[s] += 1;
  }
  double expected = double(samples.size()) / double(buckets);
  double stat = 0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  return chi2_sf(stat, double(buckets - 1));
}

}  // namespace covertext
