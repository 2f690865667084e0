#pragma once

#include <cstdint>
#include <vector>

#include "covertext/bitstr.hpp"

namespace covertext {

struct CollisionEstimate {
  double cp = 0;        // unbiased pair-counting estimate of sum_x p_x^2
  double variance = 0;  // plug-in variance of the estimator
  double renyi2_bits() const;  // -log2(cp); upper bound on H_inf for flat sources only
};

CollisionEstimate collision_prob(const std::vector<std::uint64_t>& samples);
CollisionEstimate collision_prob(const std::vector<BitStr>& samples);

// Exact |Pr[GT(X,Y)=1] - 1/2| for i.i.d. X, Y flat on the given support,
// by the double loop. Equals CP/2 = 1/(2*|support|).
double gt_bias_exact(const std::vector<BitStr>& support);

// Pearson chi-square of the samples against the uniform distribution on
// [0, 2^bucket_bits), returning the p-value. Values must already lie in the
// bucket range. Needs >= 5 * 2^bucket_bits samples.
double chi_square(const std::vector<std::uint64_t>& samples, unsigned bucket_bits);

// Regularized upper incomplete gamma Q(s, x), evaluated by series or
// continued fraction; absolute accuracy ~1e-10 over the tested range.
double gamma_q(double s, double x);

// Survival function of the chi-square distribution with k degrees of freedom.
double chi2_sf(double statistic, double dof);

// Two-sided p-value of a standard normal z score.
double normal_two_sided_p(double z);

}  // namespace covertext
