// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace renewal::stats {

/// Observed gaps between consecutive events, in time units.
struct InterarrivalSample {
  std::vector<double> gaps;
};

/// Consecutive differences of a strictly increasing year sequence.
/// Throws std::invalid_argument on fewer than two years or a non-increasing
/// pair.
InterarrivalSample intervals_from_years(const std::vector<double>& years);

double mean_interarrival(const InterarrivalSample& sample);

/// How the standard error of the mean gap is formed.
enum class CiMethod {
  /// sigma estimated as the sample mean itself, as the exponential law
  /// forces sd == mean.  This is the default.
  exponential_sigma,
  /// sigma estimated as the usual sample standard deviation (n-1 divisor);
  /// makes no distributional assumption.
  sample_sd,
};

struct EstimateResult {
  double mean;
  double sigma;     // scale used for the standard error
  double se;        // sigma / sqrt(n)
  double lower;     // clamped at 0: a mean gap cannot be negative
  double upper;
  double level;     // two-sided confidence level, e.g. 0.90
  std::size_t n;    // number of gaps
  CiMethod method;
};

/// Name of the method, e.g. for output tables.
const char* ci_method_name(CiMethod method);

/// Two-sided normal confidence interval for the mean gap,
/// mean ± z((1+level)/2) · sigma/sqrt(n), lower bound clamped at 0.
/// Requires level in (0,1) and at least two gaps.
EstimateResult ci_mean(const InterarrivalSample& sample, double level,
                       CiMethod method = CiMethod::exponential_sigma);

/// Standard normal quantile, i.e. inverse of the N(0,1) CDF.
/// Acklam's rational approximation polished with one Halley step through
/// erfc, giving error near machine epsilon across (0,1).
double normal_quantile(double p);

}  // namespace renewal::stats
