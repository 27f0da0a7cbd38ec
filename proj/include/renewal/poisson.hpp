// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace renewal::poisson {

/// Occurrence rate per unit time.  Constructed through the named factories
/// so the two natural parameterizations (rate, mean gap) cannot be mixed up;
/// both reject non-finite or non-positive input with std::domain_error.
class Rate {
 public:
  static Rate from_rate(double events_per_unit);
  static Rate from_mean_gap(double mean_gap);

  double value() const { return value_; }
  double mean_gap() const { return 1.0 / value_; }

 private:
  explicit Rate(double v) : value_(v) {}
  double value_;
};

/// P(gap > x) = exp(-rate·x) for the exponential interarrival law.  x >= 0.
double exp_tail(Rate rate, double x);

/// P(gap > k·mean_gap) = e^-k: the tail measured in units of the rate's own
/// mean gap.  Scale-free, so the result is the same for every rate; the rate
/// argument only fixes which gap the multiple refers to.  k >= 0.
double tail_at_mean_multiples(Rate rate, double k);

/// Mean event count over the horizon: rate·horizon.
double count_mean(Rate rate, double horizon);

/// Truncation point used by count_pmf when none is given:
/// ceil(mean + 12·sqrt(mean)) + 10, which puts the discarded tail far below
/// double precision for any mean of practical size.
std::int64_t default_k_max(double mean);

/// Poisson count distribution over a horizon, truncated at k_max.
struct CountDistribution {
  double mean;
  std::vector<double> mass;  // mass[k] = P(N = k), k = 0..k_max
  double truncation_tail;    // 1 - sum(mass), mass beyond k_max
};

/// Poisson pmf with mean rate·horizon.  Masses are built by the ratio
/// iteration mass[k+1] = mass[k]·mean/(k+1) starting from exp(-mean), so
/// adjacent-mass identities (e.g. equality of masses at k = mean-1 and
/// k = mean for integer mean) hold bitwise.  k_max < 0 selects
/// default_k_max.
CountDistribution count_pmf(Rate rate, double horizon, std::int64_t k_max = -1);

/// Same distribution parameterized by the mean directly; mean 0 is legal
/// (unit mass at zero events).
CountDistribution count_pmf_from_mean(double mean, std::int64_t k_max = -1);

}  // namespace renewal::poisson
