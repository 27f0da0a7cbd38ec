// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace renewal::walk {

// Return-time combinatorics for the simple symmetric random walk on the
// integers.  Epochs count ±1 steps from the origin; the walk can only be
// back at the origin at even epochs, so every operation below validates
// parity and throws std::domain_error on odd input.
//
// The whole module rests on one quantity (Feller, vol. I, ch. III):
//
//     u(2n) = C(2n, n) · 2^(-2n)
//
// which is simultaneously the probability of being at the origin at epoch
// 2n and the probability that the first return to the origin takes longer
// than 2n steps.  Everything else is algebra on u:
//
//     first return at 2n:     f(2n) = u(2n-2) - u(2n) = u(2n-2) / (2n)
//     r returns in 2n steps:  C(2n-r, n) · 2^(r-2n)
//     last zero at 2k of 2n:  u(2k) · u(2n-2k)          (discrete arcsine law)
//     E[# returns in 2n]:     (2n+1) · u(2n) - 1
//
// Two numeric tiers are exposed.  The float tier works in log space:
// ln u(2n) = ln Γ(2n+1) - 2 ln Γ(n+1) - 2n ln 2, evaluated through the
// Stirling series of the log-gamma difference (the large terms cancel
// symbolically, so no catastrophic subtraction happens) with a downward
// recurrence below the series' comfort zone.  The exact tier carries
// arbitrary-precision rationals; the two tiers are independent code paths
// cross-checked in the tests, and the enumeration oracle there checks the
// exact tier against brute force.

/// Epoch bound inside which exact-tier calls are microsecond-cheap and are
/// used as the default oracle range in tests.  Both tiers accept any even
/// epoch.
inline constexpr std::int64_t kExactOracleMaxEpoch = 64;

/// Largest even value <= epoch.  Convenience for callers that accept odd
/// user input; the computational entry points themselves reject odd epochs.
std::int64_t floor_even(std::int64_t epoch);

// -- float tier -------------------------------------------------------------

/// u(epoch): probability the walk sits at the origin at the given even epoch.
double at_origin_prob(std::int64_t epoch);

/// ln u(epoch).
double log_at_origin_prob(std::int64_t epoch);

/// P(first return > epoch); exact value, equals u(epoch).  epoch >= 2.
double no_return_survival(std::int64_t epoch);

/// The 1/sqrt(n·pi) tail approximation at epoch = 2n.  epoch >= 2.
double no_return_survival_asymptotic(std::int64_t epoch);

/// P(first return == epoch).  epoch >= 2.
double first_return_prob(std::int64_t epoch);

/// E[number of returns within `horizon` steps] = (horizon+1)·u(horizon) - 1.
double expected_returns(std::int64_t horizon);

/// P(exactly r returns in `horizon` steps), r = 0..horizon/2.
struct ReturnCountPmf {
  std::int64_t horizon;
  std::vector<double> mass;  // indexed by r
};
ReturnCountPmf return_count_pmf(std::int64_t horizon);

/// Distribution of the epoch of the last visit to the origin within the
/// horizon; mass[k] is the probability of epoch 2k.
struct LastZeroPmf {
  std::int64_t horizon;
  std::vector<double> mass;  // indexed by k, epoch = 2k
};
LastZeroPmf last_zero_pmf(std::int64_t horizon);

/// P(last visit to the origin within `horizon` happens at or before `epoch`).
double last_zero_cdf(std::int64_t horizon, std::int64_t epoch);

// -- exact rational tier ------------------------------------------------------

mpq_class at_origin_prob_exact(std::int64_t epoch);
mpq_class no_return_survival_exact(std::int64_t epoch);
mpq_class first_return_prob_exact(std::int64_t epoch);
mpq_class expected_returns_exact(std::int64_t horizon);
std::vector<mpq_class> return_count_pmf_exact(std::int64_t horizon);
std::vector<mpq_class> last_zero_pmf_exact(std::int64_t horizon);

}  // namespace renewal::walk
