// SPDX-License-Identifier: Apache-2.0
#include "renewal/poisson.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace renewal::poisson {

Rate Rate::from_rate(double events_per_unit) {
  if (!std::isfinite(events_per_unit) || events_per_unit <= 0.0) {
    throw std::domain_error("Rate::from_rate: rate must be finite and > 0, got " +
                            std::to_string(events_per_unit));
  }
  return Rate(events_per_unit);
}

Rate Rate::from_mean_gap(double mean_gap) {
  if (!std::isfinite(mean_gap) || mean_gap <= 0.0) {
    throw std::domain_error(
        "Rate::from_mean_gap: mean gap must be finite and > 0, got " +
        std::to_string(mean_gap));
  }
  return Rate(1.0 / mean_gap);
}

double exp_tail(Rate rate, double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("exp_tail: x must be >= 0, got " +
                            std::to_string(x));
  }
  return std::exp(-rate.value() * x);
}

double tail_at_mean_multiples(Rate, double k) {
  if (!(k >= 0.0)) {
    throw std::domain_error("tail_at_mean_multiples: k must be >= 0, got " +
                            std::to_string(k));
  }
  // rate·(k/rate) cancels exactly, so evaluate e^-k directly; this keeps the
  // result bitwise identical across rates instead of merely close.
  return std::exp(-k);
}

double count_mean(Rate rate, double horizon) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw std::domain_error("count_mean: horizon must be finite and >= 0");
  }
  return rate.value() * horizon;
}

std::int64_t default_k_max(double mean) {
  return static_cast<std::int64_t>(std::ceil(mean + 12.0 * std::sqrt(mean))) +
         10;
}

CountDistribution count_pmf(Rate rate, double horizon, std::int64_t k_max) {
  return count_pmf_from_mean(count_mean(rate, horizon), k_max);
}

CountDistribution count_pmf_from_mean(double mean, std::int64_t k_max) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::domain_error("count_pmf_from_mean: mean must be finite and >= 0");
  }
  if (k_max < 0) k_max = default_k_max(mean);
  CountDistribution dist;
  dist.mean = mean;
  dist.mass.resize(static_cast<std::size_t>(k_max) + 1);
  double mass = std::exp(-mean);
  double total = 0.0;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    dist.mass[static_cast<std::size_t>(k)] = mass;
    total += mass;
    // The ratio step keeps adjacent-mass identities bitwise: for integer
    // mean m, mass[m] = mass[m-1] · m/m reuses the same double.
    mass *= mean / static_cast<double>(k + 1);
  }
  dist.truncation_tail = 1.0 - total;
  return dist;
}

}  // namespace renewal::poisson
