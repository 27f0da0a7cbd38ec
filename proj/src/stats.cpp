// SPDX-License-Identifier: Apache-2.0
#include "renewal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace renewal::stats {

InterarrivalSample intervals_from_years(const std::vector<double>& years) {
  if (years.size() < 2) {
    throw std::invalid_argument(
        "intervals_from_years: need at least two event years, got " +
        std::to_string(years.size()));
  }
  InterarrivalSample sample;
  sample.gaps.reserve(years.size() - 1);
  for (std::size_t i = 1; i < years.size(); ++i) {
    if (!(years[i] > years[i - 1])) {
      throw std::invalid_argument(
          "intervals_from_years: years must be strictly increasing; entry " +
          std::to_string(i) + " (" + std::to_string(years[i]) +
          ") does not exceed its predecessor");
    }
    sample.gaps.push_back(years[i] - years[i - 1]);
  }
  return sample;
}

double mean_interarrival(const InterarrivalSample& sample) {
  if (sample.gaps.empty()) {
    throw std::invalid_argument("mean_interarrival: empty sample");
  }
  double sum = 0.0;
  for (double g : sample.gaps) sum += g;
  return sum / static_cast<double>(sample.gaps.size());
}

const char* ci_method_name(CiMethod method) {
  switch (method) {
    case CiMethod::exponential_sigma:
      return "normal-ci/exponential-sigma";
    case CiMethod::sample_sd:
      return "normal-ci/sample-sd";
  }
  throw std::logic_error("ci_method_name: unknown method");
}

EstimateResult ci_mean(const InterarrivalSample& sample, double level,
                       CiMethod method) {
  const std::size_t n = sample.gaps.size();
  if (n < 2) {
    throw std::invalid_argument(
        "ci_mean: need at least two gaps for an interval, got " +
        std::to_string(n));
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("ci_mean: confidence level must lie in (0,1)");
  }
  EstimateResult result;
  result.n = n;
  result.level = level;
  result.method = method;
  result.mean = mean_interarrival(sample);
  switch (method) {
    case CiMethod::exponential_sigma:
      // Under the exponential law sd == mean, so the fitted mean doubles as
      // the scale estimate.
      result.sigma = result.mean;
      break;
    case CiMethod::sample_sd: {
      double ss = 0.0;
      for (double g : sample.gaps) {
        const double d = g - result.mean;
        ss += d * d;
      }
      result.sigma = std::sqrt(ss / static_cast<double>(n - 1));
      break;
    }
  }
  result.se = result.sigma / std::sqrt(static_cast<double>(n));
  const double z = normal_quantile(0.5 * (1.0 + level));
  result.lower = std::max(0.0, result.mean - z * result.se);
  result.upper = result.mean + z * result.se;
  return result;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0,1), got " +
                            std::to_string(p));
  }
  // Acklam's rational approximation (relative error < 1.15e-9) ...
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // ... polished to machine precision with one Halley step on
  // F(x) = p, where F is evaluated through erfc for stable tails.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u =
      e * std::sqrt(2.0 * 3.141592653589793238462643) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace renewal::stats
