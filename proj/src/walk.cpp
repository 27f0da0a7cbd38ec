// SPDX-License-Identifier: Apache-2.0
#include "renewal/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace renewal::walk {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_even(std::int64_t epoch, std::int64_t min_epoch,
                  const char* what) {
  if (epoch < min_epoch) {
    throw std::domain_error(std::string(what) + ": epoch " +
                            std::to_string(epoch) + " below minimum " +
                            std::to_string(min_epoch));
  }
  if (epoch % 2 != 0) {
    throw std::domain_error(std::string(what) + ": epoch " +
                            std::to_string(epoch) +
                            " is odd; returns occur only at even epochs");
  }
}

// Stirling tail S(z) of ln Γ(z+1), differenced as S(2n) - 2 S(n).  The
// (z+1/2)·ln z - z + ln(2π)/2 parts of the two log-gammas cancel down to
// -ln(nπ)/2, so the difference below is the entire correction:
//
//   ln u(2n) = -ln(nπ)/2 - 1/(8n) + 1/(192n³) - 1/(640n⁵) + 17/(14336n⁷) - …
//
// Truncation error at n = 200 is ~3e-24, far below double precision.
double stirling_correction(double n) {
  const double w = 1.0 / (n * n);
  return (((17.0 / 14336.0) * w - 1.0 / 640.0) * w + 1.0 / 192.0) * w / n -
         1.0 / (8.0 * n);
}

// Smallest n at which the truncated series alone is at full double accuracy.
constexpr std::int64_t kSeriesMinN = 200;

// ln u(2n) for n >= kSeriesMinN.
double log_u_series(double n) {
  return -0.5 * std::log(n * kPi) + stirling_correction(n);
}

}  // namespace

std::int64_t floor_even(std::int64_t epoch) {
  if (epoch < 0) {
    throw std::domain_error("floor_even: negative epoch " +
                            std::to_string(epoch));
  }
  return epoch - (epoch % 2);
}

double log_at_origin_prob(std::int64_t epoch) {
  require_even(epoch, 0, "log_at_origin_prob");
  const std::int64_t n = epoch / 2;
  if (n == 0) return 0.0;
  if (n >= kSeriesMinN) return log_u_series(static_cast<double>(n));
  // Below the series' range, shift up:  u(2m) = u(2n) · Π_{k=n+1..m} (2k-1)/(2k)
  // gives  ln u(2n) = ln u(2m) - Σ_{k=n+1..m} log1p(-1/(2k)).  The sum is
  // O(1) in magnitude, so a compensated accumulation keeps the absolute
  // error near machine epsilon.
  const std::int64_t m = kSeriesMinN;
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t k = n + 1; k <= m; ++k) {
    const double term = std::log1p(-1.0 / (2.0 * static_cast<double>(k)));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return log_u_series(static_cast<double>(m)) - sum;
}

double at_origin_prob(std::int64_t epoch) {
  return std::exp(log_at_origin_prob(epoch));
}

double no_return_survival(std::int64_t epoch) {
  require_even(epoch, 2, "no_return_survival");
  return at_origin_prob(epoch);
}

double no_return_survival_asymptotic(std::int64_t epoch) {
  require_even(epoch, 2, "no_return_survival_asymptotic");
  const double n = static_cast<double>(epoch) / 2.0;
  return 1.0 / std::sqrt(n * kPi);
}

double first_return_prob(std::int64_t epoch) {
  require_even(epoch, 2, "first_return_prob");
  // f(2n) = u(2n-2) - u(2n) = u(2n-2) / (2n)
  return at_origin_prob(epoch - 2) / static_cast<double>(epoch);
}

double expected_returns(std::int64_t horizon) {
  require_even(horizon, 0, "expected_returns");
  // E[R] = Σ_{k=1..n} u(2k) telescopes to (2n+1)·u(2n) - 1.
  return (static_cast<double>(horizon) + 1.0) * at_origin_prob(horizon) - 1.0;
}

ReturnCountPmf return_count_pmf(std::int64_t horizon) {
  require_even(horizon, 0, "return_count_pmf");
  const std::int64_t n = horizon / 2;
  ReturnCountPmf pmf;
  pmf.horizon = horizon;
  pmf.mass.resize(static_cast<std::size_t>(n) + 1);
  // P(R = r) = C(2n-r, n) · 2^(r-2n); consecutive-r ratio 2(n-r)/(2n-r)
  // starts the recurrence at P(R = 0) = u(2n).
  double mass = at_origin_prob(horizon);
  for (std::int64_t r = 0; r <= n; ++r) {
    pmf.mass[static_cast<std::size_t>(r)] = mass;
    if (r < n) {
      mass *= 2.0 * static_cast<double>(n - r) / static_cast<double>(2 * n - r);
    }
  }
  return pmf;
}

LastZeroPmf last_zero_pmf(std::int64_t horizon) {
  require_even(horizon, 0, "last_zero_pmf");
  const std::int64_t n = horizon / 2;
  // α(2k) = u(2k) · u(2n-2k); one pass of the u recurrence feeds both sides.
  std::vector<double> u(static_cast<std::size_t>(n) + 1);
  u[0] = 1.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    u[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k - 1)] *
                                     (2.0 * static_cast<double>(k) - 1.0) /
                                     (2.0 * static_cast<double>(k));
  }
  LastZeroPmf pmf;
  pmf.horizon = horizon;
  pmf.mass.resize(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    pmf.mass[static_cast<std::size_t>(k)] =
        u[static_cast<std::size_t>(k)] * u[static_cast<std::size_t>(n - k)];
  }
  return pmf;
}

double last_zero_cdf(std::int64_t horizon, std::int64_t epoch) {
  require_even(horizon, 0, "last_zero_cdf");
  require_even(epoch, 0, "last_zero_cdf");
  if (epoch > horizon) {
    throw std::domain_error("last_zero_cdf: epoch " + std::to_string(epoch) +
                            " exceeds horizon " + std::to_string(horizon));
  }
  const LastZeroPmf pmf = last_zero_pmf(horizon);
  double sum = 0.0;
  for (std::int64_t k = 0; k <= epoch / 2; ++k) {
    sum += pmf.mass[static_cast<std::size_t>(k)];
  }
  return sum;
}

mpq_class at_origin_prob_exact(std::int64_t epoch) {
  require_even(epoch, 0, "at_origin_prob_exact");
  const unsigned long n = static_cast<unsigned long>(epoch / 2);
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n);
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, 2 * n);
  mpq_class q(binom, denom);
  q.canonicalize();
  return q;
}

mpq_class no_return_survival_exact(std::int64_t epoch) {
  require_even(epoch, 2, "no_return_survival_exact");
  return at_origin_prob_exact(epoch);
}

mpq_class first_return_prob_exact(std::int64_t epoch) {
  require_even(epoch, 2, "first_return_prob_exact");
  mpq_class f = at_origin_prob_exact(epoch - 2) / mpq_class(epoch);
  f.canonicalize();
  return f;
}

mpq_class expected_returns_exact(std::int64_t horizon) {
  require_even(horizon, 0, "expected_returns_exact");
  mpq_class e = mpq_class(horizon + 1) * at_origin_prob_exact(horizon) - 1;
  e.canonicalize();
  return e;
}

std::vector<mpq_class> return_count_pmf_exact(std::int64_t horizon) {
  require_even(horizon, 0, "return_count_pmf_exact");
  const unsigned long n = static_cast<unsigned long>(horizon / 2);
  std::vector<mpq_class> mass(n + 1);
  for (unsigned long r = 0; r <= n; ++r) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 2 * n - r, n);
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, 2 * n - r);
    mass[r] = mpq_class(binom, denom);
    mass[r].canonicalize();
  }
  return mass;
}

std::vector<mpq_class> last_zero_pmf_exact(std::int64_t horizon) {
  require_even(horizon, 0, "last_zero_pmf_exact");
  const std::int64_t n = horizon / 2;
  std::vector<mpq_class> mass(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    mass[static_cast<std::size_t>(k)] =
        at_origin_prob_exact(2 * k) * at_origin_prob_exact(horizon - 2 * k);
    mass[static_cast<std::size_t>(k)].canonicalize();
  }
  return mass;
}

}  // namespace renewal::walk
