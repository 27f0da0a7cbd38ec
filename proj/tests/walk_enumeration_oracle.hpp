// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

// Brute-force distributions over all 2^steps equally likely ±1 paths.
// Feasible for steps <= ~24; the tests use steps <= 16.  Everything is an
// exact rational count / 2^steps, so comparisons against the library's
// exact tier are equality checks, not tolerance checks.
struct WalkEnumeration {
  std::int64_t steps = 0;
  std::vector<mpq_class> return_count;     // index r = number of origin visits
  std::vector<mpq_class> last_zero;        // index k = last visit at epoch 2k
  std::vector<mpq_class> first_return_at;  // index j = first visit at epoch 2j
                                           // (entry 0 unused, kept zero)
  mpq_class no_return;                     // no visit through `steps`
};

inline WalkEnumeration enumerate_walks(std::int64_t steps) {
  if (steps < 0 || steps % 2 != 0 || steps > 24) {
    throw std::domain_error("enumerate_walks: steps must be even in [0, 24]");
  }
  const std::int64_t n = steps / 2;
  std::vector<std::uint64_t> count_hist(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint64_t> last_hist(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint64_t> first_hist(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t none = 0;

  const std::uint64_t total = steps == 0 ? 1 : (std::uint64_t{1} << steps);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::int64_t pos = 0;
    std::int64_t returns = 0;
    std::int64_t last = 0;
    std::int64_t first = 0;
    for (std::int64_t s = 1; s <= steps; ++s) {
      pos += ((bits >> (s - 1)) & 1u) ? 1 : -1;
      if (pos == 0) {
        ++returns;
        last = s;
        if (first == 0) first = s;
      }
    }
    ++count_hist[static_cast<std::size_t>(returns)];
    ++last_hist[static_cast<std::size_t>(last / 2)];
    if (first == 0) {
      ++none;
    } else {
      ++first_hist[static_cast<std::size_t>(first / 2)];
    }
  }

  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, static_cast<unsigned long>(steps));
  auto fraction = [&denom](std::uint64_t c) {
    mpq_class q(mpz_class(static_cast<unsigned long>(c)), denom);
    q.canonicalize();
    return q;
  };

  WalkEnumeration result;
  result.steps = steps;
  result.return_count.resize(count_hist.size());
  result.last_zero.resize(last_hist.size());
  result.first_return_at.resize(first_hist.size());
  for (std::size_t i = 0; i < count_hist.size(); ++i) {
    result.return_count[i] = fraction(count_hist[i]);
    result.last_zero[i] = fraction(last_hist[i]);
    result.first_return_at[i] = fraction(first_hist[i]);
  }
  result.no_return = fraction(none);
  return result;
}
