// SPDX-License-Identifier: Apache-2.0
#include "renewal/engine.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "renewal/walk.hpp"

namespace renewal::engine {
namespace {

std::uint64_t floor_even_u64(std::uint64_t v) { return v & ~std::uint64_t{1}; }

// Steps equivalent of a time budget; saturates instead of overflowing.
std::uint64_t steps_for_time(double time_budget, double years_per_step) {
  if (time_budget <= 0.0) return 0;
  const double steps = std::floor(time_budget / years_per_step);
  if (steps >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(steps);
}

}  // namespace

FirstReturnDraw sample_first_return(RngStream& stream, std::uint64_t bound,
                                    std::uint64_t cap) {
  // Returns happen only at even epochs, so the walk advances two steps at a
  // time (two random bits per iteration, 32 iterations per 64-bit word) and
  // odd bounds act like the even epoch below them.
  const std::uint64_t even_bound = floor_even_u64(bound);
  const std::uint64_t even_cap = floor_even_u64(cap);
  const std::uint64_t limit = even_bound < even_cap ? even_bound : even_cap;
  const bool cap_first = even_cap < even_bound;

  FirstReturnDraw draw;
  std::int64_t pos = 0;
  std::uint64_t steps = 0;
  std::uint64_t word = 0;
  int pairs_left = 0;
  while (steps < limit) {
    if (pairs_left == 0) {
      word = stream.next();
      pairs_left = 32;
    }
    // Bit pair to displacement: 00 → -2, 01/10 → 0, 11 → +2.
    const std::uint64_t two = word & 3u;
    word >>= 2;
    --pairs_left;
    pos += static_cast<std::int64_t>(two == 3u) * 2 -
           static_cast<std::int64_t>(two == 0u) * 2;
    steps += 2;
    if (pos == 0) {
      draw.steps = steps;
      return draw;
    }
  }
  draw.exceeded_bound = !cap_first;
  draw.censored = cap_first;
  return draw;
}

InterarrivalModel InterarrivalModel::exponential(poisson::Rate rate) {
  return InterarrivalModel(Kind::exponential, rate.value(), 0.0, 0);
}

InterarrivalModel InterarrivalModel::rw_first_return(double years_per_step,
                                                     std::uint64_t step_cap) {
  if (!(years_per_step > 0.0) || !std::isfinite(years_per_step)) {
    throw std::domain_error(
        "rw_first_return: years_per_step must be finite and > 0");
  }
  return InterarrivalModel(Kind::rw_first_return, 0.0, years_per_step,
                           step_cap);
}

double InterarrivalModel::tail(double t) const {
  if (!(t >= 0.0)) {
    throw std::domain_error("InterarrivalModel::tail: t must be >= 0");
  }
  switch (kind_) {
    case Kind::exponential:
      return std::exp(-rate_ * t);
    case Kind::rw_first_return: {
      // P(gap > t) is flat between even step counts.
      const double steps = std::floor(t / years_per_step_);
      const std::int64_t even =
          walk::floor_even(static_cast<std::int64_t>(steps));
      return walk::at_origin_prob(even);
    }
  }
  throw std::logic_error("InterarrivalModel::tail: unknown kind");
}

double InterarrivalModel::mean() const {
  switch (kind_) {
    case Kind::exponential:
      return 1.0 / rate_;
    case Kind::rw_first_return:
      return std::numeric_limits<double>::infinity();
  }
  throw std::logic_error("InterarrivalModel::mean: unknown kind");
}

InterarrivalModel::Draw InterarrivalModel::sample(RngStream& stream,
                                                  double bound) const {
  Draw draw;
  switch (kind_) {
    case Kind::exponential: {
      draw.value = -std::log(stream.uniform01()) * (1.0 / rate_);
      draw.exceeded_bound = draw.value > bound;
      return draw;
    }
    case Kind::rw_first_return: {
      const std::uint64_t step_bound = steps_for_time(bound, years_per_step_);
      const FirstReturnDraw fr = sample_first_return(stream, step_bound, step_cap_);
      draw.exceeded_bound = fr.exceeded_bound;
      draw.censored = fr.censored;
      if (!fr.exceeded_bound && !fr.censored) {
        draw.value = static_cast<double>(fr.steps) * years_per_step_;
      }
      return draw;
    }
  }
  throw std::logic_error("InterarrivalModel::sample: unknown kind");
}

RenewalPath simulate_path(const InterarrivalModel& model, double horizon,
                          RngStream& stream) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw std::domain_error("simulate_path: horizon must be finite and >= 0");
  }
  RenewalPath path;
  path.horizon = horizon;
  double t = 0.0;
  for (;;) {
    const auto draw = model.sample(stream, horizon - t);
    if (draw.censored) {
      path.censored = true;
      return path;
    }
    if (draw.exceeded_bound) return path;
    const double next = t + draw.value;
    if (next > horizon) return path;  // rounding guard; the bound check
                                      // already rules this out for exact sums
    t = next;
    path.event_times.push_back(t);
  }
}

std::vector<std::int64_t> sample_walk_positions(RngStream& stream,
                                                std::int64_t steps) {
  if (steps < 0) {
    throw std::domain_error("sample_walk_positions: steps must be >= 0");
  }
  std::vector<std::int64_t> positions(static_cast<std::size_t>(steps) + 1);
  positions[0] = 0;
  std::uint64_t word = 0;
  int bits_left = 0;
  std::int64_t pos = 0;
  for (std::int64_t s = 1; s <= steps; ++s) {
    if (bits_left == 0) {
      word = stream.next();
      bits_left = 64;
    }
    pos += (word & 1u) ? 1 : -1;
    word >>= 1;
    --bits_left;
    positions[static_cast<std::size_t>(s)] = pos;
  }
  return positions;
}

namespace {

// Integer tallies for one fixed chunk of replicates.  Keeping everything
// integral until the final merge makes the ensemble bit-identical under any
// thread count: no floating-point reduction order is ever observable.
struct ChunkTally {
  std::vector<std::uint64_t> count_hist;
  std::uint64_t sum_count = 0;
  unsigned __int128 sum_count_sq = 0;
  std::vector<std::uint64_t> gap_exceed;
  std::vector<std::uint64_t> last_le;
  std::uint64_t censored = 0;
};

constexpr std::uint64_t kChunkSize = 4096;

void tally_path(const RenewalPath& path, const Probes& probes,
                ChunkTally& tally) {
  const std::uint64_t n = path.count();
  if (n + 1 > tally.count_hist.size()) tally.count_hist.resize(n + 1, 0);
  ++tally.count_hist[n];
  tally.sum_count += n;
  tally.sum_count_sq += static_cast<unsigned __int128>(n) * n;
  for (std::size_t i = 0; i < probes.gap_thresholds.size(); ++i) {
    const bool first_gap_exceeds =
        path.event_times.empty() ||
        path.event_times.front() > probes.gap_thresholds[i];
    if (first_gap_exceeds) ++tally.gap_exceed[i];
  }
  const double last = path.last_event_or_origin();
  for (std::size_t i = 0; i < probes.last_event_epochs.size(); ++i) {
    if (last <= probes.last_event_epochs[i]) ++tally.last_le[i];
  }
  if (path.censored) ++tally.censored;
}

double binomial_se(double p, std::uint64_t replicates) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(replicates));
}

}  // namespace

EnsembleStats run_ensemble(const InterarrivalModel& model, double horizon,
                           std::uint64_t replicates, std::uint64_t base_seed,
                           const Probes& probes, unsigned threads) {
  if (replicates < 1) {
    throw std::domain_error("run_ensemble: replicates must be >= 1");
  }
  for (double g : probes.gap_thresholds) {
    if (!(g >= 0.0) || g > horizon) {
      throw std::domain_error(
          "run_ensemble: gap threshold " + std::to_string(g) +
          " outside [0, horizon]; the first gap is only observed up to the "
          "horizon");
    }
  }
  for (double e : probes.last_event_epochs) {
    if (!(e >= 0.0)) {
      throw std::domain_error("run_ensemble: last-event epoch must be >= 0");
    }
  }

  const std::uint64_t n_chunks = (replicates + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkTally> tallies(n_chunks);
  for (auto& t : tallies) {
    t.gap_exceed.assign(probes.gap_thresholds.size(), 0);
    t.last_le.assign(probes.last_event_epochs.size(), 0);
  }

  unsigned n_threads = threads != 0 ? threads : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  if (n_threads > n_chunks) n_threads = static_cast<unsigned>(n_chunks);

  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      const std::uint64_t begin = c * kChunkSize;
      const std::uint64_t end =
          begin + kChunkSize < replicates ? begin + kChunkSize : replicates;
      for (std::uint64_t r = begin; r < end; ++r) {
        RngStream stream(base_seed, r);
        const RenewalPath path = simulate_path(model, horizon, stream);
        tally_path(path, probes, tallies[c]);
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Sequential merge in chunk (replicate-index) order.
  ChunkTally total;
  total.gap_exceed.assign(probes.gap_thresholds.size(), 0);
  total.last_le.assign(probes.last_event_epochs.size(), 0);
  for (const auto& t : tallies) {
    if (t.count_hist.size() > total.count_hist.size()) {
      total.count_hist.resize(t.count_hist.size(), 0);
    }
    for (std::size_t k = 0; k < t.count_hist.size(); ++k) {
      total.count_hist[k] += t.count_hist[k];
    }
    total.sum_count += t.sum_count;
    total.sum_count_sq += t.sum_count_sq;
    for (std::size_t i = 0; i < total.gap_exceed.size(); ++i) {
      total.gap_exceed[i] += t.gap_exceed[i];
    }
    for (std::size_t i = 0; i < total.last_le.size(); ++i) {
      total.last_le[i] += t.last_le[i];
    }
    total.censored += t.censored;
  }

  EnsembleStats stats;
  stats.replicates = replicates;
  stats.base_seed = base_seed;
  stats.censored_paths = total.censored;

  const double r = static_cast<double>(replicates);
  stats.count_pmf.resize(total.count_hist.size());
  stats.count_pmf_se.resize(total.count_hist.size());
  for (std::size_t k = 0; k < total.count_hist.size(); ++k) {
    const double p = static_cast<double>(total.count_hist[k]) / r;
    stats.count_pmf[k] = p;
    stats.count_pmf_se[k] = binomial_se(p, replicates);
  }
  stats.count_mean = static_cast<double>(total.sum_count) / r;
  if (replicates >= 2) {
    const double sum_sq = static_cast<double>(total.sum_count_sq);
    const double var =
        (sum_sq - r * stats.count_mean * stats.count_mean) / (r - 1.0);
    stats.count_mean_se = std::sqrt(var > 0.0 ? var : 0.0) / std::sqrt(r);
  }

  stats.gap_tail.resize(probes.gap_thresholds.size());
  for (std::size_t i = 0; i < probes.gap_thresholds.size(); ++i) {
    const double p = static_cast<double>(total.gap_exceed[i]) / r;
    stats.gap_tail[i] = {probes.gap_thresholds[i], p, binomial_se(p, replicates)};
  }
  stats.last_event_cdf.resize(probes.last_event_epochs.size());
  for (std::size_t i = 0; i < probes.last_event_epochs.size(); ++i) {
    const double p = static_cast<double>(total.last_le[i]) / r;
    stats.last_event_cdf[i] = {probes.last_event_epochs[i], p,
                               binomial_se(p, replicates)};
  }
  return stats;
}

}  // namespace renewal::engine
