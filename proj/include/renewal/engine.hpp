// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "renewal/poisson.hpp"
#include "renewal/rng.hpp"

namespace renewal::engine {

/// Default step budget for one random-walk first-return draw.  The
/// first-return law has infinite mean, so an unbounded sampler could spin
/// forever; a draw that exhausts its budget is reported as censored, never
/// silently truncated.
inline constexpr std::uint64_t kDefaultStepCap = 100'000'000ull;

/// One ±1-step first-return draw, bounded.
///
/// Simulates the walk until it returns to the origin, the step count
/// exceeds `bound`, or the step count would exceed `cap`.  `exceeded_bound`
/// means only that the return happens after `bound` steps; since callers
/// pass the remaining horizon as the bound, that is full knowledge of the
/// path ("no event before the horizon") and carries no bias.  `censored`
/// means the cap fired first and the draw's law was actually cut off.
struct FirstReturnDraw {
  std::uint64_t steps = 0;  // valid only when neither flag is set
  bool exceeded_bound = false;
  bool censored = false;
};
FirstReturnDraw sample_first_return(RngStream& stream, std::uint64_t bound,
                                    std::uint64_t cap = kDefaultStepCap);

/// Interarrival law for the renewal process: either exponential gaps or
/// random-walk first-return times.  The walk route samples actual ±1 steps
/// rather than inverting the exact pmf, so simulation results are an
/// independent check on the closed forms.
class InterarrivalModel {
 public:
  static InterarrivalModel exponential(poisson::Rate rate);
  /// years_per_step scales walk steps to model time (default 1 step = 1 year).
  static InterarrivalModel rw_first_return(double years_per_step = 1.0,
                                           std::uint64_t step_cap = kDefaultStepCap);

  /// P(gap > t) in model time units.
  double tail(double t) const;
  /// Mean gap; +infinity for the walk model.
  double mean() const;
  bool is_walk() const { return kind_ == Kind::rw_first_return; }

  struct Draw {
    double value = 0.0;  // valid only when neither flag is set
    bool exceeded_bound = false;
    bool censored = false;
  };
  /// One gap, abandoned early (exceeded_bound) once it is known to land
  /// beyond `bound` time units.
  Draw sample(RngStream& stream, double bound) const;

 private:
  enum class Kind { exponential, rw_first_return };
  InterarrivalModel(Kind kind, double rate, double years_per_step,
                    std::uint64_t step_cap)
      : kind_(kind), rate_(rate), years_per_step_(years_per_step),
        step_cap_(step_cap) {}

  Kind kind_;
  double rate_;            // exponential only
  double years_per_step_;  // walk only
  std::uint64_t step_cap_; // walk only
};

/// One simulated history: event times S₁ < S₂ < … ≤ horizon.
struct RenewalPath {
  double horizon = 0.0;
  std::vector<double> event_times;
  bool censored = false;  // a draw hit the step cap before the horizon

  std::size_t count() const { return event_times.size(); }
  /// Time of the final event, or 0 when no event occurred (the process
  /// starts at the origin, so "never left" reads as last event at time 0).
  double last_event_or_origin() const {
    return event_times.empty() ? 0.0 : event_times.back();
  }
};

/// Events within the horizon under the given model; the count is 0 with an
/// empty event list when the first gap already overshoots.
RenewalPath simulate_path(const InterarrivalModel& model, double horizon,
                          RngStream& stream);

/// Raw walk positions W₀..W_steps (W₀ = 0), for path illustrations.
std::vector<std::int64_t> sample_walk_positions(RngStream& stream,
                                                std::int64_t steps);

/// What run_ensemble should estimate beyond the count distribution:
/// P(first gap > g) for each g, and P(last event ≤ e) for each e.
struct Probes {
  std::vector<double> gap_thresholds;
  std::vector<double> last_event_epochs;
};

/// One Monte Carlo estimate with its binomial standard error.
struct ProbeEstimate {
  double parameter = 0.0;  // the threshold or epoch probed
  double estimate = 0.0;
  double se = 0.0;         // sqrt(p̂(1-p̂)/replicates)
};

/// Ensemble summary.  Bit-identical for fixed (model, horizon, replicates,
/// base_seed, probes) regardless of thread count: replicates are tallied in
/// integer accumulators per fixed-size chunk and chunks are merged in index
/// order, so no floating-point reduction depends on the schedule.
struct EnsembleStats {
  std::uint64_t replicates = 0;
  std::uint64_t base_seed = 0;
  const char* generator = RngStream::kAlgorithm;

  std::vector<double> count_pmf;      // count_pmf[k] = fraction with N = k
  std::vector<double> count_pmf_se;
  double count_mean = 0.0;
  double count_mean_se = 0.0;         // sample sd / sqrt(replicates)

  std::vector<ProbeEstimate> gap_tail;        // P(first gap > g)
  std::vector<ProbeEstimate> last_event_cdf;  // P(last event ≤ e)

  std::uint64_t censored_paths = 0;
};

/// Runs `replicates` independent paths with substreams derived from
/// (base_seed, replicate index).  threads = 0 picks the hardware count;
/// the result does not depend on the choice.  Gap-tail probes require
/// threshold ≤ horizon (the first gap is only observed that far).
EnsembleStats run_ensemble(const InterarrivalModel& model, double horizon,
                           std::uint64_t replicates, std::uint64_t base_seed,
                           const Probes& probes, unsigned threads = 0);

}  // namespace renewal::engine
