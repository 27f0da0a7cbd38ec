// SPDX-License-Identifier: Apache-2.0
//
// renewal: exact distributions, asymptotics, simulation, and estimation for
// two renewal models of rare recurring events (exponential gaps and
// symmetric random-walk first-return gaps).  One walk step is one year
// unless --years-per-step says otherwise.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "renewal/engine.hpp"
#include "renewal/poisson.hpp"
#include "renewal/records.hpp"
#include "renewal/stats.hpp"
#include "renewal/table.hpp"
#include "renewal/walk.hpp"

namespace {

using renewal::table::Cell;
using renewal::table::Format;
using renewal::table::OutputTable;

struct GlobalFlags {
  std::string format = "csv";
  std::uint64_t seed = 42;
  std::string out_path;

  Format table_format() const {
    return format == "json" ? Format::json : Format::csv;
  }
};

void write_file_or_throw(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
}

void emit(const GlobalFlags& flags, const OutputTable& table) {
  const std::string content = table.render(flags.table_format());
  if (flags.out_path.empty()) {
    std::cout << content;
  } else {
    write_file_or_throw(flags.out_path, content);
  }
}

// Shared --rate / --rate-denominator pair.  The denominator form keeps
// parameters like 1/30 exact in intent: the rate is derived from the
// integer-valued gap instead of a decimal that the user pre-rounded.
struct RateFlags {
  double denominator = 0.0;
  double rate = 0.0;
  CLI::Option* denominator_opt = nullptr;
  CLI::Option* rate_opt = nullptr;

  void attach(CLI::App* cmd, double default_denominator) {
    denominator = default_denominator;
    denominator_opt =
        cmd->add_option("--rate-denominator", denominator,
                        "Mean gap d in years; the rate becomes 1/d")
            ->check(CLI::PositiveNumber);
    rate_opt = cmd->add_option("--rate", rate, "Rate per year, as a decimal")
                   ->check(CLI::PositiveNumber);
    rate_opt->excludes(denominator_opt);
  }

  bool given() const {
    return rate_opt->count() > 0 || denominator_opt->count() > 0;
  }

  renewal::poisson::Rate resolve() const {
    if (rate_opt->count() > 0) {
      return renewal::poisson::Rate::from_rate(rate);
    }
    if (denominator == 0.0) {
      throw CLI::RequiredError("--rate-denominator or --rate");
    }
    return renewal::poisson::Rate::from_mean_gap(denominator);
  }
};

std::int64_t maybe_floor_even(std::int64_t epoch, bool floor_flag) {
  return floor_flag ? renewal::walk::floor_even(epoch) : epoch;
}

std::string read_file_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// -- simulate -----------------------------------------------------------------

struct SimulateArgs {
  std::string model = "rw";
  double horizon = 300.0;
  std::uint64_t reps = 10000;
  double years_per_step = 1.0;
  std::uint64_t step_cap = renewal::engine::kDefaultStepCap;
  std::vector<double> gap_probes;
  std::vector<double> last_probes;
  unsigned threads = 0;
  RateFlags rate;
};

void run_simulate(const GlobalFlags& flags, const SimulateArgs& args) {
  using renewal::engine::EnsembleStats;
  using renewal::engine::InterarrivalModel;
  using renewal::engine::Probes;

  const bool is_rw = args.model == "rw";
  const InterarrivalModel model =
      is_rw ? InterarrivalModel::rw_first_return(args.years_per_step,
                                                 args.step_cap)
            : InterarrivalModel::exponential(args.rate.resolve());

  Probes probes;
  probes.gap_thresholds = args.gap_probes;
  probes.last_event_epochs = args.last_probes;
  if (probes.gap_thresholds.empty() && probes.last_event_epochs.empty()) {
    if (is_rw) {
      probes.last_event_epochs = {150.0};
    } else {
      probes.gap_thresholds = {60.0};
    }
  }

  const EnsembleStats stats = renewal::engine::run_ensemble(
      model, args.horizon, args.reps, flags.seed, probes, args.threads);

  // Exact references for the side-by-side columns.
  const std::int64_t steps_horizon = renewal::walk::floor_even(
      static_cast<std::int64_t>(std::floor(args.horizon / args.years_per_step)));
  double exact_mean = 0.0;
  std::vector<double> exact_pmf;
  if (is_rw) {
    exact_mean = renewal::walk::expected_returns(steps_horizon);
    exact_pmf = renewal::walk::return_count_pmf(steps_horizon).mass;
  } else {
    exact_mean =
        renewal::poisson::count_mean(args.rate.resolve(), args.horizon);
    exact_pmf = renewal::poisson::count_pmf_from_mean(
                    exact_mean,
                    static_cast<std::int64_t>(stats.count_pmf.size()) - 1)
                    .mass;
  }

  OutputTable table({"quantity", "parameter", "estimate", "se", "exact"});
  table.add_row({std::string("replicates"), std::string(), stats.replicates,
                 std::string(), std::string()});
  table.add_row({std::string("base_seed"), std::string(), stats.base_seed,
                 std::string(), std::string()});
  table.add_row({std::string("generator"), std::string(),
                 std::string(stats.generator), std::string(), std::string()});
  table.add_row({std::string("censored_paths"), std::string(),
                 stats.censored_paths, std::string(), std::string()});
  table.add_row({std::string("count_mean"), args.horizon, stats.count_mean,
                 stats.count_mean_se, exact_mean});
  for (std::size_t k = 0; k < stats.count_pmf.size(); ++k) {
    const double exact =
        k < exact_pmf.size() ? exact_pmf[k] : 0.0;
    table.add_row({std::string("count_pmf"), static_cast<std::int64_t>(k),
                   stats.count_pmf[k], stats.count_pmf_se[k], exact});
  }
  for (const auto& probe : stats.gap_tail) {
    table.add_row({std::string("gap_tail"), probe.parameter, probe.estimate,
                   probe.se, model.tail(probe.parameter)});
  }
  for (const auto& probe : stats.last_event_cdf) {
    double exact;
    if (is_rw) {
      const std::int64_t epoch = renewal::walk::floor_even(
          static_cast<std::int64_t>(
              std::floor(probe.parameter / args.years_per_step)));
      exact = renewal::walk::last_zero_cdf(
          steps_horizon, epoch <= steps_horizon ? epoch : steps_horizon);
    } else {
      // No event in (e, horizon] leaves the last event at or before e.
      exact = std::exp(-args.rate.resolve().value() *
                       (args.horizon - probe.parameter));
    }
    table.add_row({std::string("last_event_cdf"), probe.parameter,
                   probe.estimate, probe.se, exact});
  }
  emit(flags, table);
}

// -- figures --------------------------------------------------------------

void run_figures(const GlobalFlags& flags, const std::string& out_dir) {
  const std::string prefix = out_dir.empty() ? "" : out_dir + "/";

  // Poisson counts over 300 years at one event per 30 years.
  const auto rate = renewal::poisson::Rate::from_mean_gap(30.0);
  const auto poisson = renewal::poisson::count_pmf(rate, 300.0);
  OutputTable fig1({"k", "mass"});
  for (std::size_t k = 0; k < poisson.mass.size(); ++k) {
    fig1.add_row({static_cast<std::int64_t>(k), poisson.mass[k]});
  }
  write_file_or_throw(prefix + "fig1.csv", fig1.to_csv());

  // Exact return-count distribution for a 300-step walk.
  const auto returns = renewal::walk::return_count_pmf(300);
  OutputTable fig2({"r", "mass"});
  for (std::size_t r = 0; r < returns.mass.size(); ++r) {
    fig2.add_row({static_cast<std::int64_t>(r), returns.mass[r]});
  }
  write_file_or_throw(prefix + "fig2.csv", fig2.to_csv());

  // One seeded 300-step walk realization, with the exact probability that
  // the last origin visit falls in the first half as a companion value.
  renewal::engine::RngStream stream(flags.seed, 0);
  const auto positions = renewal::engine::sample_walk_positions(stream, 300);
  OutputTable path({"step", "position"});
  for (std::size_t s = 0; s < positions.size(); ++s) {
    path.add_row({static_cast<std::int64_t>(s), positions[s]});
  }
  const double cdf = renewal::walk::last_zero_cdf(300, 150);
  const std::string fig3 =
      "# last_zero_cdf(300,150) = " + renewal::table::format_number(cdf) +
      "\n" + path.to_csv();
  write_file_or_throw(prefix + "fig3.csv", fig3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Renewal-process toolkit: exact laws, asymptotics, Monte Carlo, and "
      "estimation for rare recurring events"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", flags.seed, "Base seed for seeded commands")
      ->capture_default_str();
  app.add_option("--out", flags.out_path,
                 "Write the output table to this file instead of stdout");

  // tail ------------------------------------------------------------------
  auto* tail = app.add_subcommand("tail", "Interarrival tail P(gap > t)");
  tail->require_subcommand(1);
  tail->fallthrough();

  auto* tail_exp =
      tail->add_subcommand("exp", "Exponential interarrival tail");
  tail_exp->fallthrough();
  struct {
    double t = 0.0;
    RateFlags rate;
  } tail_exp_args;
  tail_exp_args.rate.attach(tail_exp, 0.0);
  tail_exp->add_option("--t", tail_exp_args.t, "Gap length in years")
      ->required()
      ->check(CLI::NonNegativeNumber);
  tail_exp->callback([&] {
    const auto rate = tail_exp_args.rate.resolve();
    OutputTable table({"model", "rate", "t", "tail"});
    table.add_row({std::string("exp"), rate.value(), tail_exp_args.t,
                   renewal::poisson::exp_tail(rate, tail_exp_args.t)});
    emit(flags, table);
  });

  auto* tail_rw =
      tail->add_subcommand("rw", "Random-walk first-return tail");
  tail_rw->fallthrough();
  struct {
    std::int64_t t = 0;
    bool floor_even = false;
  } tail_rw_args;
  tail_rw->add_option("--t", tail_rw_args.t, "Gap length in steps (even)")
      ->required();
  tail_rw->add_flag("--floor-even", tail_rw_args.floor_even,
                    "Round an odd --t down to the even epoch below it");
  tail_rw->callback([&] {
    const std::int64_t t =
        maybe_floor_even(tail_rw_args.t, tail_rw_args.floor_even);
    OutputTable table({"model", "t", "tail_exact", "tail_asymptotic"});
    table.add_row({std::string("rw"), t, renewal::walk::no_return_survival(t),
                   renewal::walk::no_return_survival_asymptotic(t)});
    emit(flags, table);
  });

  // pmf ---------------------------------------------------------------------
  auto* pmf = app.add_subcommand("pmf", "Full probability mass functions");
  pmf->require_subcommand(1);
  pmf->fallthrough();

  auto* pmf_poisson = pmf->add_subcommand("poisson", "Poisson count pmf");
  pmf_poisson->fallthrough();
  struct {
    double mean = 0.0;
    double horizon = 0.0;
    std::int64_t kmax = -1;
    CLI::Option* mean_opt = nullptr;
    CLI::Option* horizon_opt = nullptr;
    RateFlags rate;
  } pp_args;
  pp_args.rate.attach(pmf_poisson, 0.0);
  pp_args.mean_opt =
      pmf_poisson->add_option("--mean", pp_args.mean, "Count mean directly")
          ->check(CLI::NonNegativeNumber);
  pp_args.horizon_opt =
      pmf_poisson
          ->add_option("--horizon", pp_args.horizon,
                       "Horizon in years; pairs with a rate flag")
          ->check(CLI::NonNegativeNumber);
  pp_args.mean_opt->excludes(pp_args.rate.rate_opt);
  pp_args.mean_opt->excludes(pp_args.rate.denominator_opt);
  pp_args.mean_opt->excludes(pp_args.horizon_opt);
  pmf_poisson->add_option("--kmax", pp_args.kmax,
                          "Largest count tabulated; negative selects the "
                          "truncation default");
  pmf_poisson->callback([&] {
    double mean;
    if (pp_args.mean_opt->count() > 0) {
      mean = pp_args.mean;
    } else if (pp_args.rate.given() && pp_args.horizon_opt->count() > 0) {
      mean = renewal::poisson::count_mean(pp_args.rate.resolve(),
                                          pp_args.horizon);
    } else {
      throw CLI::RequiredError("--mean, or a rate flag with --horizon");
    }
    const auto dist = renewal::poisson::count_pmf_from_mean(mean, pp_args.kmax);
    OutputTable table({"k", "mass"});
    for (std::size_t k = 0; k < dist.mass.size(); ++k) {
      table.add_row({static_cast<std::int64_t>(k), dist.mass[k]});
    }
    emit(flags, table);
  });

  auto* pmf_returns =
      pmf->add_subcommand("rw-returns", "Return-count pmf for a walk");
  pmf_returns->fallthrough();
  struct {
    std::int64_t steps = 0;
    bool floor_even = false;
  } pr_args;
  pmf_returns->add_option("--steps", pr_args.steps, "Walk length (even)")
      ->required();
  pmf_returns->add_flag("--floor-even", pr_args.floor_even,
                        "Round an odd --steps down");
  pmf_returns->callback([&] {
    const auto dist = renewal::walk::return_count_pmf(
        maybe_floor_even(pr_args.steps, pr_args.floor_even));
    OutputTable table({"r", "mass"});
    for (std::size_t r = 0; r < dist.mass.size(); ++r) {
      table.add_row({static_cast<std::int64_t>(r), dist.mass[r]});
    }
    emit(flags, table);
  });

  auto* pmf_arcsine =
      pmf->add_subcommand("arcsine", "Last-origin-visit epoch pmf");
  pmf_arcsine->fallthrough();
  struct {
    std::int64_t steps = 0;
    bool floor_even = false;
  } pa_args;
  pmf_arcsine->add_option("--steps", pa_args.steps, "Walk length (even)")
      ->required();
  pmf_arcsine->add_flag("--floor-even", pa_args.floor_even,
                        "Round an odd --steps down");
  pmf_arcsine->callback([&] {
    const auto dist = renewal::walk::last_zero_pmf(
        maybe_floor_even(pa_args.steps, pa_args.floor_even));
    OutputTable table({"epoch", "mass"});
    for (std::size_t k = 0; k < dist.mass.size(); ++k) {
      table.add_row(
          {static_cast<std::int64_t>(2 * k), dist.mass[k]});
    }
    emit(flags, table);
  });

  // arcsine -----------------------------------------------------------------
  auto* arcsine = app.add_subcommand(
      "arcsine", "P(last origin visit <= epoch) within a horizon");
  arcsine->fallthrough();
  struct {
    std::int64_t horizon = 300;
    std::int64_t epoch = 150;
    bool floor_even = false;
  } arc_args;
  arcsine->add_option("--horizon", arc_args.horizon, "Walk length (even)")
      ->capture_default_str();
  arcsine->add_option("--epoch", arc_args.epoch, "Query epoch (even)")
      ->capture_default_str();
  arcsine->add_flag("--floor-even", arc_args.floor_even,
                    "Round odd values down");
  arcsine->callback([&] {
    const std::int64_t horizon =
        maybe_floor_even(arc_args.horizon, arc_args.floor_even);
    const std::int64_t epoch =
        maybe_floor_even(arc_args.epoch, arc_args.floor_even);
    OutputTable table({"horizon", "epoch", "cdf"});
    table.add_row({horizon, epoch,
                   renewal::walk::last_zero_cdf(horizon, epoch)});
    emit(flags, table);
  });

  // simulate ------------------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo ensemble with exact references");
  simulate->fallthrough();
  SimulateArgs sim_args;
  simulate->add_option("--model", sim_args.model, "Interarrival model")
      ->check(CLI::IsMember({"exp", "rw"}))
      ->capture_default_str();
  simulate->add_option("--horizon", sim_args.horizon, "Horizon in years")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simulate->add_option("--reps", sim_args.reps, "Number of replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_args.rate.attach(simulate, 30.0);
  simulate
      ->add_option("--years-per-step", sim_args.years_per_step,
                   "Walk time scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--step-cap", sim_args.step_cap,
                       "Per-draw walk step budget; hitting it censors the "
                       "replicate");
  simulate->add_option("--gap-probe", sim_args.gap_probes,
                       "Estimate P(first gap > g); repeatable");
  simulate->add_option("--last-probe", sim_args.last_probes,
                       "Estimate P(last event <= e); repeatable");
  simulate->add_option("--threads", sim_args.threads,
                       "Worker threads; 0 = hardware count (result is "
                       "identical either way)");
  simulate->callback([&] { run_simulate(flags, sim_args); });

  // estimate -----------------------------------------------------------------
  auto* estimate = app.add_subcommand(
      "estimate", "Mean gap and confidence interval from event records");
  estimate->fallthrough();
  struct {
    std::string input;
    double confidence = 0.90;
    std::string method = "exponential-sigma";
  } est_args;
  estimate->add_option("input", est_args.input, "CSV file of year,label rows")
      ->required();
  estimate
      ->add_option("--confidence", est_args.confidence,
                   "Two-sided confidence level in (0,1)")
      ->capture_default_str();
  estimate
      ->add_option("--method", est_args.method,
                   "Standard-error scale: the exponential law's sd == mean, "
                   "or the sample sd")
      ->check(CLI::IsMember({"exponential-sigma", "sample-sd"}))
      ->capture_default_str();
  estimate->callback([&] {
    const std::string text = read_file_or_throw(est_args.input);
    renewal::records::HistoricalRecord record;
    renewal::records::ParseError error;
    if (!renewal::records::parse_records(text, record, error)) {
      throw std::runtime_error(est_args.input + ": " + error.to_string());
    }
    const auto sample = renewal::records::to_sample(record);
    const auto method = est_args.method == "sample-sd"
                            ? renewal::stats::CiMethod::sample_sd
                            : renewal::stats::CiMethod::exponential_sigma;
    const auto result =
        renewal::stats::ci_mean(sample, est_args.confidence, method);
    OutputTable table({"mean", "se", "ci_low", "ci_high", "confidence",
                       "n_gaps", "method"});
    table.add_row({result.mean, result.se, result.lower, result.upper,
                   result.level, static_cast<std::uint64_t>(result.n),
                   std::string(renewal::stats::ci_method_name(method))});
    emit(flags, table);
  });

  // figures ------------------------------------------------------------------
  auto* figures = app.add_subcommand(
      "figures", "Write fig1.csv, fig2.csv, fig3.csv into a directory");
  figures->fallthrough();
  std::string out_dir = ".";
  figures->add_option("--out-dir", out_dir, "Target directory")
      ->capture_default_str();
  figures->callback([&] { run_figures(flags, out_dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
