#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hopcut/crossbar.hpp"
#include "hopcut/graph.hpp"
#include "hopcut/hnn.hpp"

namespace hopcut {

// Outcome of one annealing run against a reference optimum. success means the
// best-encountered cut equals the reference value.
struct RunResult {
  int instance_id = 0;
  std::uint64_t seed = 0;
  bool success = false;
  long long best_cut = 0;
  int best_sweep = 0;
};

// successes / total
double success_probability(std::span<const RunResult> results);

// Expected repetitions to reach the target confidence:
// max(1, ln(1 - target) / ln(1 - p)). Real valued (no ceiling); p >= target
// clamps to 1; p = 0 returns +infinity (the target is unattainable).
double n_repetitions(double p, double target = 0.99);

// T_ann = sweeps * ceil(n / batch_size) * clock_period
double annealing_time(int n, int sweeps, int batch_size, double clock_period_s);

// same quantity from the clock frequency; dividing the exact cycle count
// keeps round figures (300 ns at 1 GHz) bit-exact in reports
double annealing_time_hz(int n, int sweeps, int batch_size, double clock_hz);

// TTS = T_ann * n_repetitions(p, target)
double time_to_solution(double t_ann_s, double p, double target = 0.99);

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool contains(double v) const { return v >= low && v <= high; }
};

// Percentile bootstrap of `stat` over with-replacement resamples of `values`.
// Deterministic per seed.
Interval bootstrap_interval(std::span<const double> values, int resamples,
                            double confidence, std::uint64_t seed,
                            const std::function<double(std::span<const double>)>&
                                stat = {});

// success-probability interval from run-level resampling of the indicator
Interval bootstrap_interval(std::span<const RunResult> results, int resamples,
                            double confidence, std::uint64_t seed);

enum class PowerMode { FullMatrix, TenColumn, OneColumn };

std::string to_string(PowerMode mode);
PowerMode power_mode_from_string(const std::string& s);

// Per-cycle energy of the peripheral banks and the crossbar itself, in
// picojoules, plus total leakage in microwatts. Peripheral entries are
// aggregates over the whole bank (e.g. 64 comparators), so mode totals are
// component sums by construction.
struct EnergyTable {
  double io_buffer_pj = 0.0;
  double switch_drivers_pj = 0.0;
  double mux_pj = 0.0;
  double mux_decoder_pj = 0.0;
  double comparator_pj = 0.0;
  double xbar_full_pj = 0.0;
  double xbar_10col_pj = 0.0;
  double xbar_1col_pj = 0.0;
  double leakage_uw = 0.0;

  double peripheral_pj() const;
  double energy_per_cycle_pj(PowerMode mode) const;

  // bundled 64-unit bank profile
  static EnergyTable defaults();
  // "component = value" key-value text; keys io_buffer, switch_drivers, mux,
  // mux_decoder, comparator, xbar_full, xbar_10col, xbar_1col (pJ/cycle) and
  // leakage_uw; area_* keys are carried by profile files but ignored here
  static EnergyTable from_profile(std::istream& in);
};

// dynamic energy * clock * overhead, plus leakage
double power_w(const EnergyTable& table, PowerMode mode, double clock_hz,
               double overhead);

double energy_to_solution_j(double power_w, double tts_s);
// solutions per second per watt, i.e. 1 / energy-to-solution
double throughput_per_j(double energy_j);

struct TtsReport {
  double p_success = 0.0;
  Interval p_interval;
  double t_ann_s = 0.0;
  double n_rep = 1.0;
  double tts_s = 0.0;
  Interval tts_interval;
  double power_w = 0.0;
  double energy_j = 0.0;
  double throughput = 0.0;  // solutions / s / W
};

struct CampaignConfig {
  SolverConfig solver;
  BackendSpec backend;
  int seeds_per_instance = 100;
  std::uint64_t master_seed = 1;
  double target = 0.99;
  double clock_hz = 1e9;
  PowerMode power_mode = PowerMode::OneColumn;
  double overhead = 2.0;
  EnergyTable energy = EnergyTable::defaults();
  int bootstrap_resamples = 2000;
  int jobs = 1;
};

struct InstanceReport {
  std::string id;
  OptimumInfo optimum;
  std::vector<RunResult> runs;
  TtsReport tts;
};

struct CampaignReport {
  std::vector<InstanceReport> instances;
  double median_tts_s = 0.0;
  Interval median_tts_interval;
};

// Runs seeds_per_instance independent anneals per instance (parallel across
// (instance, seed) work items, deterministic for a given master seed
// regardless of job count), then derives p, N_rep, TTS, power and energy per
// instance and the median TTS across instances with a bootstrap interval.
// Every instance must carry a reference optimum.
CampaignReport tts_campaign(std::span<const Graph> instances,
                            const CampaignConfig& cfg);

}  // namespace hopcut
