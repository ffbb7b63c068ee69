#include "hopcut/bench.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hopcut/parallel.hpp"

namespace hopcut {

double success_probability(std::span<const RunResult> results) {
  if (results.empty())
    throw std::invalid_argument("success_probability: no results");
  std::size_t hits = 0;
  for (const auto& r : results) hits += r.success ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

double n_repetitions(double p, double target) {
  if (!(target > 0.0) || !(target < 1.0))
    throw std::invalid_argument("n_repetitions: target must be in (0, 1)");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("n_repetitions: p must be in [0, 1]");
  if (p == 0.0) return std::numeric_limits<double>::infinity();
  if (p >= target) return 1.0;
  return std::log(1.0 - target) / std::log(1.0 - p);
}

double annealing_time(int n, int sweeps, int batch_size,
                      double clock_period_s) {
  if (n < 1 || sweeps < 1 || batch_size < 1 || !(clock_period_s > 0.0))
    throw std::invalid_argument("annealing_time: arguments must be positive");
  if (batch_size > n)
    throw std::invalid_argument("annealing_time: batch_size must be <= n");
  const int substeps = (n + batch_size - 1) / batch_size;
  return static_cast<double>(sweeps) * substeps * clock_period_s;
}

double annealing_time_hz(int n, int sweeps, int batch_size, double clock_hz) {
  if (n < 1 || sweeps < 1 || batch_size < 1 || !(clock_hz > 0.0))
    throw std::invalid_argument("annealing_time: arguments must be positive");
  if (batch_size > n)
    throw std::invalid_argument("annealing_time: batch_size must be <= n");
  const int substeps = (n + batch_size - 1) / batch_size;
  return static_cast<double>(sweeps) * substeps / clock_hz;
}

double time_to_solution(double t_ann_s, double p, double target) {
  return t_ann_s * n_repetitions(p, target);
}

namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double percentile(std::vector<double>& sorted, double q) {
  // nearest-rank with linear interpolation on the sorted sample
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

Interval bootstrap_interval(
    std::span<const double> values, int resamples, double confidence,
    std::uint64_t seed,
    const std::function<double(std::span<const double>)>& stat) {
  if (values.empty())
    throw std::invalid_argument("bootstrap_interval: no values");
  if (resamples < 1)
    throw std::invalid_argument("bootstrap_interval: resamples must be >= 1");
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::invalid_argument("bootstrap_interval: confidence in (0, 1)");

  const auto statistic = stat ? stat : std::function(mean_of);
  Rng rng(derive_seed(seed, 0xb5));
  std::vector<double> draw(values.size());
  std::vector<double> stats(resamples);
  for (int r = 0; r < resamples; ++r) {
    for (auto& d : draw) d = values[rng.index(values.size())];
    stats[r] = statistic(draw);
  }
  std::sort(stats.begin(), stats.end());
  const double alpha = 0.5 * (1.0 - confidence);
  return {percentile(stats, alpha), percentile(stats, 1.0 - alpha)};
}

Interval bootstrap_interval(std::span<const RunResult> results, int resamples,
                            double confidence, std::uint64_t seed) {
  if (results.empty())
    throw std::invalid_argument("bootstrap_interval: no results");
  std::vector<double> indicator(results.size());
  for (std::size_t i = 0; i < results.size(); ++i)
    indicator[i] = results[i].success ? 1.0 : 0.0;
  return bootstrap_interval(indicator, resamples, confidence, seed);
}

std::string to_string(PowerMode mode) {
  switch (mode) {
    case PowerMode::FullMatrix: return "full";
    case PowerMode::TenColumn: return "10col";
    case PowerMode::OneColumn: return "1col";
  }
  return "1col";
}

PowerMode power_mode_from_string(const std::string& s) {
  if (s == "full") return PowerMode::FullMatrix;
  if (s == "10col") return PowerMode::TenColumn;
  if (s == "1col") return PowerMode::OneColumn;
  throw std::invalid_argument("unknown power mode: " + s);
}

double EnergyTable::peripheral_pj() const {
  return io_buffer_pj + switch_drivers_pj + mux_pj + mux_decoder_pj +
         comparator_pj;
}

double EnergyTable::energy_per_cycle_pj(PowerMode mode) const {
  switch (mode) {
    case PowerMode::FullMatrix: return peripheral_pj() + xbar_full_pj;
    case PowerMode::TenColumn: return peripheral_pj() + xbar_10col_pj;
    case PowerMode::OneColumn: return peripheral_pj() + xbar_1col_pj;
  }
  throw std::invalid_argument("EnergyTable: unknown power mode");
}

EnergyTable EnergyTable::defaults() {
  // 64-unit bank: per-unit buffer/driver/mux/decoder/comparator energies
  // times the 64 rows/columns they serve
  EnergyTable t;
  t.io_buffer_pj = 0.023 * 64;
  t.switch_drivers_pj = 0.270 * 64;
  t.mux_pj = 0.013 * 64;
  t.mux_decoder_pj = 0.110 * 64;
  t.comparator_pj = 0.052 * 64;
  t.xbar_full_pj = 198.10;
  t.xbar_10col_pj = 30.953;
  t.xbar_1col_pj = 3.095;
  t.leakage_uw = 21.2037;
  return t;
}

EnergyTable EnergyTable::from_profile(std::istream& in) {
  std::map<std::string, double> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("energy profile line " + std::to_string(line_no) +
                               ": expected 'key = value'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.rfind("area", 0) == 0) continue;  // carried in profiles, unused
    try {
      std::size_t used = 0;
      const double v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument("trailing");
      kv[key] = v;
    } catch (const std::exception&) {
      throw std::runtime_error("energy profile line " + std::to_string(line_no) +
                               ": bad number '" + val + "'");
    }
  }
  EnergyTable t;
  auto take = [&kv](const char* key, double& field) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error(std::string("energy profile: missing key ") + key);
    field = it->second;
    kv.erase(it);
  };
  take("io_buffer", t.io_buffer_pj);
  take("switch_drivers", t.switch_drivers_pj);
  take("mux", t.mux_pj);
  take("mux_decoder", t.mux_decoder_pj);
  take("comparator", t.comparator_pj);
  take("xbar_full", t.xbar_full_pj);
  take("xbar_10col", t.xbar_10col_pj);
  take("xbar_1col", t.xbar_1col_pj);
  take("leakage_uw", t.leakage_uw);
  if (!kv.empty())
    throw std::runtime_error("energy profile: unknown key " + kv.begin()->first);
  return t;
}

double power_w(const EnergyTable& table, PowerMode mode, double clock_hz,
               double overhead) {
  if (!(clock_hz > 0.0) || !(overhead > 0.0))
    throw std::invalid_argument("power_w: clock and overhead must be positive");
  const double dynamic =
      table.energy_per_cycle_pj(mode) * 1e-12 * clock_hz * overhead;
  return dynamic + table.leakage_uw * 1e-6;
}

double energy_to_solution_j(double power_w, double tts_s) {
  if (power_w < 0.0 || tts_s < 0.0)
    throw std::invalid_argument("energy_to_solution: negative input");
  return power_w * tts_s;
}

double throughput_per_j(double energy_j) {
  if (!(energy_j > 0.0))
    throw std::invalid_argument(
        "throughput_per_j: undefined for zero energy-to-solution");
  return 1.0 / energy_j;
}

CampaignReport tts_campaign(std::span<const Graph> instances,
                            const CampaignConfig& cfg) {
  if (instances.empty())
    throw std::invalid_argument("tts_campaign: no instances");
  if (cfg.seeds_per_instance < 1)
    throw std::invalid_argument("tts_campaign: seeds_per_instance must be >= 1");
  for (const auto& g : instances) {
    if (!g.optimum())
      throw std::invalid_argument(
          "tts_campaign: every instance needs a reference optimum");
  }

  // behavioral auto-sigma calibrates at each instance's own size
  std::vector<BackendSpec> backends;
  std::vector<WeightMatrix> weights;
  backends.reserve(instances.size());
  weights.reserve(instances.size());
  for (const auto& g : instances) {
    backends.push_back(resolve_backend(cfg.backend, g.n(), cfg.master_seed));
    weights.push_back(graph_to_weights(g));
  }

  const std::size_t total =
      instances.size() * static_cast<std::size_t>(cfg.seeds_per_instance);
  std::vector<RunResult> all(total);
  parallel_for(total, cfg.jobs, [&](std::size_t item) {
    const std::size_t inst = item / cfg.seeds_per_instance;
    const std::size_t rep = item % cfg.seeds_per_instance;
    const std::uint64_t run_seed = derive_seed(cfg.master_seed, inst, rep);
    const AnnealTrace trace =
        run_solver(weights[inst], cfg.solver, backends[inst], run_seed);
    RunResult r;
    r.instance_id = static_cast<int>(inst);
    r.seed = run_seed;
    r.best_cut = trace.best_cut;
    r.best_sweep = trace.best_sweep;
    r.success = trace.best_cut == instances[inst].optimum()->value;
    all[item] = r;
  });

  CampaignReport report;
  report.instances.resize(instances.size());
  std::vector<double> tts_per_instance(instances.size());
  for (std::size_t inst = 0; inst < instances.size(); ++inst) {
    InstanceReport& ir = report.instances[inst];
    ir.id = "instance-" + std::to_string(inst);
    ir.optimum = *instances[inst].optimum();
    ir.runs.assign(all.begin() + inst * cfg.seeds_per_instance,
                   all.begin() + (inst + 1) * cfg.seeds_per_instance);

    TtsReport& t = ir.tts;
    t.p_success = success_probability(ir.runs);
    t.p_interval = bootstrap_interval(ir.runs, cfg.bootstrap_resamples, 0.95,
                                      derive_seed(cfg.master_seed, inst, 0xb001));
    t.t_ann_s = annealing_time_hz(instances[inst].n(), cfg.solver.sweeps,
                                  cfg.solver.plan.batch_size, cfg.clock_hz);
    t.n_rep = n_repetitions(t.p_success, cfg.target);
    t.tts_s = t.t_ann_s * t.n_rep;
    {
      std::vector<double> indicator(ir.runs.size());
      for (std::size_t i = 0; i < ir.runs.size(); ++i)
        indicator[i] = ir.runs[i].success ? 1.0 : 0.0;
      const double t_ann = t.t_ann_s;
      const double target = cfg.target;
      t.tts_interval = bootstrap_interval(
          indicator, cfg.bootstrap_resamples, 0.95,
          derive_seed(cfg.master_seed, inst, 0xb002),
          [t_ann, target](std::span<const double> sample) {
            const double p = mean_of(sample);
            return p == 0.0 ? std::numeric_limits<double>::infinity()
                            : t_ann * n_repetitions(p, target);
          });
    }
    t.power_w = hopcut::power_w(cfg.energy, cfg.power_mode, cfg.clock_hz,
                                cfg.overhead);
    t.energy_j = energy_to_solution_j(t.power_w, t.tts_s);
    t.throughput = std::isfinite(t.energy_j) && t.energy_j > 0.0
                       ? throughput_per_j(t.energy_j)
                       : 0.0;
    tts_per_instance[inst] = t.tts_s;
  }

  auto median = [](std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  };
  report.median_tts_s = median(tts_per_instance);
  report.median_tts_interval = bootstrap_interval(
      tts_per_instance, cfg.bootstrap_resamples, 0.95,
      derive_seed(cfg.master_seed, 0xb003), median);
  return report;
}

}  // namespace hopcut
