#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hopcut/bench.hpp"
#include "hopcut/crossbar.hpp"
#include "hopcut/hnn.hpp"
#include "hopcut/instance_io.hpp"
#include "hopcut/oracle.hpp"
#include "hopcut/parallel.hpp"
#include "hopcut/schedules.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hopcut::cli {

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// shared flag bundles
// ---------------------------------------------------------------------------

struct SolverFlags {
  std::string noise = "quad-super:5";
  std::string theta = "zero";
  std::string rule = "literal";
  int batch = 1;
  std::string order = "random";
  int sweeps = 1000;

  SolverConfig resolve() const {
    SolverConfig s;
    s.noise = NoiseSchedule::parse(noise);
    s.threshold = ThresholdSchedule::parse(theta);
    if (rule == "literal") {
      s.rule = ThresholdRule::Literal;
    } else if (rule == "hysteresis") {
      s.rule = ThresholdRule::Hysteresis;
    } else {
      throw ConfigError("unknown rule: " + rule);
    }
    s.plan.batch_size = batch;
    if (order == "random") {
      s.plan.order = UpdateOrder::RandomPermutation;
    } else if (order == "fixed") {
      s.plan.order = UpdateOrder::FixedIndex;
    } else {
      throw ConfigError("unknown update order: " + order);
    }
    s.sweeps = sweeps;
    return s;
  }

  void attach(CLI::App* cmd, bool with_noise = true) {
    if (with_noise) {
      cmd->add_option("--noise", noise,
                      "noise schedule (none, fixed:A, lin:A0, quad-super:A0, "
                      "quad-sub:A0, exp:A0:k)")
          ->capture_default_str();
    }
    cmd->add_option("--theta", theta, "threshold schedule (zero, theta-ramp:M)")
        ->capture_default_str();
    cmd->add_option("--rule", rule, "threshold rule (literal, hysteresis)")
        ->capture_default_str();
    cmd->add_option("--batch", batch, "nodes updated per clock sub-step")
        ->capture_default_str();
    cmd->add_option("--order", order, "node visit order (random, fixed)")
        ->capture_default_str();
    cmd->add_option("--sweeps", sweeps, "sweeps per run")->capture_default_str();
  }
};

struct BackendFlags {
  std::string backend = "ideal";
  std::optional<double> r_on, r_off, r_wire, prog_sigma, v_read;
  std::string mapping = "unipolar";
  bool rtn = false;
  std::optional<double> rtn_delta_g, rtn_rate_up, rtn_rate_down;

  BackendSpec resolve() const {
    BackendSpec spec = BackendSpec::parse(backend);
    if (r_on) spec.xbar.r_on = *r_on;
    if (r_off) spec.xbar.r_off = *r_off;
    if (r_wire) spec.xbar.r_wire = *r_wire;
    if (prog_sigma) spec.xbar.prog_sigma = *prog_sigma;
    if (v_read) spec.xbar.v_read = *v_read;
    if (mapping == "unipolar") {
      spec.xbar.mapping = MappingScheme::UnipolarSignFlip;
    } else if (mapping == "differential") {
      spec.xbar.mapping = MappingScheme::Differential;
    } else {
      throw ConfigError("unknown mapping: " + mapping);
    }
    if (rtn) {
      RtnConfig r = RtnConfig::defaults(spec.xbar);
      if (rtn_delta_g) r.delta_g = *rtn_delta_g;
      if (rtn_rate_up) r.rate_up = *rtn_rate_up;
      if (rtn_rate_down) r.rate_down = *rtn_rate_down;
      spec.rtn = r;
    }
    spec.xbar.validate();
    return spec;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--backend", backend,
                    "field backend (ideal, behavioral[:sigma], "
                    "nodal[:standard|:sub-standard])")
        ->capture_default_str();
    cmd->add_option("--r-on", r_on, "override ON resistance (ohms)");
    cmd->add_option("--r-off", r_off, "override OFF resistance (ohms)");
    cmd->add_option("--r-wire", r_wire, "override wire resistance per segment");
    cmd->add_option("--prog-sigma", prog_sigma,
                    "override programming error (fraction of range)");
    cmd->add_option("--v-read", v_read, "override read voltage (volts)");
    cmd->add_option("--mapping", mapping,
                    "weight mapping (unipolar, differential)")
        ->capture_default_str();
    cmd->add_flag("--rtn", rtn, "enable the telegraph-noise injection row");
    cmd->add_option("--rtn-delta-g", rtn_delta_g, "RTN conductance step (S)");
    cmd->add_option("--rtn-rate-up", rtn_rate_up, "RTN low->high rate per step");
    cmd->add_option("--rtn-rate-down", rtn_rate_down,
                    "RTN high->low rate per step");
  }
};

struct ReferenceFlags {
  std::string ref = "auto";
  long long sa_budget = 100000;
  long long sa_steps = 0;
  double sa_t_init = 3.0;
  double sa_t_final = 0.05;
  int exact_limit = 26;

  OptimumInfo resolve(const Graph& g, std::uint64_t seed, int jobs) const {
    ReferenceBudget budget;
    budget.exact_node_limit = exact_limit;
    budget.sa_restarts = sa_budget;
    budget.sa_steps = sa_steps;
    budget.sa_t_init = sa_t_init;
    budget.sa_t_final = sa_t_final;
    budget.seed = derive_seed(seed, 0x5eed);
    budget.jobs = jobs;
    if (ref == "file") {
      if (!g.optimum())
        throw ConfigError("instance carries no optimum metadata (--ref file)");
      return *g.optimum();
    }
    if (ref == "exact")
      return {exact_max_cut(g, exact_limit).best_cut, OptimumKind::Exact};
    if (ref == "sa") {
      Graph stripped(g.n(), g.edges());  // ignore any file metadata
      return reference_optimum(stripped,
                               [&] {
                                 ReferenceBudget b = budget;
                                 b.exact_node_limit = 0;
                                 return b;
                               }());
    }
    if (ref == "auto") return reference_optimum(g, budget);
    throw ConfigError("unknown --ref mode: " + ref);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--ref", ref,
                    "reference optimum source (auto, file, exact, sa)")
        ->capture_default_str();
    cmd->add_option("--sa-budget", sa_budget, "SA restarts for best-known refs")
        ->capture_default_str();
    cmd->add_option("--sa-steps", sa_steps,
                    "SA proposals per restart (0 = 50*n)");
    cmd->add_option("--sa-t-init", sa_t_init, "SA initial temperature");
    cmd->add_option("--sa-t-final", sa_t_final, "SA final temperature");
    cmd->add_option("--exact-limit", exact_limit,
                    "node limit for exhaustive references");
  }
};

Graph load_instance(const fs::path& path) {
  if (!fs::exists(path))
    throw ConfigError("instance file not found: " + path.string());
  return read_instance(path);
}

void write_text_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

json config_json(const SolverFlags& solver, const BackendFlags& backend,
                 std::uint64_t master_seed, int seeds) {
  return json{{"backend", backend.backend}, {"batch", solver.batch},
              {"master_seed", master_seed},  {"noise", solver.noise},
              {"order", solver.order},       {"rule", solver.rule},
              {"seeds", seeds},              {"sweeps", solver.sweeps},
              {"theta", solver.theta}};
}

std::vector<double> parse_grid(const std::string& text) {
  // "a:b:step" inclusive range, or comma-separated list
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a, b, step;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 ||
        !(step > 0.0) || b < a)
      throw ConfigError("bad grid spec: " + text);
    for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
    return out;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw ConfigError("empty grid spec: " + text);
  return out;
}

std::vector<int> parse_sizes(const std::string& text) {
  // "8..256" doubling range, or comma-separated list
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo < 1 || hi < lo) throw ConfigError("bad size range: " + text);
    for (int s = lo; s <= hi; s *= 2) out.push_back(s);
    return out;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw ConfigError("empty size list: " + text);
  return out;
}

// schedule-compare entry: noise_spec[+threshold_spec][+rule]
struct ScheduleEntry {
  std::string label;
  SolverConfig config;
};

ScheduleEntry parse_schedule_entry(const std::string& entry,
                                   const SolverConfig& base) {
  ScheduleEntry e;
  e.label = entry;
  e.config = base;
  e.config.threshold = ThresholdSchedule::zero();
  std::istringstream is(entry);
  std::string part;
  bool have_noise = false;
  while (std::getline(is, part, '+')) {
    if (part == "literal") {
      e.config.rule = ThresholdRule::Literal;
    } else if (part == "hysteresis") {
      e.config.rule = ThresholdRule::Hysteresis;
    } else if (part == "zero" || part.rfind("theta-ramp", 0) == 0) {
      e.config.threshold = ThresholdSchedule::parse(part);
    } else {
      e.config.noise = NoiseSchedule::parse(part);
      have_noise = true;
    }
  }
  if (!have_noise) throw ConfigError("schedule entry needs a noise part: " + entry);
  return e;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenArgs {
  int n = 60;
  double density = 0.5;
  bool weighted = false;
  std::uint64_t seed = 1;
  std::string out = "instance.mc";
  bool ref_exact = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  Graph g = generate_dense_random(a.n, a.density, a.weighted, a.seed);
  if (a.ref_exact) {
    g = g.with_optimum({exact_max_cut(g).best_cut, OptimumKind::Exact});
  }
  const fs::path path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_instance(g, path);
  out << "wrote " << path.string() << " (n=" << g.n()
      << ", m=" << g.edges().size() << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveArgs {
  std::vector<std::string> instances;
  SolverFlags solver;
  BackendFlags backend;
  int seeds = 1;
  std::uint64_t master_seed = 1;
  std::string outdir = ".";
  bool traces = true;
  int jobs = 1;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const SolverConfig solver = a.solver.resolve();
  fs::create_directories(a.outdir);

  json summary;
  summary["config"] =
      config_json(a.solver, a.backend, a.master_seed, a.seeds);
  summary["instances"] = json::array();

  for (std::size_t inst = 0; inst < a.instances.size(); ++inst) {
    const fs::path path(a.instances[inst]);
    const Graph g = load_instance(path);
    const WeightMatrix w = graph_to_weights(g);
    const BackendSpec backend =
        resolve_backend(a.backend.resolve(), g.n(), a.master_seed);

    std::vector<AnnealTrace> traces(a.seeds);
    parallel_for(a.seeds, a.jobs, [&](std::size_t rep) {
      traces[rep] =
          run_solver(w, solver, backend, derive_seed(a.master_seed, inst, rep));
    });

    json ji;
    ji["file"] = path.filename().string();
    ji["n"] = g.n();
    ji["runs"] = json::array();
    long long best = traces.front().best_cut;
    std::size_t best_idx = 0;
    for (std::size_t rep = 0; rep < traces.size(); ++rep) {
      const AnnealTrace& t = traces[rep];
      ji["runs"].push_back(json{{"best_cut", t.best_cut},
                                {"best_sweep", t.best_sweep},
                                {"final_cut", t.final_cut()},
                                {"seed", t.seed},
                                {"seed_index", rep}});
      if (t.best_cut > best) {
        best = t.best_cut;
        best_idx = rep;
      }
      if (a.traces) {
        std::ostringstream name;
        name << path.stem().string() << ".run" << rep << ".trace.csv";
        std::ofstream tf(fs::path(a.outdir) / name.str(), std::ios::binary);
        write_trace_csv(t, tf);
      }
    }
    ji["best_cut"] = best;
    ji["best_seed_index"] = best_idx;
    summary["instances"].push_back(std::move(ji));
  }

  write_text_file(fs::path(a.outdir) / "summary.json", summary.dump(2) + "\n");
  out << "wrote " << (fs::path(a.outdir) / "summary.json").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep-noise
// ---------------------------------------------------------------------------

struct SweepNoiseArgs {
  std::string instance;
  std::string amplitudes = "0:5:0.5";
  int seeds = 1000;
  SolverFlags solver;
  BackendFlags backend;
  ReferenceFlags reference;
  std::uint64_t master_seed = 1;
  std::string out = "noise_sweep.csv";
  int jobs = 1;
};

int cmd_sweep_noise(const SweepNoiseArgs& a, std::ostream& out) {
  const Graph g = load_instance(a.instance);
  const WeightMatrix w = graph_to_weights(g);
  const OptimumInfo ref = a.reference.resolve(g, a.master_seed, a.jobs);
  const std::vector<double> amplitudes = parse_grid(a.amplitudes);
  SolverConfig solver = a.solver.resolve();
  const BackendSpec backend =
      resolve_backend(a.backend.resolve(), g.n(), a.master_seed);

  std::ostringstream csv;
  csv << "amplitude,mean_cut,min_cut,max_cut,p_success\n";
  for (std::size_t ai = 0; ai < amplitudes.size(); ++ai) {
    solver.noise = NoiseSchedule::fixed(amplitudes[ai]);
    std::vector<long long> bests(a.seeds);
    parallel_for(a.seeds, a.jobs, [&](std::size_t rep) {
      bests[rep] = run_solver(w, solver, backend,
                              derive_seed(a.master_seed, ai, rep))
                       .best_cut;
    });
    double mean = 0.0;
    long long lo = bests.front(), hi = bests.front();
    std::size_t hits = 0;
    for (long long b : bests) {
      mean += static_cast<double>(b);
      lo = std::min(lo, b);
      hi = std::max(hi, b);
      hits += b == ref.value ? 1 : 0;
    }
    mean /= static_cast<double>(bests.size());
    csv << fmt(amplitudes[ai]) << "," << fmt(mean) << "," << lo << "," << hi
        << "," << fmt(static_cast<double>(hits) / a.seeds) << "\n";
  }

  const fs::path path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_text_file(path, csv.str());
  out << "wrote " << path.string() << " (reference " << ref.value << " "
      << to_string(ref.kind) << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// schedule-compare
// ---------------------------------------------------------------------------

struct ScheduleCompareArgs {
  std::string instance;
  std::string schedules =
      "none,fixed:1.5,quad-super:5,fixed:1.5+theta-ramp:2+hysteresis";
  std::string sweeps_list = "100,300,1000";
  int seeds = 1000;
  SolverFlags solver;
  BackendFlags backend;
  ReferenceFlags reference;
  std::uint64_t master_seed = 1;
  std::string out = "schedule_compare.csv";
  int resamples = 2000;
  int jobs = 1;
};

int cmd_schedule_compare(const ScheduleCompareArgs& a, std::ostream& out) {
  const Graph g = load_instance(a.instance);
  const WeightMatrix w = graph_to_weights(g);
  // resolved for its side effect of validating that a reference exists; the
  // comparison itself ranks mean best cuts
  const OptimumInfo ref = a.reference.resolve(g, a.master_seed, a.jobs);
  const SolverConfig base = a.solver.resolve();
  const BackendSpec backend =
      resolve_backend(a.backend.resolve(), g.n(), a.master_seed);

  std::vector<ScheduleEntry> entries;
  {
    std::istringstream is(a.schedules);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (!tok.empty()) entries.push_back(parse_schedule_entry(tok, base));
    }
  }
  if (entries.empty()) throw ConfigError("no schedules given");

  std::vector<int> sweeps_list;
  for (int s : parse_sizes(a.sweeps_list)) sweeps_list.push_back(s);

  std::ostringstream csv;
  csv << "schedule,sweeps,mean_best_cut,ci_low,ci_high\n";
  for (std::size_t ei = 0; ei < entries.size(); ++ei) {
    for (std::size_t si = 0; si < sweeps_list.size(); ++si) {
      SolverConfig solver = entries[ei].config;
      solver.sweeps = sweeps_list[si];
      std::vector<double> bests(a.seeds);
      parallel_for(a.seeds, a.jobs, [&](std::size_t rep) {
        bests[rep] = static_cast<double>(
            run_solver(w, solver, backend,
                       derive_seed(a.master_seed, ei * 97 + si, rep))
                .best_cut);
      });
      double mean = 0.0;
      for (double b : bests) mean += b;
      mean /= static_cast<double>(bests.size());
      const Interval ci =
          bootstrap_interval(bests, a.resamples, 0.95,
                             derive_seed(a.master_seed, ei * 97 + si, 0xc1));
      csv << entries[ei].label << "," << sweeps_list[si] << "," << fmt(mean)
          << "," << fmt(ci.low) << "," << fmt(ci.high) << "\n";
    }
  }

  const fs::path path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_text_file(path, csv.str());
  out << "wrote " << path.string() << " (reference " << ref.value << " "
      << to_string(ref.kind) << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// xbar-calibrate
// ---------------------------------------------------------------------------

struct XbarCalibrateArgs {
  std::string params = "standard";
  std::string sizes = "8,16,32,64,128,256";
  std::string densities = "0.5,0.1";
  int trials = 100;
  std::optional<double> r_on, r_off, r_wire, prog_sigma, v_read;
  std::uint64_t seed = 1;
  std::string out = "xbar_calibration.csv";
};

int cmd_xbar_calibrate(const XbarCalibrateArgs& a, std::ostream& out) {
  CrossbarConfig cfg;
  if (a.params == "standard") {
    cfg = CrossbarConfig::standard();
  } else if (a.params == "sub-standard") {
    cfg = CrossbarConfig::sub_standard();
  } else {
    throw ConfigError("unknown parameter set: " + a.params);
  }
  if (a.r_on) cfg.r_on = *a.r_on;
  if (a.r_off) cfg.r_off = *a.r_off;
  if (a.r_wire) cfg.r_wire = *a.r_wire;
  if (a.prog_sigma) cfg.prog_sigma = *a.prog_sigma;
  if (a.v_read) cfg.v_read = *a.v_read;
  cfg.validate();

  std::ostringstream csv;
  csv << "size,density,trials,sigma\n";
  for (double density : parse_grid(a.densities)) {
    for (int size : parse_sizes(a.sizes)) {
      Rng rng(derive_seed(a.seed, static_cast<std::uint64_t>(size),
                          static_cast<std::uint64_t>(density * 1e6)));
      const double sigma = error_sigma(cfg, size, density, a.trials, rng);
      csv << size << "," << fmt(density) << "," << a.trials << ","
          << fmt(sigma) << "\n";
    }
  }

  const fs::path path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_text_file(path, csv.str());
  out << "wrote " << path.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// tts
// ---------------------------------------------------------------------------

struct TtsArgs {
  std::vector<std::string> instances;
  SolverFlags solver;
  BackendFlags backend;
  ReferenceFlags reference;
  int seeds = 100;
  std::uint64_t master_seed = 1;
  double clock_hz = 1e9;
  std::string power_mode = "1col";
  double overhead = 2.0;
  std::string energy_profile;
  double target = 0.99;
  std::string out = "tts_report.json";
  int resamples = 2000;
  int jobs = 1;
};

json interval_json(const Interval& i) {
  return json{{"low", i.low}, {"high", i.high}};
}

int cmd_tts(const TtsArgs& a, std::ostream& out) {
  CampaignConfig cfg;
  cfg.solver = a.solver.resolve();
  cfg.backend = a.backend.resolve();
  cfg.seeds_per_instance = a.seeds;
  cfg.master_seed = a.master_seed;
  cfg.target = a.target;
  if (!(a.clock_hz > 0.0)) throw ConfigError("--clock-hz must be positive");
  cfg.clock_hz = a.clock_hz;
  cfg.power_mode = power_mode_from_string(a.power_mode);
  cfg.overhead = a.overhead;
  cfg.bootstrap_resamples = a.resamples;
  cfg.jobs = a.jobs;
  if (!a.energy_profile.empty()) {
    std::ifstream pf(a.energy_profile);
    if (!pf) throw ConfigError("cannot open energy profile: " + a.energy_profile);
    cfg.energy = EnergyTable::from_profile(pf);
  }

  std::vector<Graph> instances;
  std::vector<std::string> names;
  for (const auto& file : a.instances) {
    Graph g = load_instance(file);
    const OptimumInfo ref = a.reference.resolve(g, a.master_seed, a.jobs);
    instances.push_back(g.with_optimum(ref));
    names.push_back(fs::path(file).filename().string());
  }

  const CampaignReport report = tts_campaign(instances, cfg);

  json doc;
  doc["config"] = config_json(a.solver, a.backend, a.master_seed, a.seeds);
  doc["config"]["clock_hz"] = a.clock_hz;
  doc["config"]["overhead"] = a.overhead;
  doc["config"]["power_mode"] = a.power_mode;
  doc["config"]["target"] = a.target;
  doc["instances"] = json::array();
  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    const InstanceReport& ir = report.instances[i];
    doc["instances"].push_back(
        json{{"file", names[i]},
             {"optimum", ir.optimum.value},
             {"optimum_kind", to_string(ir.optimum.kind)},
             {"p_success", ir.tts.p_success},
             {"p_interval", interval_json(ir.tts.p_interval)},
             {"t_ann_s", ir.tts.t_ann_s},
             {"n_rep", ir.tts.n_rep},
             {"tts_s", ir.tts.tts_s},
             {"tts_interval", interval_json(ir.tts.tts_interval)},
             {"power_w", ir.tts.power_w},
             {"energy_j", ir.tts.energy_j},
             {"solutions_per_j", ir.tts.throughput}});
  }
  doc["median_tts_s"] = report.median_tts_s;
  doc["median_tts_interval"] = interval_json(report.median_tts_interval);

  const fs::path path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_text_file(path, doc.dump(2) + "\n");

  std::ostringstream csv;
  csv << "file,optimum,optimum_kind,p_success,p_low,p_high,t_ann_s,n_rep,"
         "tts_s,tts_low_s,tts_high_s,power_w,energy_j,solutions_per_j\n";
  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    const TtsReport& t = report.instances[i].tts;
    csv << names[i] << "," << report.instances[i].optimum.value << ","
        << to_string(report.instances[i].optimum.kind) << ","
        << fmt(t.p_success) << "," << fmt(t.p_interval.low) << ","
        << fmt(t.p_interval.high) << "," << fmt(t.t_ann_s) << ","
        << fmt(t.n_rep) << "," << fmt(t.tts_s) << ","
        << fmt(t.tts_interval.low) << "," << fmt(t.tts_interval.high) << ","
        << fmt(t.power_w) << "," << fmt(t.energy_j) << ","
        << fmt(t.throughput) << "\n";
  }
  fs::path csv_path = path;
  csv_path.replace_extension(".csv");
  write_text_file(csv_path, csv.str());
  out << "wrote " << path.string() << " and " << csv_path.string() << "\n";
  return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stochastic Hopfield annealer for Max-Cut with an emulated "
               "memristor-crossbar backend"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags remain valid after a subcommand name
  app.set_config("--config", "", "read flags from a key=value file "
                                 "([subcommand] sections)");

  GenArgs gen;
  auto* cgen = app.add_subcommand("gen", "generate a random dense instance");
  cgen->add_option("--n,-n", gen.n, "nodes")->capture_default_str();
  cgen->add_option("--density", gen.density, "edge probability")
      ->capture_default_str();
  cgen->add_flag("--weighted", gen.weighted, "integer weights in 1..10");
  cgen->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  cgen->add_option("--out,-o", gen.out, "output instance file")
      ->capture_default_str();
  cgen->add_flag("--ref-exact", gen.ref_exact,
                 "annotate the exact optimum (n <= 26)");

  SolveArgs solve;
  auto* csolve = app.add_subcommand("solve", "anneal instances, write traces "
                                             "and a summary JSON");
  csolve->add_option("--instance,-i", solve.instances, "instance file(s)")
      ->required();
  solve.solver.attach(csolve);
  solve.backend.attach(csolve);
  csolve->add_option("--seeds", solve.seeds, "independent runs per instance")
      ->capture_default_str();
  csolve->add_option("--master-seed", solve.master_seed, "campaign seed")
      ->capture_default_str();
  csolve->add_option("--outdir", solve.outdir, "output directory")
      ->envname("HOPCUT_OUTDIR")
      ->capture_default_str();
  csolve->add_flag("--traces,!--no-traces", solve.traces,
                   "write per-run trace CSVs");
  csolve->add_option("--jobs", solve.jobs, "worker threads")
      ->capture_default_str();

  SweepNoiseArgs sweep;
  auto* csweep = app.add_subcommand(
      "sweep-noise", "success probability across fixed noise amplitudes");
  csweep->add_option("--instance,-i", sweep.instance, "instance file")
      ->required();
  csweep->add_option("--amplitudes", sweep.amplitudes,
                     "grid a:b:step or comma list")
      ->capture_default_str();
  csweep->add_option("--seeds", sweep.seeds, "runs per amplitude")
      ->capture_default_str();
  sweep.solver.attach(csweep, /*with_noise=*/false);  // the grid supplies it
  sweep.backend.attach(csweep);
  sweep.reference.attach(csweep);
  csweep->add_option("--master-seed", sweep.master_seed, "campaign seed")
      ->capture_default_str();
  csweep->add_option("--out,-o", sweep.out, "output CSV")->capture_default_str();
  csweep->add_option("--jobs", sweep.jobs, "worker threads")
      ->capture_default_str();

  ScheduleCompareArgs sched;
  auto* csched = app.add_subcommand(
      "schedule-compare", "mean best cut per schedule and sweep budget");
  csched->add_option("--instance,-i", sched.instance, "instance file")
      ->required();
  csched->add_option("--schedules", sched.schedules,
                     "comma list of noise[+threshold][+rule] entries")
      ->capture_default_str();
  csched->add_option("--sweeps-list", sched.sweeps_list, "sweep budgets")
      ->capture_default_str();
  csched->add_option("--seeds", sched.seeds, "runs per (schedule, budget)")
      ->capture_default_str();
  sched.solver.attach(csched, /*with_noise=*/false);  // entries carry it
  sched.backend.attach(csched);
  sched.reference.attach(csched);
  csched->add_option("--master-seed", sched.master_seed, "campaign seed")
      ->capture_default_str();
  csched->add_option("--out,-o", sched.out, "output CSV")->capture_default_str();
  csched->add_option("--resamples", sched.resamples, "bootstrap resamples")
      ->capture_default_str();
  csched->add_option("--jobs", sched.jobs, "worker threads")
      ->capture_default_str();

  XbarCalibrateArgs xbar;
  auto* cxbar = app.add_subcommand(
      "xbar-calibrate", "readout error sigma across array sizes");
  cxbar->add_option("--params", xbar.params,
                    "parameter set (standard, sub-standard)")
      ->capture_default_str();
  cxbar->add_option("--sizes", xbar.sizes, "comma list or lo..hi doubling")
      ->capture_default_str();
  cxbar->add_option("--densities", xbar.densities, "matrix densities")
      ->capture_default_str();
  cxbar->add_option("--trials", xbar.trials, "trials per point")
      ->capture_default_str();
  cxbar->add_option("--r-on", xbar.r_on, "override ON resistance (ohms)");
  cxbar->add_option("--r-off", xbar.r_off, "override OFF resistance (ohms)");
  cxbar->add_option("--r-wire", xbar.r_wire, "override wire resistance");
  cxbar->add_option("--prog-sigma", xbar.prog_sigma,
                    "override programming error");
  cxbar->add_option("--v-read", xbar.v_read, "override read voltage");
  cxbar->add_option("--seed", xbar.seed, "trial seed")->capture_default_str();
  cxbar->add_option("--out,-o", xbar.out, "output CSV")->capture_default_str();

  TtsArgs tts;
  auto* ctts = app.add_subcommand(
      "tts", "success probability, time- and energy-to-solution report");
  ctts->add_option("--instance,-i", tts.instances, "instance file(s)")
      ->required();
  tts.solver.attach(ctts);
  tts.backend.attach(ctts);
  tts.reference.attach(ctts);
  ctts->add_option("--seeds", tts.seeds, "runs per instance")
      ->capture_default_str();
  ctts->add_option("--master-seed", tts.master_seed, "campaign seed")
      ->capture_default_str();
  ctts->add_option("--clock-hz", tts.clock_hz, "clock frequency")
      ->capture_default_str();
  ctts->add_option("--power-mode", tts.power_mode,
                   "crossbar activity (full, 10col, 1col)")
      ->capture_default_str();
  ctts->add_option("--overhead", tts.overhead, "power overhead factor")
      ->capture_default_str();
  ctts->add_option("--energy-profile", tts.energy_profile,
                   "key=value energy profile file");
  ctts->add_option("--target", tts.target, "success confidence target")
      ->capture_default_str();
  ctts->add_option("--out,-o", tts.out, "output JSON")->capture_default_str();
  ctts->add_option("--resamples", tts.resamples, "bootstrap resamples")
      ->capture_default_str();
  ctts->add_option("--jobs", tts.jobs, "worker threads")
      ->capture_default_str();

  for (CLI::App* sub : app.get_subcommands({})) sub->configurable();
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cgen->parsed()) return cmd_gen(gen, out);
    if (csolve->parsed()) return cmd_solve(solve, out);
    if (csweep->parsed()) return cmd_sweep_noise(sweep, out);
    if (csched->parsed()) return cmd_schedule_compare(sched, out);
    if (cxbar->parsed()) return cmd_xbar_calibrate(xbar, out);
    if (ctts->parsed()) return cmd_tts(tts, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hopcut::cli
