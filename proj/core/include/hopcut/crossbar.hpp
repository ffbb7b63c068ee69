#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopcut/graph.hpp"
#include "hopcut/hnn.hpp"

namespace hopcut {

enum class MappingScheme {
  // |w| = c maps to G_on, w = 0 to G_off; the readout negates the measured
  // current and subtracts the G_off baseline analytically. Requires all
  // weights in {0, -c} for one positive c.
  UnipolarSignFlip,
  // each weight maps to a conductance pair with G+ - G- proportional to the
  // weight; the readout subtracts paired column currents. Arbitrary signs,
  // magnitudes normalized to the largest weight.
  Differential,
};

// Electrical parameters of the emulated crossbar. "standard" and
// "sub-standard" are the routine and degraded device corners used throughout
// the error-scaling studies.
struct CrossbarConfig {
  double r_on = 10e3;       // ohms
  double r_off = 1e6;       // ohms
  double r_wire = 1.0;      // ohms per cell-to-cell segment
  double prog_sigma = 0.01; // programming error, fraction of conductance range
  double v_read = 0.2;      // volts
  MappingScheme mapping = MappingScheme::UnipolarSignFlip;

  double g_on() const { return 1.0 / r_on; }
  double g_off() const { return 1.0 / r_off; }
  void validate() const;

  static CrossbarConfig standard();      // 10 kOhm / 1 MOhm / 1 Ohm
  static CrossbarConfig sub_standard();  // 2 kOhm / 100 kOhm / 1 Ohm
};

// Crossbar conductances (siemens) plus the metadata needed to reconstruct
// weight-unit fields from sensed currents. Immutable once programmed; safe to
// share between runs.
struct ConductanceMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> g;  // row-major
  MappingScheme scheme = MappingScheme::UnipolarSignFlip;
  double weight_scale = 1.0;  // |w| spanning the full conductance swing
  double g_on = 0.0;
  double g_off = 0.0;
  int logical_n = 0;  // weight-matrix dimension behind this array

  double at(int r, int c) const { return g[std::size_t(r) * cols + c]; }
  double& at(int r, int c) { return g[std::size_t(r) * cols + c]; }
};

struct UnsupportedWeightsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

ConductanceMatrix map_weights(const WeightMatrix& w, MappingScheme scheme,
                              const CrossbarConfig& cfg);

// Adds independent zero-mean Gaussian programming error with standard
// deviation prog_sigma * (G_on - G_off) to every cell, then clamps to
// [G_off, G_on].
ConductanceMatrix program(ConductanceMatrix g, double prog_sigma, Rng& rng);

// I_c = sum_r G[r][c] * v_in[r]; exact linear algebra, no parasitics
std::vector<double> vmm_ideal(const ConductanceMatrix& g,
                              std::span<const double> v_in);

// Full resistive-network solution: every cell joins its row line to its
// column line, adjacent nodes along each line are separated by r_wire, inputs
// drive the row heads through the first segment and the sensed column feet
// sit behind the last segment at virtual ground. r_wire = 0 reduces to
// vmm_ideal.
std::vector<double> vmm_nodal(const ConductanceMatrix& g,
                              std::span<const double> v_in,
                              const CrossbarConfig& cfg);

// Factorized nodal network for repeated solves against one programmed array.
// The network is linear, so the full input-to-current map can be extracted
// once (transfer_matrix) and replayed as a dense multiply per evaluation.
class NodalSolver {
 public:
  NodalSolver(int rows, int cols, double r_wire);
  NodalSolver(const ConductanceMatrix& g, double r_wire);
  ~NodalSolver();
  NodalSolver(NodalSolver&&) noexcept;
  NodalSolver& operator=(NodalSolver&&) noexcept;

  // refactorizes for a new set of conductances (same shape)
  void set_conductances(const ConductanceMatrix& g);

  // sensed column currents for one input vector; relative residual of the
  // underlying solve is verified to 1e-10
  std::vector<double> column_currents(std::span<const double> v_in) const;

  // M[c * rows + r] = current at column c per volt applied to row r
  std::vector<double> transfer_matrix() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Per-column two-state telegraph process emulating the injectable noise row.
struct RtnConfig {
  double delta_g = 0.0;    // conductance step, siemens
  double rate_up = 0.1;    // low -> high probability per clock step
  double rate_down = 0.1;  // high -> low probability per clock step

  void validate() const;
  // delta_g = 0.05 * (G_on - G_off), rates 0.1; placeholder magnitudes,
  // configurable
  static RtnConfig defaults(const CrossbarConfig& cfg);
};

struct RtnState {
  std::vector<std::uint8_t> high;  // one flag per column
};

RtnState rtn_init(int columns, bool start_high = false);
void rtn_step(RtnState& state, const RtnConfig& cfg, Rng& rng);

// per-column field offset in weight units: columns in the high state see the
// injected delta_g * v_read converted through the mapping's readout scale
std::vector<double> rtn_offsets(const RtnState& state, const RtnConfig& cfg,
                                const ConductanceMatrix& g);

// Pooled standard deviation of (analog - exact) readout error in weight
// units: per trial, a random binary matrix of the given density is mapped,
// programmed and evaluated on a random bipolar input through the nodal
// network; errors are pooled over columns and trials.
double error_sigma(const CrossbarConfig& cfg, int size, double density,
                   int trials, Rng& rng);

// Gaussian-error stand-in for the analog readout: exact fields plus
// independent N(0, sigma) per element per evaluation.
class BehavioralBackend final : public FieldBackend {
 public:
  BehavioralBackend(const WeightMatrix& w, double sigma, std::uint64_t seed);
  int n() const override { return w_->n(); }
  void local_fields(const SpinVector& v, std::span<const int> nodes,
                    std::span<double> out) override;

 private:
  const WeightMatrix* w_;
  double sigma_;
  Rng rng_;
};

// Full analog emulation: maps and programs the weights, solves the parasitic
// network once into a dense weight-unit field matrix, and serves fields by
// dense multiply. The telegraph-noise row, when configured, advances once per
// readout. Deterministic per seed.
class NodalBackend final : public FieldBackend {
 public:
  NodalBackend(const WeightMatrix& w, const CrossbarConfig& cfg,
               std::uint64_t seed, std::optional<RtnConfig> rtn = std::nullopt);
  int n() const override { return n_; }
  void local_fields(const SpinVector& v, std::span<const int> nodes,
                    std::span<double> out) override;

  // effective weight-unit field matrix (row-major n x n); diagnostics
  const std::vector<double>& field_matrix() const { return field_; }

 private:
  int n_;
  std::vector<double> field_;
  std::optional<RtnConfig> rtn_cfg_;
  RtnState rtn_state_;
  std::vector<double> rtn_offsets_;
  double rtn_unit_ = 0.0;
  Rng rng_;
};

enum class BackendMode { Ideal, Behavioral, Nodal };

// Parsed backend selection: "ideal", "behavioral:<sigma>", "behavioral"
// (sigma calibrated from an error_sigma run at the target size),
// "nodal:standard", "nodal:sub-standard". Nodal parameters can be overridden
// individually after parsing.
struct BackendSpec {
  BackendMode mode = BackendMode::Ideal;
  CrossbarConfig xbar = CrossbarConfig::standard();
  std::optional<double> sigma;  // Behavioral
  std::optional<RtnConfig> rtn; // Nodal
  std::string label = "ideal";

  static BackendSpec parse(std::string_view spec);
};

// Fills in a behavioral sigma from a calibration run when none was given;
// campaigns resolve once so every run sees the same backend.
BackendSpec resolve_backend(const BackendSpec& spec, int n,
                            std::uint64_t master_seed);

// Backend instance for one run; `seed` drives programming error, behavioral
// noise and telegraph noise. Behavioral specs must carry a sigma (see
// resolve_backend).
std::unique_ptr<FieldBackend> make_backend(const WeightMatrix& w,
                                           const BackendSpec& spec,
                                           std::uint64_t seed);

// One annealing run against a freshly constructed backend; anneal draws and
// backend draws use decorrelated streams derived from `seed`.
AnnealTrace run_solver(const WeightMatrix& w, const SolverConfig& solver,
                       const BackendSpec& backend, std::uint64_t seed);

// weight-unit fields recovered from sensed column currents for a bipolar
// input state (the mapping's readout: sign flip plus baseline subtraction,
// or paired-column difference)
std::vector<double> reconstruct_fields(const ConductanceMatrix& g,
                                       std::span<const double> currents,
                                       std::span<const double> state,
                                       double v_read);

// "rows,cols" header line, then one row of conductances (siemens) per line
void write_conductance_csv(const ConductanceMatrix& g, std::ostream& out);

}  // namespace hopcut
