#include "hopcut/crossbar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace hopcut {

void CrossbarConfig::validate() const {
  if (!(r_on > 0.0) || !(r_off > 0.0))
    throw std::invalid_argument("CrossbarConfig: resistances must be positive");
  if (!(r_on < r_off))
    throw std::invalid_argument("CrossbarConfig: need r_on < r_off");
  if (!(r_wire >= 0.0))
    throw std::invalid_argument("CrossbarConfig: r_wire must be >= 0");
  if (!(prog_sigma >= 0.0))
    throw std::invalid_argument("CrossbarConfig: prog_sigma must be >= 0");
  if (!(v_read > 0.0))
    throw std::invalid_argument("CrossbarConfig: v_read must be positive");
}

CrossbarConfig CrossbarConfig::standard() {
  CrossbarConfig c;
  c.r_on = 10e3;
  c.r_off = 1e6;
  c.r_wire = 1.0;
  return c;
}

CrossbarConfig CrossbarConfig::sub_standard() {
  CrossbarConfig c;
  c.r_on = 2e3;
  c.r_off = 100e3;
  c.r_wire = 1.0;
  return c;
}

ConductanceMatrix map_weights(const WeightMatrix& w, MappingScheme scheme,
                              const CrossbarConfig& cfg) {
  cfg.validate();
  const int n = w.n();
  ConductanceMatrix g;
  g.scheme = scheme;
  g.g_on = cfg.g_on();
  g.g_off = cfg.g_off();
  g.logical_n = n;

  if (scheme == MappingScheme::UnipolarSignFlip) {
    double c = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double v = w.at(i, j);
        if (v == 0.0) continue;
        const double mag = -v;
        if (mag <= 0.0)
          throw UnsupportedWeightsError(
              "unipolar mapping requires non-positive weights");
        if (c == 0.0) {
          c = mag;
        } else if (std::abs(mag - c) > 1e-9 * std::max(1.0, c)) {
          throw UnsupportedWeightsError(
              "unipolar mapping requires a single weight magnitude");
        }
      }
    }
    if (c == 0.0) c = 1.0;
    g.weight_scale = c;
    g.rows = n;
    g.cols = n;
    g.g.assign(std::size_t(n) * n, g.g_off);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (w.at(i, j) != 0.0) g.at(i, j) = g.g_on;
    return g;
  }

  // differential pair per weight: G+ - G- spans the conductance swing at the
  // largest weight magnitude
  double c = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c = std::max(c, std::abs(w.at(i, j)));
  if (c == 0.0) c = 1.0;
  g.weight_scale = c;
  g.rows = n;
  g.cols = 2 * n;
  g.g.assign(std::size_t(n) * 2 * n, 0.0);
  const double mid = 0.5 * (g.g_on + g.g_off);
  const double half = 0.5 * (g.g_on - g.g_off);
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) {
      const double wn = w.at(r, j) / c;
      g.at(r, 2 * j) = mid + wn * half;
      g.at(r, 2 * j + 1) = mid - wn * half;
    }
  }
  return g;
}

ConductanceMatrix program(ConductanceMatrix g, double prog_sigma, Rng& rng) {
  if (!(prog_sigma >= 0.0))
    throw std::invalid_argument("program: prog_sigma must be >= 0");
  if (prog_sigma == 0.0) return g;
  const double sigma = prog_sigma * (g.g_on - g.g_off);
  for (auto& cell : g.g) {
    cell = std::clamp(cell + rng.gaussian(0.0, sigma), g.g_off, g.g_on);
  }
  return g;
}

std::vector<double> vmm_ideal(const ConductanceMatrix& g,
                              std::span<const double> v_in) {
  if (static_cast<int>(v_in.size()) != g.rows)
    throw std::invalid_argument("vmm_ideal: input length mismatch");
  std::vector<double> out(g.cols, 0.0);
  for (int r = 0; r < g.rows; ++r) {
    const double v = v_in[r];
    const double* row = g.g.data() + std::size_t(r) * g.cols;
    for (int c = 0; c < g.cols; ++c) out[c] += row[c] * v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// nodal network
//
// Unknowns are the 2*R*C internal node voltages: one node per cell on its row
// line and one on its column line. The cell conductance bridges the pair;
// r_wire separates neighbours along every line; inputs and the virtual-ground
// sense amps sit behind one further segment at the row heads / column feet.
// The resulting conductance matrix is SPD, so one Cholesky factorization per
// programmed array serves any number of input vectors.
// ---------------------------------------------------------------------------

struct NodalSolver::Impl {
  int rows = 0;
  int cols = 0;
  double g_w = 0.0;
  Eigen::SparseMatrix<double> a;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor;
  bool analyzed = false;

  int row_node(int r, int c) const { return r * cols + c; }
  int col_node(int r, int c) const { return rows * cols + r * cols + c; }

  void assemble(const ConductanceMatrix& g) {
    const int unknowns = 2 * rows * cols;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(unknowns) * 5);
    auto link = [&](int a_id, int b_id, double cond) {
      trip.emplace_back(a_id, a_id, cond);
      trip.emplace_back(b_id, b_id, cond);
      trip.emplace_back(a_id, b_id, -cond);
      trip.emplace_back(b_id, a_id, -cond);
    };
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        link(row_node(r, c), col_node(r, c), g.at(r, c));
        if (c + 1 < cols) link(row_node(r, c), row_node(r, c + 1), g_w);
        if (r + 1 < rows) link(col_node(r, c), col_node(r + 1, c), g_w);
      }
      trip.emplace_back(row_node(r, 0), row_node(r, 0), g_w);  // input segment
    }
    for (int c = 0; c < cols; ++c) {
      trip.emplace_back(col_node(rows - 1, c), col_node(rows - 1, c), g_w);
    }
    a.resize(unknowns, unknowns);
    a.setFromTriplets(trip.begin(), trip.end());
    if (!analyzed) {
      factor.analyzePattern(a);
      analyzed = true;
    }
    factor.factorize(a);
    if (factor.info() != Eigen::Success)
      throw std::runtime_error("NodalSolver: factorization failed");
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    Eigen::VectorXd x = factor.solve(b);
    const double bnorm = b.norm();
    if (bnorm > 0.0) {
      Eigen::VectorXd resid = b - a * x;
      if (resid.norm() > 1e-10 * bnorm) {
        x += factor.solve(resid);  // one refinement step
        resid = b - a * x;
        if (resid.norm() > 1e-10 * bnorm)
          throw std::runtime_error("NodalSolver: residual above tolerance");
      }
    }
    return x;
  }
};

NodalSolver::NodalSolver(int rows, int cols, double r_wire)
    : impl_(std::make_unique<Impl>()) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("NodalSolver: empty array");
  if (!(r_wire > 0.0))
    throw std::invalid_argument(
        "NodalSolver: r_wire must be positive (use vmm_ideal at r_wire = 0)");
  impl_->rows = rows;
  impl_->cols = cols;
  impl_->g_w = 1.0 / r_wire;
}

NodalSolver::NodalSolver(const ConductanceMatrix& g, double r_wire)
    : NodalSolver(g.rows, g.cols, r_wire) {
  set_conductances(g);
}

NodalSolver::~NodalSolver() = default;
NodalSolver::NodalSolver(NodalSolver&&) noexcept = default;
NodalSolver& NodalSolver::operator=(NodalSolver&&) noexcept = default;

void NodalSolver::set_conductances(const ConductanceMatrix& g) {
  if (g.rows != impl_->rows || g.cols != impl_->cols)
    throw std::invalid_argument("NodalSolver: shape mismatch");
  impl_->assemble(g);
}

std::vector<double> NodalSolver::column_currents(
    std::span<const double> v_in) const {
  const auto& im = *impl_;
  if (static_cast<int>(v_in.size()) != im.rows)
    throw std::invalid_argument("NodalSolver: input length mismatch");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * im.rows * im.cols);
  for (int r = 0; r < im.rows; ++r) b[im.row_node(r, 0)] = im.g_w * v_in[r];
  const Eigen::VectorXd x = im.solve(b);
  std::vector<double> currents(im.cols);
  for (int c = 0; c < im.cols; ++c)
    currents[c] = im.g_w * x[im.col_node(im.rows - 1, c)];
  return currents;
}

std::vector<double> NodalSolver::transfer_matrix() const {
  const auto& im = *impl_;
  std::vector<double> m(std::size_t(im.cols) * im.rows);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * im.rows * im.cols);
  for (int r = 0; r < im.rows; ++r) {
    b.setZero();
    b[im.row_node(r, 0)] = im.g_w;
    const Eigen::VectorXd x = im.solve(b);
    for (int c = 0; c < im.cols; ++c)
      m[std::size_t(c) * im.rows + r] = im.g_w * x[im.col_node(im.rows - 1, c)];
  }
  return m;
}

std::vector<double> vmm_nodal(const ConductanceMatrix& g,
                              std::span<const double> v_in,
                              const CrossbarConfig& cfg) {
  if (!(cfg.r_wire >= 0.0))
    throw std::invalid_argument("vmm_nodal: r_wire must be >= 0");
  if (cfg.r_wire == 0.0) return vmm_ideal(g, v_in);
  return NodalSolver(g, cfg.r_wire).column_currents(v_in);
}

std::vector<double> reconstruct_fields(const ConductanceMatrix& g,
                                       std::span<const double> currents,
                                       std::span<const double> state,
                                       double v_read) {
  if (static_cast<int>(currents.size()) != g.cols)
    throw std::invalid_argument("reconstruct_fields: current vector mismatch");
  if (static_cast<int>(state.size()) != g.rows)
    throw std::invalid_argument("reconstruct_fields: state length mismatch");
  const double dg = g.g_on - g.g_off;
  std::vector<double> u(g.logical_n);
  if (g.scheme == MappingScheme::UnipolarSignFlip) {
    double sum_state = 0.0;
    for (double s : state) sum_state += s;
    for (int c = 0; c < g.logical_n; ++c) {
      u[c] = -g.weight_scale * (currents[c] / v_read - g.g_off * sum_state) / dg;
    }
  } else {
    for (int c = 0; c < g.logical_n; ++c) {
      u[c] = g.weight_scale * (currents[2 * c] - currents[2 * c + 1]) /
             (v_read * dg);
    }
  }
  return u;
}

void RtnConfig::validate() const {
  if (!(delta_g >= 0.0))
    throw std::invalid_argument("RtnConfig: delta_g must be >= 0");
  if (rate_up < 0.0 || rate_up > 1.0 || rate_down < 0.0 || rate_down > 1.0)
    throw std::invalid_argument("RtnConfig: rates must be in [0, 1]");
}

RtnConfig RtnConfig::defaults(const CrossbarConfig& cfg) {
  RtnConfig r;
  r.delta_g = 0.05 * (cfg.g_on() - cfg.g_off());
  r.rate_up = 0.1;
  r.rate_down = 0.1;
  return r;
}

RtnState rtn_init(int columns, bool start_high) {
  RtnState s;
  s.high.assign(columns, start_high ? 1 : 0);
  return s;
}

void rtn_step(RtnState& state, const RtnConfig& cfg, Rng& rng) {
  for (auto& h : state.high) {
    const double u = rng.unit();
    if (h) {
      if (u < cfg.rate_down) h = 0;
    } else {
      if (u < cfg.rate_up) h = 1;
    }
  }
}

std::vector<double> rtn_offsets(const RtnState& state, const RtnConfig& cfg,
                                const ConductanceMatrix& g) {
  // injected current delta_g * v_read per high column, carried through the
  // same readout scale as the payload weights
  const double unit = g.weight_scale * cfg.delta_g / (g.g_on - g.g_off);
  const double sign =
      g.scheme == MappingScheme::UnipolarSignFlip ? -1.0 : 1.0;
  std::vector<double> off(state.high.size(), 0.0);
  for (std::size_t c = 0; c < state.high.size(); ++c) {
    off[c] = state.high[c] ? sign * unit : 0.0;
  }
  return off;
}

double error_sigma(const CrossbarConfig& cfg, int size, double density,
                   int trials, Rng& rng) {
  cfg.validate();
  if (size < 1) throw std::invalid_argument("error_sigma: size must be >= 1");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("error_sigma: density must be in (0, 1]");
  if (trials < 30)
    throw std::invalid_argument("error_sigma: need at least 30 trials");

  ConductanceMatrix g;
  g.rows = g.cols = size;
  g.logical_n = size;
  g.scheme = MappingScheme::UnipolarSignFlip;
  g.weight_scale = 1.0;
  g.g_on = cfg.g_on();
  g.g_off = cfg.g_off();

  std::optional<NodalSolver> solver;
  if (cfg.r_wire > 0.0) solver.emplace(size, size, cfg.r_wire);

  std::vector<char> pattern(std::size_t(size) * size);
  std::vector<double> v_in(size);
  std::vector<double> exact(size);
  std::vector<double> errors;
  errors.reserve(std::size_t(trials) * size);

  for (int t = 0; t < trials; ++t) {
    for (auto& p : pattern) p = rng.unit() < density ? 1 : 0;
    g.g.assign(std::size_t(size) * size, g.g_off);
    for (std::size_t k = 0; k < pattern.size(); ++k)
      if (pattern[k]) g.g[k] = g.g_on;

    SpinVector x = random_spins(size, rng);
    for (int r = 0; r < size; ++r) v_in[r] = cfg.v_read * x[r];
    std::fill(exact.begin(), exact.end(), 0.0);
    for (int r = 0; r < size; ++r) {
      const char* row = pattern.data() + std::size_t(r) * size;
      for (int c = 0; c < size; ++c)
        if (row[c]) exact[c] -= x[r];  // weight -1 per on-cell
    }

    ConductanceMatrix programmed = program(g, cfg.prog_sigma, rng);
    std::vector<double> currents;
    if (solver) {
      solver->set_conductances(programmed);
      currents = solver->column_currents(v_in);
    } else {
      currents = vmm_ideal(programmed, v_in);
    }
    const auto analog = reconstruct_fields(programmed, currents, x, cfg.v_read);
    for (int c = 0; c < size; ++c) errors.push_back(analog[c] - exact[c]);
  }

  const double n = static_cast<double>(errors.size());
  double mean = 0.0;
  for (double e : errors) mean += e;
  mean /= n;
  double ss = 0.0;
  for (double e : errors) ss += (e - mean) * (e - mean);
  return std::sqrt(ss / (n - 1.0));
}

BehavioralBackend::BehavioralBackend(const WeightMatrix& w, double sigma,
                                     std::uint64_t seed)
    : w_(&w), sigma_(sigma), rng_(seed) {
  if (!(sigma >= 0.0))
    throw std::invalid_argument("BehavioralBackend: sigma must be >= 0");
}

void BehavioralBackend::local_fields(const SpinVector& v,
                                     std::span<const int> nodes,
                                     std::span<double> out) {
  hopcut::local_fields(*w_, v, nodes, out);
  for (auto& u : out) u += rng_.gaussian(0.0, sigma_);
}

NodalBackend::NodalBackend(const WeightMatrix& w, const CrossbarConfig& cfg,
                           std::uint64_t seed, std::optional<RtnConfig> rtn)
    : n_(w.n()), rtn_cfg_(rtn), rng_(derive_seed(seed, 0xb1, 2)) {
  cfg.validate();
  if (rtn_cfg_) rtn_cfg_->validate();

  ConductanceMatrix g = map_weights(w, cfg.mapping, cfg);
  Rng prog_rng(derive_seed(seed, 0xb1, 1));
  g = program(std::move(g), cfg.prog_sigma, prog_rng);

  // input-to-current transfer of the (linear) network, then the readout
  // folded in: u = F * x in weight units for any bipolar state x
  std::vector<double> t;  // cols x rows, siemens
  if (cfg.r_wire > 0.0) {
    t = NodalSolver(g, cfg.r_wire).transfer_matrix();
  } else {
    t.resize(std::size_t(g.cols) * g.rows);
    for (int c = 0; c < g.cols; ++c)
      for (int r = 0; r < g.rows; ++r)
        t[std::size_t(c) * g.rows + r] = g.at(r, c);
  }

  const double dg = g.g_on - g.g_off;
  field_.assign(std::size_t(n_) * n_, 0.0);
  if (g.scheme == MappingScheme::UnipolarSignFlip) {
    for (int c = 0; c < n_; ++c)
      for (int r = 0; r < n_; ++r)
        field_[std::size_t(c) * n_ + r] =
            -g.weight_scale * (t[std::size_t(c) * n_ + r] - g.g_off) / dg;
  } else {
    for (int c = 0; c < n_; ++c)
      for (int r = 0; r < n_; ++r)
        field_[std::size_t(c) * n_ + r] =
            g.weight_scale *
            (t[std::size_t(2 * c) * n_ + r] - t[std::size_t(2 * c + 1) * n_ + r]) /
            dg;
  }

  if (rtn_cfg_) {
    rtn_state_ = rtn_init(n_);
    rtn_offsets_.resize(n_);
    rtn_unit_ = (g.scheme == MappingScheme::UnipolarSignFlip ? -1.0 : 1.0) *
                g.weight_scale * rtn_cfg_->delta_g / dg;
  }
}

void NodalBackend::local_fields(const SpinVector& v, std::span<const int> nodes,
                                std::span<double> out) {
  if (static_cast<int>(v.size()) != n_)
    throw std::invalid_argument("NodalBackend: state length mismatch");
  if (out.size() != nodes.size())
    throw std::invalid_argument("NodalBackend: output length mismatch");
  if (rtn_cfg_) {
    rtn_step(rtn_state_, *rtn_cfg_, rng_);
    for (int c = 0; c < n_; ++c)
      rtn_offsets_[c] = rtn_state_.high[c] ? rtn_unit_ : 0.0;
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int i = nodes[k];
    if (i < 0 || i >= n_)
      throw std::invalid_argument("NodalBackend: node index out of range");
    const double* row = field_.data() + std::size_t(i) * n_;
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) acc += row[j] * v[j];
    out[k] = rtn_cfg_ ? acc + rtn_offsets_[i] : acc;
  }
}

BackendSpec BackendSpec::parse(std::string_view spec) {
  BackendSpec b;
  b.label = std::string(spec);
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (head == "ideal" && arg.empty()) {
    b.mode = BackendMode::Ideal;
    return b;
  }
  if (head == "behavioral") {
    b.mode = BackendMode::Behavioral;
    if (!arg.empty()) {
      try {
        b.sigma = std::stod(std::string(arg));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad backend spec: " + std::string(spec));
      }
      if (!(*b.sigma >= 0.0))
        throw std::invalid_argument("behavioral sigma must be >= 0");
    }
    return b;
  }
  if (head == "nodal") {
    b.mode = BackendMode::Nodal;
    if (arg.empty() || arg == "standard") {
      b.xbar = CrossbarConfig::standard();
    } else if (arg == "sub-standard") {
      b.xbar = CrossbarConfig::sub_standard();
    } else {
      throw std::invalid_argument("unknown nodal parameter set: " +
                                  std::string(arg));
    }
    return b;
  }
  throw std::invalid_argument("bad backend spec: " + std::string(spec));
}

BackendSpec resolve_backend(const BackendSpec& spec, int n,
                            std::uint64_t master_seed) {
  if (spec.mode != BackendMode::Behavioral || spec.sigma) return spec;
  BackendSpec resolved = spec;
  Rng rng(derive_seed(master_seed, 0xca1));
  resolved.sigma = error_sigma(spec.xbar, n, 0.5, 50, rng);
  return resolved;
}

std::unique_ptr<FieldBackend> make_backend(const WeightMatrix& w,
                                           const BackendSpec& spec,
                                           std::uint64_t seed) {
  switch (spec.mode) {
    case BackendMode::Ideal:
      return std::make_unique<IdealBackend>(w);
    case BackendMode::Behavioral:
      if (!spec.sigma)
        throw std::invalid_argument(
            "behavioral backend has no sigma; resolve_backend first");
      return std::make_unique<BehavioralBackend>(w, *spec.sigma,
                                                 derive_seed(seed, 0xbe));
    case BackendMode::Nodal:
      return std::make_unique<NodalBackend>(w, spec.xbar, seed, spec.rtn);
  }
  throw std::logic_error("make_backend: unreachable");
}

AnnealTrace run_solver(const WeightMatrix& w, const SolverConfig& solver,
                       const BackendSpec& backend, std::uint64_t seed) {
  auto b = make_backend(w, backend, derive_seed(seed, 0xb0));
  return run_anneal(w, solver.plan, solver.noise, solver.threshold, solver.rule,
                    solver.sweeps, derive_seed(seed, 0xa0), *b);
}

void write_conductance_csv(const ConductanceMatrix& g, std::ostream& out) {
  out << g.rows << "," << g.cols << "\n";
  char buf[64];
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.12g", g.at(r, c));
      out << buf << (c + 1 < g.cols ? "," : "");
    }
    out << "\n";
  }
}

}  // namespace hopcut
