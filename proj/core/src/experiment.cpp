#include "lbreg/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "lbreg/grid_io.hpp"
#include "lbreg/objectives.hpp"
#include "lbreg/transforms.hpp"

namespace lbreg {
namespace fs = std::filesystem;

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::gd: return "gd";
    case PotentialKind::sobolev: return "sobolev";
    case PotentialKind::dct_l1: return "dct_l1";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(const std::string& s) {
  if (s == "gd") return PotentialKind::gd;
  if (s == "sobolev") return PotentialKind::sobolev;
  if (s == "dct_l1") return PotentialKind::dct_l1;
  throw std::invalid_argument("unknown potential '" + s + "' (expected gd, sobolev or dct_l1)");
}

StepMode parse_step_mode(const std::string& s) {
  if (s == "fixed") return StepMode::fixed;
  if (s == "backtracking") return StepMode::backtracking;
  throw std::invalid_argument("unknown mode '" + s + "' (expected fixed or backtracking)");
}

double ExperimentConfig::resolved_alpha() const {
  if (alpha) return *alpha;
  switch (potential) {
    case PotentialKind::sobolev: return 1000.0;
    case PotentialKind::dct_l1: return 50.0;
    case PotentialKind::gd: return 0.0;
  }
  return 0.0;
}

void ExperimentConfig::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (rows < 2 || cols < 2) throw std::invalid_argument("config: rows and cols must be >= 2");
  if (!finite(peaks_scale)) throw std::invalid_argument("config: peaks_scale must be finite");
  if (!finite(sigma) || sigma < 0.0) throw std::invalid_argument("config: sigma must be >= 0");
  if (!finite(tau) || tau <= 0.0) throw std::invalid_argument("config: tau must be > 0");
  if (rho && (!finite(*rho) || *rho <= 0.0)) throw std::invalid_argument("config: rho must be > 0");
  if (!finite(mu) || mu < 0.0) throw std::invalid_argument("config: mu must be >= 0");
  if (max_iters == 0) throw std::invalid_argument("config: max_iters must be positive");
  if (potential != PotentialKind::gd) {
    const double a = resolved_alpha();
    if (!finite(a) || a <= 0.0) throw std::invalid_argument("config: alpha must be > 0");
  }
}

NoiseModel::NoiseModel(double sigma, std::uint64_t seed) : sigma_(sigma), engine_(seed) {
  if (!std::isfinite(sigma) || sigma < 0.0) throw std::invalid_argument("noise: sigma must be >= 0");
}

double NoiseModel::next_uniform() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double NoiseModel::next_normal() {
  if (cached_) {
    const double z = *cached_;
    cached_.reset();
    return z;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Grid NoiseModel::sample(std::size_t rows, std::size_t cols) {
  Grid g(rows, cols);
  for (double& v : g.values()) v = sigma_ * next_normal();
  return g;
}

Grid peaks(std::size_t rows, std::size_t cols, double scale) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("peaks: rows and cols must be >= 2");
  const auto coord = [](std::size_t i, std::size_t n) {
    return -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  Grid g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = coord(r, rows);
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = coord(c, cols);
      const double v = 3.0 * (1.0 - x) * (1.0 - x) * std::exp(-x * x - (y + 1.0) * (y + 1.0)) -
                       10.0 * (x / 5.0 - x * x * x - std::pow(y, 5)) * std::exp(-x * x - y * y) -
                       std::exp(-(x + 1.0) * (x + 1.0) - y * y) / 3.0;
      g(r, c) = scale * v;
    }
  }
  return g;
}

Dataset make_dataset(const ExperimentConfig& cfg) {
  Grid truth = peaks(cfg.rows, cfg.cols, cfg.peaks_scale);
  NoiseModel noise(cfg.sigma, cfg.seed);
  Grid n1 = noise.sample(cfg.rows, cfg.cols);
  Grid n2 = noise.sample(cfg.rows, cfg.cols);
  Grid f1 = map(truth, [](double t) { return std::cos(t); }) + n1;
  Grid f2 = map(truth, [](double t) { return std::sin(t); }) + n2;
  return {std::move(truth), GridPair(std::move(f1), std::move(f2))};
}

double discrepancy_threshold(double sigma, std::size_t rows, std::size_t cols) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("discrepancy_threshold: sigma must be >= 0");
  const double m = 2.0 * static_cast<double>(rows) * static_cast<double>(cols);
  return sigma * sigma * m / 2.0;
}

std::unique_ptr<Potential> make_potential(const ExperimentConfig& cfg) {
  switch (cfg.potential) {
    case PotentialKind::gd: return quadratic_potential();
    case PotentialKind::sobolev:
      return sobolev_potential(cfg.resolved_alpha(), NeumannLaplacian(cfg.rows, cfg.cols));
    case PotentialKind::dct_l1:
      return dct_l1_potential(cfg.resolved_alpha(), cfg.mu, DctPlan(cfg.rows, cfg.cols));
  }
  throw std::invalid_argument("make_potential: unknown kind");
}

StepPolicy make_step_policy(const ExperimentConfig& cfg) {
  StepPolicy policy;
  policy.mode = cfg.mode;
  policy.tau0 = cfg.tau;
  policy.rho = cfg.rho;
  return policy;
}

StoppingRule make_stopping_rule(const ExperimentConfig& cfg) {
  StoppingRule stop;
  stop.max_iters = cfg.max_iters;
  stop.discrepancy_threshold = discrepancy_threshold(cfg.sigma, cfg.rows, cfg.cols);
  return stop;
}

SolverResult solve_experiment(const ExperimentConfig& cfg, const Dataset& dataset) {
  cfg.validate();
  if (dataset.truth.shape() != Shape{cfg.rows, cfg.cols}) {
    throw ShapeError("solve_experiment: dataset shape does not match config");
  }
  const PhaseUnwrapObjective objective(dataset.data);
  const auto potential = make_potential(cfg);
  return run(objective, *potential, Grid(cfg.rows, cfg.cols), make_step_policy(cfg),
             make_stopping_rule(cfg));
}

void write_dataset(const Dataset& dataset, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  write_grid_csv(out_dir / "truth.csv", dataset.truth);
  write_grid_csv(out_dir / "f1.csv", dataset.data.first);
  write_grid_csv(out_dir / "f2.csv", dataset.data.second);
}

Dataset read_dataset(const fs::path& dir) {
  for (const char* name : {"truth.csv", "f1.csv", "f2.csv"}) {
    if (!fs::exists(dir / name)) throw std::runtime_error("missing artifact " + (dir / name).string());
  }
  return {read_grid_csv(dir / "truth.csv"),
          GridPair(read_grid_csv(dir / "f1.csv"), read_grid_csv(dir / "f2.csv"))};
}

namespace {

void write_config(const fs::path& path, const ExperimentConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  out << "rows " << cfg.rows << "\ncols " << cfg.cols << "\npeaks_scale " << cfg.peaks_scale
      << "\nsigma " << cfg.sigma << "\nseed " << cfg.seed << "\npotential "
      << to_string(cfg.potential) << "\nalpha " << cfg.resolved_alpha() << "\nmu " << cfg.mu
      << "\ntau " << cfg.tau << "\nmax_iters " << cfg.max_iters << "\nmode "
      << to_string(cfg.mode) << '\n';
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  const Dataset dataset = make_dataset(cfg);
  const auto potential = make_potential(cfg);
  const PhaseUnwrapObjective objective(dataset.data);
  SolverResult result = run(objective, *potential, Grid(cfg.rows, cfg.cols),
                            make_step_policy(cfg), make_stopping_rule(cfg));
  DiagnosticsReport report = diagnostics_report(result, *potential);

  write_dataset(dataset, out_dir);
  write_grid_csv(out_dir / "recon.csv", result.u_final);
  {
    std::ofstream trace(out_dir / "trace.csv");
    if (!trace) throw std::runtime_error("cannot write trace.csv");
    write_trace_csv(trace, result.trace);
  }
  {
    std::ofstream txt(out_dir / "report.txt");
    if (!txt) throw std::runtime_error("cannot write report.txt");
    txt << std::setprecision(17) << "potential " << potential->name() << "\nstop_reason "
        << to_string(result.stop_reason) << "\niterations " << result.iterations
        << "\ninitial_E " << result.initial_energy << "\nfinal_E " << result.final_energy
        << "\ndiscrepancy_threshold " << discrepancy_threshold(cfg.sigma, cfg.rows, cfg.cols)
        << '\n'
        << to_text(report);
  }
  write_config(out_dir / "config.txt", cfg);
  write_pgm(out_dir / "truth.pgm", dataset.truth);
  write_pgm(out_dir / "recon.pgm", result.u_final);
  return {std::move(result), std::move(report)};
}

std::vector<CompareRow> compare(const std::vector<fs::path>& run_dirs) {
  if (run_dirs.empty()) throw std::invalid_argument("compare: need at least one run directory");
  std::vector<CompareRow> rows;
  for (const auto& dir : run_dirs) {
    const fs::path trace_path = dir / "trace.csv";
    const fs::path recon_path = dir / "recon.csv";
    for (const auto& p : {trace_path, recon_path}) {
      if (!fs::exists(p)) throw std::runtime_error("missing artifact " + p.string());
    }
    const Dataset dataset = read_dataset(dir);
    const Grid recon = read_grid_csv(recon_path);
    require_same_shape(recon, dataset.truth, "compare");

    std::ifstream trace(trace_path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(trace, line)) {
      if (!line.empty()) ++lines;
    }
    if (lines == 0) throw std::runtime_error("compare: empty trace " + trace_path.string());

    CompareRow row;
    row.name = fs::absolute(dir).lexically_normal().filename().string();
    if (row.name.empty()) row.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
    row.iterations = lines - 1;
    row.final_energy = PhaseUnwrapObjective(dataset.data).value(recon);
    const double truth_norm = norm(dataset.truth);
    row.relative_error = truth_norm > 0.0 ? norm(recon - dataset.truth) / truth_norm
                                          : norm(recon - dataset.truth);
    double wrapped = 0.0;
    for (std::size_t i = 0; i < recon.size(); ++i) {
      const double dc = std::cos(recon[i]) - std::cos(dataset.truth[i]);
      const double ds = std::sin(recon[i]) - std::sin(dataset.truth[i]);
      wrapped += dc * dc + ds * ds;
    }
    row.wrapped_residual = std::sqrt(wrapped);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  const auto old_precision = out.precision(17);
  out << "config,iterations,final_E,relative_error,wrapped_residual\n";
  for (const auto& r : rows) {
    out << r.name << ',' << r.iterations << ',' << r.final_energy << ',' << r.relative_error << ','
        << r.wrapped_residual << '\n';
  }
  out.precision(old_precision);
}

}  // namespace lbreg
