#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lbreg/diagnostics.hpp"
#include "lbreg/grid.hpp"
#include "lbreg/potentials.hpp"
#include "lbreg/solver.hpp"

namespace lbreg {

enum class PotentialKind { gd, sobolev, dct_l1 };

std::string to_string(PotentialKind k);
PotentialKind parse_potential_kind(const std::string& s);
StepMode parse_step_mode(const std::string& s);

struct ExperimentConfig {
  std::size_t rows = 64;
  std::size_t cols = 64;
  double peaks_scale = 1.0;
  double sigma = 0.15;
  std::uint64_t seed = 42;
  PotentialKind potential = PotentialKind::gd;
  /// Unset: 1000 for sobolev, 50 for dct_l1.
  std::optional<double> alpha;
  double mu = kDefaultHuberMu;
  double tau = 1.5;
  std::optional<double> rho;
  std::size_t max_iters = 100000;
  StepMode mode = StepMode::fixed;

  double resolved_alpha() const;
  /// Throws std::invalid_argument on non-finite or out-of-range fields.
  void validate() const;
};

/// Gaussian noise fields from a pinned generator.
///
/// Uniforms come from std::mt19937_64 seeded with `seed`, each draw mapped
/// to (0, 1] as ((x >> 11) + 1) * 2^-53. Normals use the basic Box-Muller
/// transform on consecutive uniform pairs (u1, u2):
///   z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2),
/// emitted in that order. A field is filled in row-major order; a pair of
/// fields draws the first field completely before the second.
class NoiseModel {
 public:
  NoiseModel(double sigma, std::uint64_t seed);

  double sigma() const { return sigma_; }

  double next_normal();
  Grid sample(std::size_t rows, std::size_t cols);

 private:
  double next_uniform();

  double sigma_;
  std::mt19937_64 engine_;
  std::optional<double> cached_;
};

/// MATLAB's peaks surface sampled on a uniform grid over [-3, 3]^2 (x along
/// columns, y along rows), times scale. Requires rows, cols >= 2.
Grid peaks(std::size_t rows, std::size_t cols, double scale);

struct Dataset {
  Grid truth;
  GridPair data;
};

/// truth = peaks(...); data = (cos truth + n1, sin truth + n2).
Dataset make_dataset(const ExperimentConfig& cfg);

/// sigma^2 m / 2 with m = 2 rows cols scalar residual entries.
double discrepancy_threshold(double sigma, std::size_t rows, std::size_t cols);

std::unique_ptr<Potential> make_potential(const ExperimentConfig& cfg);

StepPolicy make_step_policy(const ExperimentConfig& cfg);
StoppingRule make_stopping_rule(const ExperimentConfig& cfg);

/// Solves from u0 = 0 on the given data with the configured potential.
SolverResult solve_experiment(const ExperimentConfig& cfg, const Dataset& dataset);

struct RunOutcome {
  SolverResult result;
  DiagnosticsReport report;
};

/// Generates the dataset, solves, and writes truth/f1/f2/recon/trace CSVs,
/// report.txt, config.txt and truth/recon PGM renderings into out_dir.
RunOutcome run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Writes truth.csv, f1.csv and f2.csv.
void write_dataset(const Dataset& dataset, const std::filesystem::path& out_dir);
Dataset read_dataset(const std::filesystem::path& dir);

struct CompareRow {
  std::string name;
  std::size_t iterations = 0;
  double final_energy = 0.0;
  double relative_error = 0.0;    // |u - truth| / |truth|
  double wrapped_residual = 0.0;  // |K(u) - K(truth)|
};

/// Summarises completed run directories (name = directory name). Throws
/// std::runtime_error when an artifact is missing.
std::vector<CompareRow> compare(const std::vector<std::filesystem::path>& run_dirs);
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

}  // namespace lbreg
