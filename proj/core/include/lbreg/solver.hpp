#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbreg/grid.hpp"
#include "lbreg/objectives.hpp"
#include "lbreg/potentials.hpp"

namespace lbreg {

/// Solver failure tied to a specific iteration (non-finite energy, exhausted
/// backtracking, broken subgradient bookkeeping).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t iteration)
      : std::runtime_error(what + " at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}

  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

enum class StepMode { fixed, backtracking };

struct StepPolicy {
  StepMode mode = StepMode::fixed;
  double tau0 = 1.5;
  /// Unset: derived from tau0 and the objective's surrogate constant.
  std::optional<double> rho;
  double shrink_factor = 0.5;
  std::size_t max_backtracks = 40;
};

/// max(1e-6, (1/tau0 - L/2) * gamma): the largest rho for which the step-size
/// estimate holds whenever D^symm >= gamma |u^{k+1} - u^k|^2.
double default_rho(double tau0, double surrogate_L, double gamma = 1.0);

double resolved_rho(const StepPolicy& policy, const Objective& obj);

struct StoppingRule {
  std::size_t max_iters = 100000;
  std::optional<double> discrepancy_threshold;
  std::optional<double> gradient_tol;
  std::optional<double> dsymm_tol;
};

enum class StopReason { max_iters, discrepancy, gradient, dsymm };

std::string to_string(StopReason r);
std::string to_string(StepMode m);

/// One accepted step k: u^k -> u^{k+1}.
struct TraceEntry {
  std::size_t iter = 0;
  double energy = 0.0;       // E(u^k)
  double energy_next = 0.0;  // E(u^{k+1})
  double dsymm = 0.0;        // <u^{k+1} - u^k, p^{k+1} - p^k>
  double grad_norm = 0.0;    // |grad E(u^k)|
  double tau = 0.0;
  double descent_violation = 0.0;  // max(0, E(u^{k+1}) + rho D^symm - E(u^k))
  double step_norm = 0.0;          // |u^{k+1} - u^k|
  double grad_dot_step = 0.0;      // <grad E(u^k), u^{k+1} - u^k>
  bool rho_condition = false;      // step-size estimate held at this step
  std::size_t backtracks = 0;
};

struct IterationTrace {
  double rho = 0.0;
  std::vector<TraceEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

/// CSV with header iter,E,dsymm,grad_norm,tau,descent_violation at 17
/// significant digits.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

struct SolverResult {
  Grid u_final;
  Grid p_final;
  std::size_t iterations = 0;
  StopReason stop_reason = StopReason::max_iters;
  IterationTrace trace;
  double tau_inf = 0.0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
};

struct StepResult {
  Grid u_next;
  Grid p_next;
};

/// One linearised Bregman step: p+ = p - tau grad E(u), u+ = argmin J - <p+, .>.
/// Throws SubgradientError if (u, p) is inconsistent and SolverError on a
/// non-finite gradient.
StepResult bregman_step(const Objective& obj, const Potential& J, const Grid& u, const Grid& p,
                        double tau);

/// rho Ds <= Ds/tau - (L/2)|u_next - u|^2, up to 1e-12 (1 + Ds), with
/// Ds = <u_next - u, p_next - p>.
bool check_rho_condition(const Objective& obj, const Grid& u, const Grid& u_next, const Grid& p,
                         const Grid& p_next, double tau, double rho);

/// Runs the iteration from u0 with p0 = J.canonical_subgradient(u0).
///
/// Fixed mode always takes tau0 and only records violations. Backtracking
/// mode shrinks tau until both the step-size estimate and the measured
/// sufficient decrease E(u+) + rho Ds <= E(u) hold.
SolverResult run(const Objective& obj, const Potential& J, const Grid& u0, const StepPolicy& policy,
                 const StoppingRule& stop);

}  // namespace lbreg
