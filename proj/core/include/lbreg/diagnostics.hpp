#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lbreg/solver.hpp"

namespace lbreg {

/// Runtime check of the descent theory along a completed trace.
///
/// Slack conventions: a check passes at step k when its slack is >= 0.
///   decrease:  E_k - E_{k+1} - rho Ds + 1e-9 (1 + |E_k|)
///   sqnorm:    E_k - E_{k+1} - rho1 |du|^2 + 1e-9 (1 + |E_k|),  rho1 = gamma * rho
///   gradient:  rho2 |du| (1 + 1e-6) - |grad E_k|,               rho2 = 1 / (delta * tau_inf)
/// The sqnorm and gradient checks are only evaluated when gamma, respectively
/// delta, is declared by the potential.
struct DiagnosticsReport {
  double rho = 0.0;
  double tau_inf = 0.0;
  std::optional<double> gamma;
  std::optional<double> delta;
  std::optional<double> rho1;
  std::optional<double> rho2;

  std::vector<bool> decrease_ok;
  std::vector<bool> sqnorm_ok;
  std::vector<bool> gradient_bound_ok;
  std::vector<bool> rho_condition_ok;

  double worst_decrease_slack = 0.0;
  std::optional<double> worst_sqnorm_slack;
  std::optional<double> worst_gradient_slack;
  double worst_eq5_residual = 0.0;  // max_k |<grad E, du> + Ds/tau| / (1 + |<grad E, du>|)

  // rho * sum_k Ds <= E(u^0) - min_k E(u^k)
  double telescoping_lhs = 0.0;
  double telescoping_rhs = 0.0;

  double max_dsymm = 0.0;
  double final_dsymm = 0.0;
  double window_mean_dsymm = 0.0;
  double window_mean_step = 0.0;
  std::size_t window = 0;

  bool all_decrease() const;
  bool all_sqnorm() const;
  bool all_gradient_bound() const;
  bool telescoping_holds(double tol = 1e-6) const { return telescoping_lhs <= telescoping_rhs + tol; }
};

DiagnosticsReport diagnostics_report(const IterationTrace& trace, std::optional<double> gamma,
                                     std::optional<double> delta, double tau_inf,
                                     std::size_t window = 10);

inline DiagnosticsReport diagnostics_report(const SolverResult& result, const Potential& J,
                                            std::size_t window = 10) {
  return diagnostics_report(result.trace, J.gamma(), J.delta(), result.tau_inf, window);
}

/// Plain-text rendering for report.txt.
std::string to_text(const DiagnosticsReport& report);

}  // namespace lbreg
