#include "lbreg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace lbreg {
namespace {

bool rho_condition_holds(double ds, double df, double tau, double rho) {
  return rho * ds <= ds / tau - df + 1e-12 * (1.0 + std::abs(ds));
}

void validate(const StepPolicy& policy, const StoppingRule& stop) {
  if (!(policy.tau0 > 0.0) || !std::isfinite(policy.tau0)) {
    throw std::invalid_argument("step policy: tau0 must be positive and finite");
  }
  if (policy.rho && (!(*policy.rho > 0.0) || !std::isfinite(*policy.rho))) {
    throw std::invalid_argument("step policy: rho must be positive and finite");
  }
  if (!(policy.shrink_factor > 0.0 && policy.shrink_factor < 1.0)) {
    throw std::invalid_argument("step policy: shrink_factor must lie in (0, 1)");
  }
  if (policy.max_backtracks == 0) {
    throw std::invalid_argument("step policy: max_backtracks must be positive");
  }
  if (stop.max_iters == 0) throw std::invalid_argument("stopping rule: max_iters must be positive");
}

}  // namespace

double default_rho(double tau0, double surrogate_L, double gamma) {
  return std::max(1e-6, (1.0 / tau0 - 0.5 * surrogate_L) * gamma);
}

double resolved_rho(const StepPolicy& policy, const Objective& obj) {
  return policy.rho ? *policy.rho : default_rho(policy.tau0, obj.surrogate_L());
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::max_iters: return "max_iters";
    case StopReason::discrepancy: return "discrepancy";
    case StopReason::gradient: return "gradient";
    case StopReason::dsymm: return "dsymm";
  }
  return "unknown";
}

std::string to_string(StepMode m) { return m == StepMode::fixed ? "fixed" : "backtracking"; }

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  const auto old_precision = out.precision(17);
  out << "iter,E,dsymm,grad_norm,tau,descent_violation\n";
  for (const auto& e : trace.entries) {
    out << e.iter << ',' << e.energy << ',' << e.dsymm << ',' << e.grad_norm << ',' << e.tau << ','
        << e.descent_violation << '\n';
  }
  out.precision(old_precision);
}

StepResult bregman_step(const Objective& obj, const Potential& J, const Grid& u, const Grid& p,
                        double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("bregman_step: tau must be positive");
  const double pre = J.subgradient_consistency(u, p);
  if (!(pre <= kConsistencyTol)) {
    throw SubgradientError("bregman_step: p is not a subgradient of " + J.name() + " at u");
  }
  const Grid g = obj.gradient(u);
  if (!g.all_finite()) throw SolverError("bregman_step: non-finite gradient", 0);

  StepResult out{Grid::zeros_like(u), axpy(-tau, g, p)};
  out.u_next = J.solve_subproblem(out.p_next);
  if (!(J.subgradient_consistency(out.u_next, out.p_next) <= kConsistencyTol)) {
    throw SolverError("bregman_step: subproblem solution of " + J.name() + " is inconsistent", 0);
  }
  return out;
}

bool check_rho_condition(const Objective& obj, const Grid& u, const Grid& u_next, const Grid& p,
                         const Grid& p_next, double tau, double rho) {
  const Grid du = u_next - u;
  const double ds = inner(du, p_next - p);
  const double df = 0.5 * obj.surrogate_L() * norm_sq(du);
  return rho_condition_holds(ds, df, tau, rho);
}

SolverResult run(const Objective& obj, const Potential& J, const Grid& u0, const StepPolicy& policy,
                 const StoppingRule& stop) {
  validate(policy, stop);
  if (!u0.all_finite()) throw std::invalid_argument("run: u0 must be finite");

  const double rho = resolved_rho(policy, obj);
  const double L = obj.surrogate_L();

  Grid u = u0;
  Grid p = J.canonical_subgradient(u0);
  if (!(J.subgradient_consistency(u, p) <= kConsistencyTol)) {
    throw SolverError("run: canonical subgradient of " + J.name() + " is inconsistent", 0);
  }
  double energy = obj.value(u);
  if (!std::isfinite(energy)) throw SolverError("run: non-finite objective", 0);

  IterationTrace trace;
  trace.rho = rho;
  const double initial_energy = energy;
  double tau_inf = std::numeric_limits<double>::infinity();
  StopReason reason = StopReason::max_iters;
  std::size_t iterations = 0;

  const auto discrepancy_met = [&](double e) {
    return stop.discrepancy_threshold && e <= *stop.discrepancy_threshold;
  };

  if (discrepancy_met(energy)) {
    reason = StopReason::discrepancy;
  } else {
    bool stopped = false;
    for (std::size_t k = 0; k < stop.max_iters && !stopped; ++k) {
      const Grid g = obj.gradient(u);
      if (!g.all_finite()) throw SolverError("run: non-finite gradient", k);
      const double grad_norm = norm(g);
      if (stop.gradient_tol && grad_norm <= *stop.gradient_tol) {
        reason = StopReason::gradient;
        break;
      }

      double tau = policy.tau0;
      std::size_t backtracks = 0;
      while (true) {
        Grid p_next = axpy(-tau, g, p);
        Grid u_next = J.solve_subproblem(p_next);
        const double energy_next = obj.value(u_next);
        if (!std::isfinite(energy_next)) throw SolverError("run: non-finite objective", k + 1);

        const Grid du = u_next - u;
        const double ds = inner(du, p_next - p);
        const double step_sq = norm_sq(du);
        const bool cond = rho_condition_holds(ds, 0.5 * L * step_sq, tau, rho);
        const double slack = energy_next + rho * ds - energy;

        const bool accept = policy.mode == StepMode::fixed || (cond && slack <= 0.0);
        if (!accept) {
          if (++backtracks > policy.max_backtracks) {
            throw SolverError("run: backtracking exhausted " +
                                  std::to_string(policy.max_backtracks) + " reductions",
                              k);
          }
          tau *= policy.shrink_factor;
          continue;
        }

        TraceEntry e;
        e.iter = k;
        e.energy = energy;
        e.energy_next = energy_next;
        e.dsymm = ds;
        e.grad_norm = grad_norm;
        e.tau = tau;
        e.descent_violation = std::max(0.0, slack);
        e.step_norm = std::sqrt(step_sq);
        e.grad_dot_step = inner(g, du);
        e.rho_condition = cond;
        e.backtracks = backtracks;
        trace.entries.push_back(e);

        u = std::move(u_next);
        p = std::move(p_next);
        energy = energy_next;
        tau_inf = std::min(tau_inf, tau);
        iterations = k + 1;

        if (discrepancy_met(energy)) {
          reason = StopReason::discrepancy;
          stopped = true;
        } else if (stop.dsymm_tol && ds <= *stop.dsymm_tol) {
          reason = StopReason::dsymm;
          stopped = true;
        }
        break;
      }
    }
  }

  if (!(J.subgradient_consistency(u, p) <= kConsistencyTol)) {
    throw SolverError("run: final iterate pair is inconsistent", iterations);
  }
  if (trace.empty()) tau_inf = policy.tau0;

  return SolverResult{std::move(u),      std::move(p), iterations, reason, std::move(trace),
                      tau_inf,           initial_energy, energy};
}

}  // namespace lbreg
