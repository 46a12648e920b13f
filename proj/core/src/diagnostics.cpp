#include "lbreg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lbreg {
namespace {

bool all_true(const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); }

}  // namespace

bool DiagnosticsReport::all_decrease() const { return all_true(decrease_ok); }
bool DiagnosticsReport::all_sqnorm() const { return all_true(sqnorm_ok); }
bool DiagnosticsReport::all_gradient_bound() const { return all_true(gradient_bound_ok); }

DiagnosticsReport diagnostics_report(const IterationTrace& trace, std::optional<double> gamma,
                                     std::optional<double> delta, double tau_inf,
                                     std::size_t window) {
  DiagnosticsReport r;
  r.rho = trace.rho;
  r.tau_inf = tau_inf;
  r.gamma = gamma;
  r.delta = delta;
  if (gamma) r.rho1 = *gamma * trace.rho;
  if (delta && tau_inf > 0.0) r.rho2 = 1.0 / (*delta * tau_inf);

  const double inf = std::numeric_limits<double>::infinity();
  r.worst_decrease_slack = inf;
  if (r.rho1) r.worst_sqnorm_slack = inf;
  if (r.rho2) r.worst_gradient_slack = inf;

  double sum_dsymm = 0.0;
  double min_energy = trace.empty() ? 0.0 : trace.entries.front().energy;
  for (const auto& e : trace.entries) {
    const double tol = 1e-9 * (1.0 + std::abs(e.energy));
    const double drop = e.energy - e.energy_next;

    const double dec = drop - r.rho * e.dsymm + tol;
    r.decrease_ok.push_back(dec >= 0.0);
    r.worst_decrease_slack = std::min(r.worst_decrease_slack, dec);

    if (r.rho1) {
      const double s = drop - *r.rho1 * e.step_norm * e.step_norm + tol;
      r.sqnorm_ok.push_back(s >= 0.0);
      r.worst_sqnorm_slack = std::min(*r.worst_sqnorm_slack, s);
    }
    if (r.rho2) {
      const double s = *r.rho2 * e.step_norm * (1.0 + 1e-6) - e.grad_norm;
      r.gradient_bound_ok.push_back(s >= 0.0);
      r.worst_gradient_slack = std::min(*r.worst_gradient_slack, s);
    }
    r.rho_condition_ok.push_back(e.rho_condition);

    const double eq5 = std::abs(e.grad_dot_step + e.dsymm / e.tau) / (1.0 + std::abs(e.grad_dot_step));
    r.worst_eq5_residual = std::max(r.worst_eq5_residual, eq5);

    sum_dsymm += e.dsymm;
    min_energy = std::min({min_energy, e.energy, e.energy_next});
    r.max_dsymm = std::max(r.max_dsymm, e.dsymm);
  }
  if (trace.empty()) {
    r.worst_decrease_slack = 0.0;
    if (r.worst_sqnorm_slack) r.worst_sqnorm_slack = 0.0;
    if (r.worst_gradient_slack) r.worst_gradient_slack = 0.0;
  } else {
    r.final_dsymm = trace.entries.back().dsymm;
    r.telescoping_lhs = r.rho * sum_dsymm;
    r.telescoping_rhs = trace.entries.front().energy - min_energy;
  }

  r.window = std::min(window, trace.size());
  if (r.window > 0) {
    double ds = 0.0;
    double st = 0.0;
    for (std::size_t i = trace.size() - r.window; i < trace.size(); ++i) {
      ds += trace.entries[i].dsymm;
      st += trace.entries[i].step_norm;
    }
    r.window_mean_dsymm = ds / static_cast<double>(r.window);
    r.window_mean_step = st / static_cast<double>(r.window);
  }
  return r;
}

std::string to_text(const DiagnosticsReport& r) {
  std::ostringstream out;
  out.precision(10);
  const auto count_ok = [](const std::vector<bool>& v) {
    return std::count(v.begin(), v.end(), true);
  };
  const auto opt = [](std::optional<double> x) {
    std::ostringstream s;
    s.precision(10);
    if (x) s << *x; else s << "n/a";
    return s.str();
  };
  const std::size_t n = r.decrease_ok.size();

  out << "steps " << n << '\n';
  out << "rho " << r.rho << "  (default: (1/tau0 - L/2) * gamma, a derived sufficient choice)\n";
  out << "tau_inf " << r.tau_inf << '\n';
  out << "gamma " << opt(r.gamma) << "  delta " << opt(r.delta) << '\n';
  out << "rho1 " << opt(r.rho1) << "  rho2 " << opt(r.rho2) << '\n';
  out << "step_size_estimate held " << count_ok(r.rho_condition_ok) << '/' << n << '\n';
  out << "sufficient_decrease held " << count_ok(r.decrease_ok) << '/' << n
      << "  worst_slack " << r.worst_decrease_slack << '\n';
  if (r.rho1) {
    out << "sqnorm_decrease held " << count_ok(r.sqnorm_ok) << '/' << n << "  worst_slack "
        << *r.worst_sqnorm_slack << '\n';
  } else {
    out << "sqnorm_decrease n/a (gamma undeclared)\n";
  }
  if (r.rho2) {
    out << "gradient_bound held " << count_ok(r.gradient_bound_ok) << '/' << n << "  worst_slack "
        << *r.worst_gradient_slack << '\n';
  } else {
    out << "gradient_bound n/a (delta undeclared)\n";
  }
  out << "inner_product_identity worst_residual " << r.worst_eq5_residual << '\n';
  out << "telescoping rho*sum(Dsymm) " << r.telescoping_lhs << " <= E0 - minE " << r.telescoping_rhs
      << (r.telescoping_holds() ? "  ok" : "  VIOLATED") << '\n';
  out << "dsymm max " << r.max_dsymm << "  final " << r.final_dsymm << '\n';
  out << "last_" << r.window << "_mean dsymm " << r.window_mean_dsymm << "  step_norm "
      << r.window_mean_step << '\n';
  return out.str();
}

}  // namespace lbreg
