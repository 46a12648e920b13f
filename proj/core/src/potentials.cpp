#include "lbreg/potentials.hpp"

#include <cmath>

namespace lbreg {
namespace {

double relative_residual(const Grid& r, const Grid& p) { return norm(r) / (1.0 + norm(p)); }

void require_consistent(const Potential& J, const Grid& u, const Grid& p, const char* what) {
  const double res = J.subgradient_consistency(u, p);
  if (!(res <= kConsistencyTol)) {
    throw SubgradientError(std::string(what) + ": not a subgradient of " + J.name() +
                           " (residual " + std::to_string(res) + ")");
  }
}

double sign(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

}  // namespace

double QuadraticPotential::value(const Grid& u) const { return 0.5 * norm_sq(u); }

double QuadraticPotential::subgradient_consistency(const Grid& u, const Grid& p) const {
  return relative_residual(u - p, p);
}

SobolevPotential::SobolevPotential(double alpha, NeumannLaplacian lap)
    : alpha_(alpha), lap_(std::move(lap)) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("sobolev potential: alpha must be positive");
  }
}

double SobolevPotential::value(const Grid& u) const {
  return 0.5 * norm_sq(u) + 0.5 * alpha_ * inner(apply_laplacian(lap_, u), u);
}

Grid SobolevPotential::solve_subproblem(const Grid& p) const {
  return solve_identity_plus_alpha_laplacian(lap_, alpha_, p);
}

Grid SobolevPotential::canonical_subgradient(const Grid& u) const {
  return axpy(alpha_, apply_laplacian(lap_, u), u);
}

double SobolevPotential::subgradient_consistency(const Grid& u, const Grid& p) const {
  return relative_residual(canonical_subgradient(u) - p, p);
}

std::optional<double> SobolevPotential::delta() const {
  return 1.0 / (1.0 + alpha_ * lap_.max_eigenvalue());
}

double huber(double t, double mu) {
  const double a = std::abs(t);
  if (mu == 0.0) return a;
  return a <= mu ? t * t / (2.0 * mu) : a - 0.5 * mu;
}

DctL1Potential::DctL1Potential(double alpha, double mu, DctPlan plan)
    : alpha_(alpha), mu_(mu), plan_(std::move(plan)) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("dct_l1 potential: alpha must be positive");
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("dct_l1 potential: mu must be non-negative");
  }
}

double DctL1Potential::shrink(double z) const {
  if (mu_ == 0.0) return sign(z) * std::max(std::abs(z) - alpha_, 0.0);
  // Both branches coincide at |z| = mu + alpha.
  if (std::abs(z) <= mu_ + alpha_) return z / (1.0 + alpha_ / mu_);
  return z - alpha_ * sign(z);
}

double DctL1Potential::value(const Grid& u) const {
  const Grid c = plan_.forward(u);
  double penalty = 0.0;
  for (double ci : c.values()) penalty += huber(ci, mu_);
  return 0.5 * norm_sq(u) + alpha_ * penalty;
}

Grid DctL1Potential::solve_subproblem(const Grid& p) const {
  Grid c = plan_.forward(p);
  for (double& ci : c.values()) ci = shrink(ci);
  return plan_.inverse(c);
}

double DctL1Potential::zero_threshold(const Grid& z) const { return 1e-9 * (1.0 + max_abs(z)); }

Grid DctL1Potential::canonical_subgradient(const Grid& u) const {
  Grid c = plan_.forward(u);
  const double zero = zero_threshold(c);
  Grid w = Grid::zeros_like(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (mu_ > 0.0) {
      w[i] = std::abs(c[i]) <= mu_ ? c[i] / mu_ : sign(c[i]);
    } else {
      w[i] = std::abs(c[i]) <= zero ? 0.0 : sign(c[i]);
    }
  }
  return axpy(alpha_, plan_.inverse(w), u);
}

double DctL1Potential::subgradient_consistency(const Grid& u, const Grid& p) const {
  // C is orthonormal, so the residual can be measured coefficient-wise.
  const Grid c = plan_.forward(u);
  const Grid z = plan_.forward(p);
  const double zero = zero_threshold(z);
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double r = z[i] - c[i];  // must lie in alpha * dh_mu(c_i)
    double d = 0.0;
    if (mu_ > 0.0) {
      const double h1 = std::abs(c[i]) <= mu_ ? c[i] / mu_ : sign(c[i]);
      d = r - alpha_ * h1;
    } else if (std::abs(c[i]) <= zero) {
      d = std::max(std::abs(r) - alpha_, 0.0);
    } else {
      d = r - alpha_ * sign(c[i]);
    }
    acc += d * d;
  }
  return std::sqrt(acc) / (1.0 + norm(p));
}

std::optional<double> DctL1Potential::delta() const {
  if (mu_ == 0.0) return std::nullopt;
  return 1.0 / (1.0 + alpha_ / mu_);
}

std::unique_ptr<Potential> quadratic_potential() { return std::make_unique<QuadraticPotential>(); }

std::unique_ptr<Potential> sobolev_potential(double alpha, const NeumannLaplacian& lap) {
  return std::make_unique<SobolevPotential>(alpha, lap);
}

std::unique_ptr<Potential> dct_l1_potential(double alpha, double mu, const DctPlan& plan) {
  return std::make_unique<DctL1Potential>(alpha, mu, plan);
}

double bregman(const Potential& J, const Grid& u, const Grid& v, const Grid& q) {
  require_consistent(J, v, q, "bregman");
  return J.value(u) - J.value(v) - inner(q, u - v);
}

double symmetric_bregman(const Grid& u, const Grid& v, const Grid& p, const Grid& q) {
  return inner(u - v, p - q);
}

double symmetric_bregman(const Potential& J, const Grid& u, const Grid& v, const Grid& p,
                         const Grid& q) {
  require_consistent(J, u, p, "symmetric_bregman");
  require_consistent(J, v, q, "symmetric_bregman");
  return symmetric_bregman(u, v, p, q);
}

BregmanDiag bregman_diag(const Potential& J, const Grid& u, const Grid& v, const Grid& p,
                         const Grid& q) {
  return {bregman(J, u, v, q), symmetric_bregman(J, u, v, p, q)};
}

}  // namespace lbreg
