#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "lbreg/grid.hpp"
#include "lbreg/transforms.hpp"

namespace lbreg {

/// Raised when a (u, p) pair is required to satisfy p in dJ(u) and does not.
class SubgradientError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Residual threshold below which p counts as a subgradient of J at u.
inline constexpr double kConsistencyTol = 1e-8;

/// Convex potential J(u) = 1/2|u|^2 + alpha R(u) driving the Bregman geometry.
///
/// Every potential supplies the exact resolvent u = argmin J(u) - <p, u>,
/// i.e. the unique u with p in dJ(u), and a residual telling how far a pair
/// (u, p) is from satisfying that inclusion. gamma/delta are the primal and
/// dual strong-convexity moduli of the symmetric Bregman distance, when known.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual std::string name() const = 0;
  virtual double value(const Grid& u) const = 0;
  virtual Grid solve_subproblem(const Grid& p) const = 0;
  /// A fixed, well-defined element of dJ(u): the gradient for smooth J.
  virtual Grid canonical_subgradient(const Grid& u) const = 0;
  virtual double subgradient_consistency(const Grid& u, const Grid& p) const = 0;
  virtual std::optional<double> gamma() const = 0;
  virtual std::optional<double> delta() const = 0;
};

/// J(u) = 1/2|u|^2. The iteration reduces to plain gradient descent.
class QuadraticPotential final : public Potential {
 public:
  std::string name() const override { return "quadratic"; }
  double value(const Grid& u) const override;
  Grid solve_subproblem(const Grid& p) const override { return p; }
  Grid canonical_subgradient(const Grid& u) const override { return u; }
  double subgradient_consistency(const Grid& u, const Grid& p) const override;
  std::optional<double> gamma() const override { return 1.0; }
  std::optional<double> delta() const override { return 1.0; }
};

/// J(u) = 1/2|u|^2 + (alpha/2)|grad u|^2 with Neumann boundary.
class SobolevPotential final : public Potential {
 public:
  SobolevPotential(double alpha, NeumannLaplacian lap);

  double alpha() const { return alpha_; }
  const NeumannLaplacian& laplacian() const { return lap_; }

  std::string name() const override { return "sobolev"; }
  double value(const Grid& u) const override;
  Grid solve_subproblem(const Grid& p) const override;
  Grid canonical_subgradient(const Grid& u) const override;
  double subgradient_consistency(const Grid& u, const Grid& p) const override;
  std::optional<double> gamma() const override { return 1.0; }
  /// 1 / (1 + alpha * lambda_max).
  std::optional<double> delta() const override;

 private:
  double alpha_;
  NeumannLaplacian lap_;
};

/// Huber function h_mu(t) = t^2/(2mu) for |t| <= mu, |t| - mu/2 otherwise;
/// plain |t| for mu == 0.
double huber(double t, double mu);

/// J(u) = 1/2|u|^2 + alpha sum_i h_mu((Cu)_i), C the orthonormal 2D DCT-II.
///
/// mu == 0 gives the non-smooth l1 penalty (soft thresholding, no dual
/// modulus); mu > 0 gives the Huberised version with delta = 1/(1 + alpha/mu).
class DctL1Potential final : public Potential {
 public:
  DctL1Potential(double alpha, double mu, DctPlan plan);

  double alpha() const { return alpha_; }
  double mu() const { return mu_; }
  const DctPlan& plan() const { return plan_; }

  /// Per-coefficient solution of c + alpha h_mu'(c) = z.
  double shrink(double z) const;

  std::string name() const override { return "dct_l1"; }
  double value(const Grid& u) const override;
  Grid solve_subproblem(const Grid& p) const override;
  Grid canonical_subgradient(const Grid& u) const override;
  double subgradient_consistency(const Grid& u, const Grid& p) const override;
  std::optional<double> gamma() const override { return 1.0; }
  std::optional<double> delta() const override;

 private:
  // Coefficients this close to zero are treated as exactly zero in dJ.
  double zero_threshold(const Grid& z) const;

  double alpha_;
  double mu_;
  DctPlan plan_;
};

inline constexpr double kDefaultHuberMu = 0.01;

std::unique_ptr<Potential> quadratic_potential();
std::unique_ptr<Potential> sobolev_potential(double alpha, const NeumannLaplacian& lap);
std::unique_ptr<Potential> dct_l1_potential(double alpha, double mu, const DctPlan& plan);

/// D_J^q(u, v) = J(u) - J(v) - <q, u - v>. Throws SubgradientError unless
/// q is a subgradient of J at v.
double bregman(const Potential& J, const Grid& u, const Grid& v, const Grid& q);

/// <u - v, p - q>, with no consistency checks.
double symmetric_bregman(const Grid& u, const Grid& v, const Grid& p, const Grid& q);

/// Checked variant: requires p in dJ(u) and q in dJ(v).
double symmetric_bregman(const Potential& J, const Grid& u, const Grid& v, const Grid& p,
                         const Grid& q);

struct BregmanDiag {
  double d_forward;    // D_J^q(u, v)
  double d_symmetric;  // <u - v, p - q>
};

BregmanDiag bregman_diag(const Potential& J, const Grid& u, const Grid& v, const Grid& p,
                         const Grid& q);

}  // namespace lbreg
