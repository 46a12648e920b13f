#pragma once

#include "lbreg/grid.hpp"

namespace lbreg {

/// Smooth, possibly non-convex objective E.
///
/// surrogate_L() is the constant of the quadratic majorant F(u) = (L/2)|u|^2
/// that the solver uses for D_F; lower_bound() is any finite value with
/// E(u) >= lower_bound() everywhere.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual double value(const Grid& u) const = 0;
  virtual Grid gradient(const Grid& u) const = 0;
  virtual double surrogate_L() const = 0;
  virtual double lower_bound() const = 0;
};

/// E(u) = 1/2 sum_i (cos u_i - f1_i)^2 + (sin u_i - f2_i)^2, with L = 1.
class PhaseUnwrapObjective final : public Objective {
 public:
  explicit PhaseUnwrapObjective(GridPair data);

  const GridPair& data() const { return data_; }

  double value(const Grid& u) const override;
  Grid gradient(const Grid& u) const override;
  double surrogate_L() const override { return 1.0; }
  double lower_bound() const override { return 0.0; }

  /// Same value via 1/2 sum(1 + f1^2 + f2^2) - sum(f1 cos u + f2 sin u).
  double value_expanded(const Grid& u) const;

 private:
  GridPair data_;
};

/// E(u) = 1/2 |u - b|^2. Test and sanity objective with a known minimiser.
class QuadraticObjective final : public Objective {
 public:
  explicit QuadraticObjective(Grid target) : target_(std::move(target)) {}

  const Grid& target() const { return target_; }

  double value(const Grid& u) const override;
  Grid gradient(const Grid& u) const override;
  double surrogate_L() const override { return 1.0; }
  double lower_bound() const override { return 0.0; }

 private:
  Grid target_;
};

inline QuadraticObjective quadratic_objective(Grid b) { return QuadraticObjective(std::move(b)); }

}  // namespace lbreg
