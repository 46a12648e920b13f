#include "lbreg/objectives.hpp"

#include <cmath>

namespace lbreg {

PhaseUnwrapObjective::PhaseUnwrapObjective(GridPair data) : data_(std::move(data)) {}

double PhaseUnwrapObjective::value(const Grid& u) const {
  require_same_shape(u, data_.first, "PhaseUnwrapObjective::value");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double rc = std::cos(u[i]) - data_.first[i];
    const double rs = std::sin(u[i]) - data_.second[i];
    acc += rc * rc + rs * rs;
  }
  return 0.5 * acc;
}

double PhaseUnwrapObjective::value_expanded(const Grid& u) const {
  require_same_shape(u, data_.first, "PhaseUnwrapObjective::value_expanded");
  double constant = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double f1 = data_.first[i];
    const double f2 = data_.second[i];
    constant += 1.0 + f1 * f1 + f2 * f2;
    cross += f1 * std::cos(u[i]) + f2 * std::sin(u[i]);
  }
  return 0.5 * constant - cross;
}

Grid PhaseUnwrapObjective::gradient(const Grid& u) const {
  require_same_shape(u, data_.first, "PhaseUnwrapObjective::gradient");
  Grid g = Grid::zeros_like(u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    g[i] = data_.first[i] * std::sin(u[i]) - data_.second[i] * std::cos(u[i]);
  }
  return g;
}

double QuadraticObjective::value(const Grid& u) const { return 0.5 * norm_sq(u - target_); }

Grid QuadraticObjective::gradient(const Grid& u) const { return u - target_; }

}  // namespace lbreg
