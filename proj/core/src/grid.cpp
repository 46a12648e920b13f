#include "lbreg/grid.hpp"

#include <algorithm>
#include <cmath>

namespace lbreg {

std::string to_string(const Shape& s) {
  return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

Grid::Grid(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("Grid: dimensions must be positive");
  if (!std::isfinite(fill)) throw std::invalid_argument("Grid: fill value must be finite");
  values_.assign(rows * cols, fill);
}

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("Grid: dimensions must be positive");
  if (values_.size() != rows * cols) {
    throw std::invalid_argument("Grid: expected " + std::to_string(rows * cols) + " values, got " +
                                std::to_string(values_.size()));
  }
  if (!all_finite()) throw std::invalid_argument("Grid: values must be finite");
}

bool Grid::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridPair::GridPair(Grid a, Grid b) : first(std::move(a)), second(std::move(b)) {
  require_same_shape(first, second, "GridPair");
}

void require_same_shape(const Grid& a, const Grid& b, const char* context) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(context) + ": shape mismatch " + to_string(a.shape()) + " vs " +
                     to_string(b.shape()));
  }
}

double inner(const Grid& a, const Grid& b) {
  require_same_shape(a, b, "inner");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double inner(const GridPair& a, const GridPair& b) {
  return inner(a.first, b.first) + inner(a.second, b.second);
}

double norm_sq(const Grid& a) {
  double acc = 0.0;
  for (double v : a.values()) acc += v * v;
  return acc;
}

double norm(const Grid& a) { return std::sqrt(norm_sq(a)); }

double max_abs(const Grid& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

Grid axpy(double alpha, const Grid& x, const Grid& y) {
  return zip(x, y, [alpha](double xi, double yi) { return alpha * xi + yi; });
}

Grid operator+(const Grid& a, const Grid& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

Grid operator-(const Grid& a, const Grid& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}

Grid operator*(double s, const Grid& a) {
  return map(a, [s](double x) { return s * x; });
}

Grid operator-(const Grid& a) {
  return map(a, [](double x) { return -x; });
}

}  // namespace lbreg
