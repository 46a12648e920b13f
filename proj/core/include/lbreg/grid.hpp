#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lbreg {

/// Raised whenever two grids that must share a shape do not.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& s);

/// Dense, row-major 2D array of finite doubles.
///
/// Used for primal iterates, dual variables and data channels alike. The
/// shape always travels with the values; operations never broadcast.
class Grid {
 public:
  /// Constant grid. Throws std::invalid_argument for a zero dimension or a
  /// non-finite fill value.
  Grid(std::size_t rows, std::size_t cols, double fill = 0.0);

  /// Takes ownership of row-major values. Throws if the length does not match
  /// rows*cols or any value is NaN/Inf.
  Grid(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Grid zeros(Shape s) { return Grid(s.rows, s.cols); }
  static Grid zeros_like(const Grid& g) { return Grid(g.rows(), g.cols()); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  Shape shape() const { return {rows_, cols_}; }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool all_finite() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Two grids of identical shape, e.g. the channels (cos u, sin u) or the two
/// components of a discrete gradient.
struct GridPair {
  Grid first;
  Grid second;

  GridPair(Grid a, Grid b);
  Shape shape() const { return first.shape(); }
};

void require_same_shape(const Grid& a, const Grid& b, const char* context);

/// Euclidean pairing; summed sequentially in index order.
double inner(const Grid& a, const Grid& b);
double inner(const GridPair& a, const GridPair& b);
double norm_sq(const Grid& a);
double norm(const Grid& a);
double max_abs(const Grid& a);

/// alpha*x + y.
Grid axpy(double alpha, const Grid& x, const Grid& y);

Grid operator+(const Grid& a, const Grid& b);
Grid operator-(const Grid& a, const Grid& b);
Grid operator*(double s, const Grid& a);
Grid operator-(const Grid& a);

/// Elementwise f(a_i).
template <class F>
Grid map(const Grid& a, F&& f) {
  Grid out = Grid::zeros_like(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return out;
}

/// Elementwise f(a_i, b_i); shapes must match.
template <class F>
Grid zip(const Grid& a, const Grid& b, F&& f) {
  require_same_shape(a, b, "zip");
  Grid out = Grid::zeros_like(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return out;
}

}  // namespace lbreg
