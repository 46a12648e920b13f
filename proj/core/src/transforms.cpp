#include "lbreg/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lbreg {
namespace {

std::vector<double> dct_basis(std::size_t n) {
  std::vector<double> b(n * n);
  const double dc = std::sqrt(1.0 / static_cast<double>(n));
  const double ac = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double s = k == 0 ? dc : ac;
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = std::numbers::pi * static_cast<double>((2 * i + 1) * k) /
                         static_cast<double>(2 * n);
      b[k * n + i] = s * std::cos(arg);
    }
  }
  return b;
}

// out(r, k) = sum_i B(k, i) in(r, i)  (transpose=false)
// out(r, i) = sum_k B(k, i) in(r, k)  (transpose=true)
void along_rows(const Grid& in, Grid& out, const std::vector<double>& basis, bool transpose) {
  const std::size_t n = in.cols();
  for (std::size_t r = 0; r < in.rows(); ++r) {
    const double* src = in.values().data() + r * n;
    double* dst = out.values().data() + r * n;
    std::fill(dst, dst + n, 0.0);
    if (!transpose) {
      for (std::size_t k = 0; k < n; ++k) {
        const double* bk = basis.data() + k * n;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += bk[i] * src[i];
        dst[k] = acc;
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const double* bk = basis.data() + k * n;
        const double s = src[k];
        for (std::size_t i = 0; i < n; ++i) dst[i] += bk[i] * s;
      }
    }
  }
}

// Same as along_rows, applied down each column.
void along_cols(const Grid& in, Grid& out, const std::vector<double>& basis, bool transpose) {
  const std::size_t m = in.rows();
  const std::size_t n = in.cols();
  const double* src = in.values().data();
  double* dst = out.values().data();
  std::fill(dst, dst + m * n, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const double b = basis[k * m + i];
      const std::size_t to = (transpose ? i : k) * n;
      const std::size_t from = (transpose ? k : i) * n;
      for (std::size_t c = 0; c < n; ++c) dst[to + c] += b * src[from + c];
    }
  }
}

}  // namespace

DctPlan::DctPlan(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_basis_(dct_basis(rows)), col_basis_(dct_basis(cols)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("DctPlan: dimensions must be positive");
}

void DctPlan::check(const Grid& g, const char* context) const {
  if (g.shape() != shape()) {
    throw ShapeError(std::string(context) + ": grid " + to_string(g.shape()) +
                     " does not match plan " + to_string(shape()));
  }
}

Grid DctPlan::forward(const Grid& x) const {
  check(x, "dct2");
  Grid tmp = Grid::zeros_like(x);
  Grid out = Grid::zeros_like(x);
  along_rows(x, tmp, col_basis_, false);
  along_cols(tmp, out, row_basis_, false);
  return out;
}

Grid DctPlan::inverse(const Grid& c) const {
  check(c, "idct2");
  Grid tmp = Grid::zeros_like(c);
  Grid out = Grid::zeros_like(c);
  along_cols(c, tmp, row_basis_, true);
  along_rows(tmp, out, col_basis_, true);
  return out;
}

Grid dct2(const DctPlan& plan, const Grid& x) { return plan.forward(x); }
Grid idct2(const DctPlan& plan, const Grid& c) { return plan.inverse(c); }

GridPair gradient(const Grid& u) {
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  Grid dx = Grid::zeros_like(u);
  Grid dy = Grid::zeros_like(u);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c + 1 < n) dx(r, c) = u(r, c + 1) - u(r, c);
      if (r + 1 < m) dy(r, c) = u(r + 1, c) - u(r, c);
    }
  }
  return {std::move(dx), std::move(dy)};
}

Grid divergence(const GridPair& g) {
  const std::size_t m = g.first.rows();
  const std::size_t n = g.first.cols();
  Grid out = Grid::zeros_like(g.first);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double v = 0.0;
      if (c + 1 < n) v += g.first(r, c);
      if (c > 0) v -= g.first(r, c - 1);
      if (r + 1 < m) v += g.second(r, c);
      if (r > 0) v -= g.second(r - 1, c);
      out(r, c) = v;
    }
  }
  return out;
}

NeumannLaplacian::NeumannLaplacian(std::size_t rows, std::size_t cols)
    : plan_(rows, cols), eigenvalues_(rows, cols), max_eigenvalue_(0.0) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double li = 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(i) /
                                           static_cast<double>(rows));
    for (std::size_t j = 0; j < cols; ++j) {
      const double lj = 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(j) /
                                             static_cast<double>(cols));
      eigenvalues_(i, j) = li + lj;
      max_eigenvalue_ = std::max(max_eigenvalue_, li + lj);
    }
  }
}

Grid apply_laplacian(const NeumannLaplacian& lap, const Grid& u) {
  if (u.shape() != lap.shape()) throw ShapeError("apply_laplacian: shape mismatch");
  return -divergence(gradient(u));
}

Grid apply_laplacian_spectral(const NeumannLaplacian& lap, const Grid& u) {
  Grid c = lap.plan().forward(u);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= lap.eigenvalues()[i];
  return lap.plan().inverse(c);
}

Grid solve_identity_plus_alpha_laplacian(const NeumannLaplacian& lap, double alpha, const Grid& p) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("solve_identity_plus_alpha_laplacian: alpha must be finite and >= 0");
  }
  if (alpha == 0.0) {
    if (p.shape() != lap.shape()) throw ShapeError("solve_identity_plus_alpha_laplacian: shape mismatch");
    return p;
  }
  Grid c = lap.plan().forward(p);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] /= 1.0 + alpha * lap.eigenvalues()[i];
  return lap.plan().inverse(c);
}

}  // namespace lbreg
