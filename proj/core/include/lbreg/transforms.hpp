#pragma once

#include <cstddef>
#include <vector>

#include "lbreg/grid.hpp"

namespace lbreg {

/// Separable orthonormal 2D DCT-II with precomputed cosine bases.
///
/// Each 1D transform uses scale sqrt(1/n) for the DC row and sqrt(2/n)
/// otherwise, so the 2D transform is orthogonal and its inverse (DCT-III) is
/// its transpose. Cost is O(rows*cols*(rows+cols)) per call, which is fine at
/// the grid sizes this library targets (<= 128x128).
class DctPlan {
 public:
  DctPlan(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Shape shape() const { return {rows_, cols_}; }

  Grid forward(const Grid& x) const;
  Grid inverse(const Grid& c) const;

 private:
  void check(const Grid& g, const char* context) const;

  std::size_t rows_;
  std::size_t cols_;
  // Row-major n x n bases: basis[k*n + i] = s_k cos(pi (2i+1) k / 2n).
  std::vector<double> row_basis_;  // rows x rows, acts along columns of the grid
  std::vector<double> col_basis_;  // cols x cols, acts along each grid row
};

Grid dct2(const DctPlan& plan, const Grid& x);
Grid idct2(const DctPlan& plan, const Grid& c);

/// Forward differences with a replicate (Neumann) far boundary.
/// first: differences along each row (column index c -> c+1);
/// second: differences along each column (row index r -> r+1).
GridPair gradient(const Grid& u);

/// Negative adjoint of gradient: inner(gradient(u), g) == -inner(u, divergence(g)).
Grid divergence(const GridPair& g);

/// L = gradient^T gradient on a grid with Neumann boundary, diagonalised by
/// the DCT-II with eigenvalues (2-2cos(pi i/rows)) + (2-2cos(pi j/cols)).
class NeumannLaplacian {
 public:
  NeumannLaplacian(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return plan_.rows(); }
  std::size_t cols() const { return plan_.cols(); }
  Shape shape() const { return plan_.shape(); }

  double eigenvalue(std::size_t i, std::size_t j) const { return eigenvalues_(i, j); }
  const Grid& eigenvalues() const { return eigenvalues_; }
  double max_eigenvalue() const { return max_eigenvalue_; }
  const DctPlan& plan() const { return plan_; }

 private:
  DctPlan plan_;
  Grid eigenvalues_;
  double max_eigenvalue_;
};

/// -divergence(gradient(u)) by finite differences.
Grid apply_laplacian(const NeumannLaplacian& lap, const Grid& u);

/// idct2(lambda * dct2(u)); agrees with apply_laplacian up to rounding.
Grid apply_laplacian_spectral(const NeumannLaplacian& lap, const Grid& u);

/// Solves (I + alpha L) u = p exactly in the DCT basis. Requires alpha >= 0.
Grid solve_identity_plus_alpha_laplacian(const NeumannLaplacian& lap, double alpha, const Grid& p);

}  // namespace lbreg
