#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "error.hpp"

namespace opca {

// Dense row-major matrix. Entries are checked to be finite when constructed
// from user data; the shape is fixed after construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }

  const std::vector<double>& data() const { return entries_; }
  std::vector<double>& data() { return entries_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> a);

// Sum of squared entries.
double frobenius_sq(const Matrix& m);

// Entrywise a - b; shapes must match.
Matrix subtract(const Matrix& a, const Matrix& b);

// q orthonormal rows in d-dimensional space, q <= d. The constructor verifies
// unit length and pairwise orthogonality against the stated tolerance, so a
// Frame in hand is always usable as-is.
class Frame {
 public:
  Frame(Matrix vectors, double ortho_tolerance);

  static Frame standard_basis(std::size_t count, std::size_t dim);

  std::size_t count() const { return vectors_.rows(); }
  std::size_t dim() const { return vectors_.cols(); }
  const Matrix& vectors() const { return vectors_; }
  std::span<const double> row(std::size_t i) const { return vectors_.row(i); }
  double ortho_tolerance() const { return ortho_tolerance_; }

 private:
  Matrix vectors_;
  double ortho_tolerance_;
};

// Modified Gram-Schmidt with a re-orthogonalization pass. Raises RankDeficient
// when a pivot norm drops below tol.
Frame orthonormalize(const Matrix& raw, double tol);

struct EigenDecomposition {
  std::vector<double> values;  // descending; ties keep pre-sort order
  Matrix vectors;              // row i is the unit eigenvector for values[i]
};

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Convergence threshold is 1e-12 * ||A||_F on off-diagonal magnitudes, capped
// at 100 sweeps (NoConvergence beyond that). Input must be symmetric within
// 1e-12 relative to ||A||_F.
EigenDecomposition sym_eigen(const Matrix& a);

struct SubspaceFit {
  Frame basis;      // rank orthonormal rows
  double residual;  // sum of squared distances of the points to span(basis)
};

// Best rank-dimensional subspace through the origin for the given points,
// i.e. the span of the top eigenvectors of the scatter matrix sum_i m_i^T m_i.
// The residual is accumulated from explicit projection differences, which
// stays accurate even when the scatter entries dwarf the residual itself; it
// agrees with the tail eigenvalue sum of the scatter.
SubspaceFit best_fit_subspace(const Matrix& points, std::size_t rank);

// Coordinates of x projected onto span(basis).
std::vector<double> project_onto(const Frame& basis, std::span<const double> x);

// Squared distance from x to span(basis), via the projection difference.
double residual_sq(const Frame& basis, std::span<const double> x);

}  // namespace opca
