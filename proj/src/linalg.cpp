#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace opca {

namespace {

void check_finite(const std::vector<double>& entries) {
  for (double v : entries) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, "matrix entries must be finite");
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    fail(ErrorCode::InvalidArgument, "entry count does not match matrix shape");
  }
  check_finite(entries_);
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t d = n == 0 ? 0 : rows.front().size();
  std::vector<double> entries;
  entries.reserve(n * d);
  for (const auto& r : rows) {
    if (r.size() != d) {
      fail(ErrorCode::InvalidArgument, "rows must all have the same length");
    }
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Matrix(n, d, std::move(entries));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(std::span<const double> a) { return dot(a, a); }

double frobenius_sq(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return s;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    out.data()[i] = a.data()[i] - b.data()[i];
  }
  return out;
}

Frame::Frame(Matrix vectors, double ortho_tolerance)
    : vectors_(std::move(vectors)), ortho_tolerance_(ortho_tolerance) {
  if (ortho_tolerance_ <= 0.0) {
    fail(ErrorCode::InvalidArgument, "frame tolerance must be positive");
  }
  const std::size_t q = vectors_.rows();
  const std::size_t d = vectors_.cols();
  if (q > d) {
    fail(ErrorCode::InvalidArgument, "frame cannot have more rows than columns");
  }
  for (std::size_t i = 0; i < q; ++i) {
    if (std::fabs(norm_sq(vectors_.row(i)) - 1.0) > ortho_tolerance_) {
      fail(ErrorCode::InvalidArgument, "frame row " + std::to_string(i) + " is not unit length");
    }
    for (std::size_t j = i + 1; j < q; ++j) {
      if (std::fabs(dot(vectors_.row(i), vectors_.row(j))) > ortho_tolerance_) {
        fail(ErrorCode::InvalidArgument, "frame rows " + std::to_string(i) + " and " +
                                             std::to_string(j) + " are not orthogonal");
      }
    }
  }
}

Frame Frame::standard_basis(std::size_t count, std::size_t dim) {
  if (count > dim) {
    fail(ErrorCode::InvalidArgument, "frame cannot have more rows than columns");
  }
  Matrix m(count, dim);
  for (std::size_t i = 0; i < count; ++i) m(i, i) = 1.0;
  return Frame(std::move(m), 1e-10);
}

Frame orthonormalize(const Matrix& raw, double tol) {
  if (tol <= 0.0) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  const std::size_t q = raw.rows();
  const std::size_t d = raw.cols();
  if (q > d) {
    fail(ErrorCode::InvalidArgument, "cannot orthonormalize more rows than columns");
  }
  Matrix u = raw;
  for (std::size_t i = 0; i < q; ++i) {
    auto vi = u.row(i);
    // Two elimination passes keep the result orthogonal well below the frame
    // tolerance even for poorly conditioned inputs.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        const double coeff = dot(vi, u.row(j));
        auto uj = u.row(j);
        for (std::size_t l = 0; l < d; ++l) vi[l] -= coeff * uj[l];
      }
    }
    const double norm = std::sqrt(norm_sq(vi));
    if (norm < tol) {
      fail(ErrorCode::RankDeficient,
           "pivot norm below tolerance at row " + std::to_string(i));
    }
    for (std::size_t l = 0; l < d; ++l) vi[l] /= norm;
  }
  return Frame(std::move(u), 1e-10);
}

EigenDecomposition sym_eigen(const Matrix& a) {
  const std::size_t d = a.rows();
  if (a.cols() != d) {
    fail(ErrorCode::NotSymmetric, "matrix is not square");
  }
  const double scale = std::sqrt(frobenius_sq(a));
  const double sym_tol = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::fabs(a(i, j) - a(j, i)) > sym_tol) {
        fail(ErrorCode::NotSymmetric, "matrix is not symmetric");
      }
    }
  }

  // Work on a symmetrized copy; v accumulates the rotations (columns end up
  // as eigenvectors).
  Matrix w(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) w(i, j) = 0.5 * (a(i, j) + a(j, i));
  }
  Matrix v = Matrix::identity(d);

  const double threshold = 1e-12 * scale;
  constexpr int kMaxSweeps = 100;
  bool converged = d < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = w(p, q);
        if (std::fabs(apq) <= threshold) continue;
        ++rotations;
        const double app = w(p, p);
        const double aqq = w(q, q);
        const double theta = 0.5 * (aqq - app) / apq;
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        w(p, p) = app - t * apq;
        w(q, q) = aqq + t * apq;
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        for (std::size_t l = 0; l < d; ++l) {
          if (l == p || l == q) continue;
          const double wlp = w(l, p);
          const double wlq = w(l, q);
          w(l, p) = wlp - s * (wlq + tau * wlp);
          w(p, l) = w(l, p);
          w(l, q) = wlq + s * (wlp - tau * wlq);
          w(q, l) = w(l, q);
        }
        for (std::size_t l = 0; l < d; ++l) {
          const double vlp = v(l, p);
          const double vlq = v(l, q);
          v(l, p) = vlp - s * (vlq + tau * vlp);
          v(l, q) = vlq + s * (vlp - tau * vlq);
        }
      }
    }
    if (rotations == 0) converged = true;
  }
  if (!converged) {
    fail(ErrorCode::NoConvergence, "Jacobi sweep cap reached before convergence");
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return w(x, x) > w(y, y); });

  EigenDecomposition out;
  out.values.resize(d);
  out.vectors = Matrix(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    out.values[i] = w(order[i], order[i]);
    for (std::size_t l = 0; l < d; ++l) out.vectors(i, l) = v(l, order[i]);
  }
  return out;
}

std::vector<double> project_onto(const Frame& basis, std::span<const double> x) {
  if (x.size() != basis.dim()) {
    fail(ErrorCode::DimensionMismatch, "vector length does not match frame dimension");
  }
  std::vector<double> proj(x.size(), 0.0);
  for (std::size_t i = 0; i < basis.count(); ++i) {
    auto b = basis.row(i);
    const double coeff = dot(b, x);
    for (std::size_t l = 0; l < x.size(); ++l) proj[l] += coeff * b[l];
  }
  return proj;
}

double residual_sq(const Frame& basis, std::span<const double> x) {
  const auto proj = project_onto(basis, x);
  double s = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    const double diff = x[l] - proj[l];
    s += diff * diff;
  }
  return s;
}

SubspaceFit best_fit_subspace(const Matrix& points, std::size_t rank) {
  const std::size_t d = points.cols();
  if (rank > d) {
    fail(ErrorCode::InvalidArgument, "requested rank exceeds the ambient dimension");
  }
  Matrix scatter(d, d);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    auto m = points.row(i);
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p; q < d; ++q) scatter(p, q) += m[p] * m[q];
    }
  }
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = 0; q < p; ++q) scatter(p, q) = scatter(q, p);
  }

  const EigenDecomposition eig = sym_eigen(scatter);
  Matrix rows(rank, d);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t l = 0; l < d; ++l) rows(i, l) = eig.vectors(i, l);
  }
  Frame basis(std::move(rows), 1e-10);

  double residual = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    residual += residual_sq(basis, points.row(i));
  }
  return {std::move(basis), residual};
}

}  // namespace opca
