#include "cmseq/gaussian_core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cmseq/errors.hpp"
#include "cmseq/kernels.hpp"

namespace cmseq {

double pd_tolerance(const Matrix& m) {
  return static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() *
         m.max_diagonal();
}

Matrix cholesky(const Matrix& m) {
  if (!m.is_square()) throw_shape("cholesky requires a square matrix");
  const std::size_t n = m.rows();
  const double tol = pd_tolerance(m);
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* lj = l.row(j).data();
    const double pivot = m(j, j) - kernels::dot(lj, lj, j);
    if (!(pivot > tol)) {
      throw NotPositiveDefinite("matrix is not positive definite (pivot " + std::to_string(j) +
                                " = " + std::to_string(pivot) + ")");
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      l(i, j) = (m(i, j) - kernels::dot(l.row(i).data(), lj, j)) / ljj;
    }
  }
  return l;
}

SPDMatrix::SPDMatrix(const Matrix& m) {
  if (!m.is_square()) throw_shape("covariance must be square");
  if (m.rows() == 0) throw_shape("covariance must have positive dimension");
  for (double v : m.entries()) {
    if (!std::isfinite(v)) throw DomainError("covariance has a non-finite entry");
  }
  matrix_ = m.symmetrized();
  factor_ = cholesky(matrix_);
}

Matrix cholesky(const SPDMatrix& m) { return m.factor(); }

Matrix cholesky_solve_rows(const Matrix& lower, Matrix rhs) {
  const std::size_t n = lower.rows();
  if (rhs.cols() != n) throw_shape("cholesky_solve_rows: rhs width != factor dimension");
  for (std::size_t r = 0; r < rhs.rows(); ++r) {
    double* x = rhs.row(r).data();
    // L y = b
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = (x[i] - kernels::dot(lower.row(i).data(), x, i)) / lower(i, i);
    }
    // L^T x = y, column-oriented so each update reads a contiguous row of L.
    for (std::size_t j = n; j-- > 0;) {
      x[j] /= lower(j, j);
      kernels::axpy(-x[j], lower.row(j).data(), x, j);
    }
  }
  return rhs;
}

SPDMatrix invert_spd(const SPDMatrix& m) {
  return SPDMatrix(cholesky_solve_rows(m.factor(), Matrix::identity(m.dim())));
}

namespace {

void check_index_sets(std::size_t dim, std::span<const std::size_t> target,
                      std::span<const std::size_t> given) {
  std::vector<char> seen(dim, 0);
  auto mark = [&](std::span<const std::size_t> set) {
    for (std::size_t i : set) {
      if (i >= dim) throw IndexError("index " + std::to_string(i) + " out of range");
      if (seen[i]) throw IndexError("index " + std::to_string(i) + " repeated or overlapping");
      seen[i] = 1;
    }
  };
  mark(target);
  mark(given);
  if (target.empty()) throw IndexError("empty target index set");
}

}  // namespace

GaussianConditional condition(const SPDMatrix& joint, std::span<const std::size_t> target,
                              std::span<const std::size_t> given) {
  check_index_sets(joint.dim(), target, given);
  const Matrix& c = joint.matrix();
  Matrix c_t = c.gather(target, target);
  if (given.empty()) {
    return {Matrix(target.size(), 0), SPDMatrix(c_t)};
  }
  const Matrix c_g = c.gather(given, given);
  const Matrix c_tg = c.gather(target, given);
  const Matrix l_g = cholesky(c_g);
  Matrix coeffs = cholesky_solve_rows(l_g, c_tg);
  c_t -= coeffs * c_tg.transpose();
  return {std::move(coeffs), SPDMatrix(c_t)};
}

std::vector<double> sample_mvn(std::span<const double> mean, const SPDMatrix& cov,
                               RandomStream& stream) {
  const std::size_t n = cov.dim();
  if (mean.size() != n) throw_shape("sample_mvn: mean dimension != covariance dimension");
  std::vector<double> z(n);
  stream.fill_normal(z);
  std::vector<double> x(mean.begin(), mean.end());
  const Matrix& l = cov.factor();
  for (std::size_t i = 0; i < n; ++i) x[i] += kernels::dot(l.row(i).data(), z.data(), i + 1);
  return x;
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  if (!m.is_square()) throw_shape("eigenvalues require a square matrix");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue iteration did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue(const Matrix& m) { return symmetric_eigenvalues(m).front(); }

}  // namespace cmseq
