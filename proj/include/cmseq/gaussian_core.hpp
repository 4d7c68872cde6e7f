#pragma once

// Dense symmetric-matrix numerics for nonsingular Gaussian vectors:
// positive-definiteness validation, Cholesky factorization, inversion,
// conditioning, and multivariate normal sampling.

#include <cstddef>
#include <span>
#include <vector>

#include "cmseq/matrix.hpp"
#include "cmseq/random_stream.hpp"

namespace cmseq {

// Pivot threshold for the Cholesky positive-definiteness test:
// dim * machine epsilon * max diagonal entry.
double pd_tolerance(const Matrix& m);

// Lower-triangular L with L * L^T = m. Only the lower triangle of m is read.
// Throws NotPositiveDefinite when a pivot is <= pd_tolerance(m).
Matrix cholesky(const Matrix& m);

// Symmetric positive definite matrix. The input is symmetrized on
// construction and its Cholesky factor is kept alongside it.
class SPDMatrix {
 public:
  explicit SPDMatrix(const Matrix& m);

  static SPDMatrix identity(std::size_t n) { return SPDMatrix(Matrix::identity(n)); }

  std::size_t dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& factor() const { return factor_; }
  double operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

 private:
  Matrix matrix_;
  Matrix factor_;
};

Matrix cholesky(const SPDMatrix& m);

// Each row r of `rhs` is replaced by the solution x of (L L^T) x = r.
// Equivalently returns rhs * (L L^T)^{-1} for symmetric L L^T.
Matrix cholesky_solve_rows(const Matrix& lower, Matrix rhs);

SPDMatrix invert_spd(const SPDMatrix& m);

// Law of x_target given x_given for a zero-mean joint Gaussian:
// E[x_t | x_g] = coefficients * x_g, Cov(x_t | x_g) = cond_cov.
struct GaussianConditional {
  Matrix coefficients;
  SPDMatrix cond_cov;
};

// Scalar-coordinate conditioning. Index sets must be disjoint, in range and
// free of duplicates. An empty `given` yields the target marginal.
GaussianConditional condition(const SPDMatrix& joint, std::span<const std::size_t> target,
                              std::span<const std::size_t> given);

// mean + L z with z drawn from `stream`.
std::vector<double> sample_mvn(std::span<const double> mean, const SPDMatrix& cov,
                               RandomStream& stream);

// Ascending eigenvalues of a symmetric matrix.
std::vector<double> symmetric_eigenvalues(const Matrix& m);
double min_eigenvalue(const Matrix& m);

}  // namespace cmseq
