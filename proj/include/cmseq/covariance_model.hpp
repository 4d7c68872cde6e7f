#pragma once

#include <cstddef>
#include <cstdint>

#include "cmseq/gaussian_core.hpp"
#include "cmseq/matrix.hpp"

namespace cmseq {

// Conditioning time of a CM class: First is c = 0 (CM_F), Last is c = N (CM_L).
enum class Boundary { First, Last };

// Joint covariance of [x_0, ..., x_N] with every x_k of dimension d.
// Block (k1, k2) is Cov(x_k1, x_k2).
class BlockCovariance {
 public:
  // Throws DomainError for N < 1 or d < 1, ShapeMismatch when the matrix is
  // not (N+1)d square, NotPositiveDefinite when it is singular.
  BlockCovariance(std::size_t horizon, std::size_t block_dim, const Matrix& matrix);
  BlockCovariance(std::size_t horizon, std::size_t block_dim, SPDMatrix matrix);

  std::size_t horizon() const { return horizon_; }
  std::size_t block_dim() const { return block_dim_; }
  std::size_t steps() const { return horizon_ + 1; }
  const SPDMatrix& spd() const { return matrix_; }
  const Matrix& matrix() const { return matrix_.matrix(); }

  // C_{k1,k2}; throws IndexError outside [0, N].
  Matrix block(std::size_t k1, std::size_t k2) const;

  std::size_t time_of(Boundary b) const { return b == Boundary::First ? 0 : horizon_; }

  BlockCovariance scaled(double alpha) const;

 private:
  std::size_t horizon_;
  std::size_t block_dim_;
  SPDMatrix matrix_;
};

// Scalar covariance variance * rho^|k1-k2| over [0, N].
// Throws DomainError for |rho| >= 1 or variance <= 0.
BlockCovariance ar1_covariance(std::size_t horizon, double rho, double variance = 1.0);

// Covariance whose inverse is a random dense positive definite matrix with
// every off-diagonal entry bounded away from zero.
BlockCovariance random_spd_covariance(std::size_t horizon, std::size_t block_dim,
                                      std::uint64_t seed);

// Scalar coordinates of block k: k*d, ..., k*d + d - 1.
std::vector<std::size_t> block_indices(std::size_t k, std::size_t block_dim);

}  // namespace cmseq
