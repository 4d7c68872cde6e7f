#include "cmseq/covariance_model.hpp"

#include <cmath>
#include <string>

#include "cmseq/errors.hpp"
#include "cmseq/random_stream.hpp"
#include "support_fill.hpp"

namespace cmseq {

namespace {

void check_shape(std::size_t horizon, std::size_t block_dim, std::size_t rows) {
  if (horizon < 1) throw DomainError("horizon N must be at least 1");
  if (block_dim < 1) throw DomainError("block dimension d must be at least 1");
  if (rows != (horizon + 1) * block_dim) {
    throw_shape("covariance dimension " + std::to_string(rows) + " != (N+1)*d = " +
                std::to_string((horizon + 1) * block_dim));
  }
}

}  // namespace

BlockCovariance::BlockCovariance(std::size_t horizon, std::size_t block_dim, const Matrix& matrix)
    : BlockCovariance(horizon, block_dim, SPDMatrix(matrix)) {}

BlockCovariance::BlockCovariance(std::size_t horizon, std::size_t block_dim, SPDMatrix matrix)
    : horizon_(horizon), block_dim_(block_dim), matrix_(std::move(matrix)) {
  check_shape(horizon_, block_dim_, matrix_.dim());
}

Matrix BlockCovariance::block(std::size_t k1, std::size_t k2) const {
  if (k1 > horizon_ || k2 > horizon_) {
    throw IndexError("time index (" + std::to_string(k1) + ", " + std::to_string(k2) +
                     ") outside [0, " + std::to_string(horizon_) + "]");
  }
  return matrix().block(k1 * block_dim_, k2 * block_dim_, block_dim_, block_dim_);
}

BlockCovariance BlockCovariance::scaled(double alpha) const {
  return BlockCovariance(horizon_, block_dim_, alpha * matrix());
}

BlockCovariance ar1_covariance(std::size_t horizon, double rho, double variance) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("AR(1) coefficient must satisfy |rho| < 1");
  if (!(variance > 0.0)) throw DomainError("AR(1) variance must be positive");
  const std::size_t n = horizon + 1;
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto lag = static_cast<int>(i > j ? i - j : j - i);
      c(i, j) = variance * std::pow(rho, lag);
    }
  }
  return BlockCovariance(horizon, 1, c);
}

BlockCovariance random_spd_covariance(std::size_t horizon, std::size_t block_dim,
                                      std::uint64_t seed) {
  RandomStream stream(seed);
  const Matrix precision = detail::random_precision_on_support(
      horizon, block_dim, [](std::size_t, std::size_t) { return true; }, stream);
  const SPDMatrix p(precision);
  return BlockCovariance(horizon, block_dim, invert_spd(p));
}

std::vector<std::size_t> block_indices(std::size_t k, std::size_t block_dim) {
  std::vector<std::size_t> idx(block_dim);
  for (std::size_t i = 0; i < block_dim; ++i) idx[i] = k * block_dim + i;
  return idx;
}

}  // namespace cmseq
