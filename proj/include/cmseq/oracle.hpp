#pragma once

// Definition-level checks computed directly from the joint covariance by
// Gaussian conditioning. They never look at the inverse covariance, so they
// serve as the ground truth for the pattern classifier.

#include <cstddef>
#include <string_view>
#include <utility>

#include "cmseq/covariance_model.hpp"

namespace cmseq {

enum class Property { CmF, CmL, Markov, Reciprocal };

std::string_view property_name(Property p);

struct OracleReport {
  Property property = Property::Markov;
  bool holds = true;
  double worst_violation = 0.0;
  // (j, k) for the conditional-expectation checks, (k1, k2) for reciprocity.
  std::pair<std::size_t, std::size_t> witness{0, 0};
  double tolerance = 0.0;
};

inline constexpr double kDefaultOracleTolerance = 1e-8;

// For every j < k (k != c): E[x_k | x_0..x_j, x_c] must put zero weight on
// x_0..x_{j-1} (other than x_c), match E[x_k | x_j, x_c] on (x_j, x_c), and the
// two conditional covariances must coincide.
OracleReport cm_oracle(const BlockCovariance& cov, Boundary boundary,
                       double tol = kDefaultOracleTolerance);

// For every j < k: E[x_k | x_0..x_j] puts zero weight on x_0..x_{j-1}.
OracleReport markov_oracle(const BlockCovariance& cov, double tol = kDefaultOracleTolerance);

// For every k1 < k2: given (x_k1, x_k2), the states strictly inside (k1, k2)
// are uncorrelated with the states outside [k1, k2]. Measured on the
// unit-diagonal rescaling of the covariance so the test is scale free.
OracleReport reciprocal_oracle(const BlockCovariance& cov, double tol = kDefaultOracleTolerance);

OracleReport run_oracle(const BlockCovariance& cov, Property property,
                        double tol = kDefaultOracleTolerance);

}  // namespace cmseq
