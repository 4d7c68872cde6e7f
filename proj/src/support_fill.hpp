#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "cmseq/gaussian_core.hpp"
#include "cmseq/matrix.hpp"
#include "cmseq/random_stream.hpp"

namespace cmseq::detail {

// Random symmetric (N+1)d matrix whose blocks are nonzero exactly where
// `allowed(k1, k2)` holds. Off-diagonal entries have magnitude in [0.3, 1]
// with random sign; the spectrum is then shifted so the smallest eigenvalue
// is 1.
template <class Allowed>
Matrix random_precision_on_support(std::size_t horizon, std::size_t block_dim, Allowed allowed,
                                   RandomStream& stream) {
  const std::size_t steps = horizon + 1;
  const std::size_t n = steps * block_dim;
  Matrix p(n, n);
  auto draw = [&] {
    const double mag = stream.uniform(0.3, 1.0);
    return stream.uniform(0.0, 1.0) < 0.5 ? -mag : mag;
  };
  for (std::size_t k1 = 0; k1 < steps; ++k1) {
    for (std::size_t k2 = k1; k2 < steps; ++k2) {
      if (!allowed(k1, k2)) continue;
      for (std::size_t a = 0; a < block_dim; ++a) {
        for (std::size_t b = 0; b < block_dim; ++b) {
          const std::size_t i = k1 * block_dim + a;
          const std::size_t j = k2 * block_dim + b;
          if (j < i || (i == j)) continue;
          const double v = draw();
          p(i, j) = v;
          p(j, i) = v;
        }
      }
    }
  }
  const double shift = 1.0 - min_eigenvalue(p);
  for (std::size_t i = 0; i < n; ++i) p(i, i) += shift;
  return p;
}

}  // namespace cmseq::detail
