#include <doctest.h>

#include "cmseq/covariance_model.hpp"
#include "cmseq/errors.hpp"
#include "test_support.hpp"

using namespace cmseq;

TEST_CASE("block accessor") {
  const BlockCovariance id(3, 2, Matrix::identity(8));
  CHECK(id.block(1, 1) == Matrix::identity(2));
  CHECK(id.block(0, 3) == Matrix::zeros(2, 2));
  CHECK_THROWS_AS(id.block(0, 4), IndexError);

  const BlockCovariance ar = ar1_covariance(2, 0.5);
  CHECK(ar.block(0, 2)(0, 0) == doctest::Approx(0.25));
}

TEST_CASE("blocks reassemble the stored matrix exactly") {
  const BlockCovariance cov = random_spd_covariance(4, 3, 1);
  Matrix rebuilt(15, 15);
  for (std::size_t a = 0; a <= 4; ++a)
    for (std::size_t b = 0; b <= 4; ++b) {
      rebuilt.set_block(a * 3, b * 3, cov.block(a, b));
      CHECK(cov.block(a, b) == cov.block(b, a).transpose());
    }
  CHECK(rebuilt == cov.matrix());
}

TEST_CASE("ar1_covariance") {
  CHECK(ar1_covariance(2, 0.0, 3.0).matrix() == 3.0 * Matrix::identity(3));
  CHECK(cmseq::testing::max_abs_diff(ar1_covariance(2, 0.5).matrix(),
                                     Matrix{{1, .5, .25}, {.5, 1, .5}, {.25, .5, 1}}) < 1e-15);
  CHECK(cmseq::testing::max_abs_diff(ar1_covariance(1, 0.9, 2.0).matrix(),
                                     Matrix{{2, 1.8}, {1.8, 2}}) < 1e-15);
  CHECK_THROWS_AS(ar1_covariance(2, 1.0), DomainError);
  CHECK_THROWS_AS(ar1_covariance(2, -1.5), DomainError);
  CHECK_THROWS_AS(ar1_covariance(2, 0.5, 0.0), DomainError);
  for (double rho : {-0.99, -0.5, 0.0, 0.3, 0.95, 0.999}) {
    CHECK_NOTHROW(ar1_covariance(16, rho, 1.7));
  }
}

TEST_CASE("construction validates horizon, shape and definiteness") {
  CHECK_THROWS_AS(BlockCovariance(0, 1, Matrix::identity(1)), DomainError);
  CHECK_THROWS_AS(BlockCovariance(2, 2, Matrix::identity(5)), ShapeMismatch);
  CHECK_THROWS_AS(BlockCovariance(1, 1, Matrix{{1, 2}, {2, 1}}), NotPositiveDefinite);
}
