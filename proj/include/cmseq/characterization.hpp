#pragma once

// Classification of nonsingular Gaussian sequences by the block-sparsity
// pattern of the inverse covariance.
//
//   Markov      <=> C^{-1} block tridiagonal
//   Reciprocal  <=> C^{-1} cyclic block tridiagonal (adds corners (0,N), (N,0))
//   CM_L        <=> tridiagonal plus a full last block row/column
//   CM_F        <=> tridiagonal plus a full first block row/column
//
// The supports are nested, so the labels satisfy
// markov => reciprocal => (cm_l && cm_f).

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "cmseq/covariance_model.hpp"
#include "cmseq/gaussian_core.hpp"

namespace cmseq {

enum class Form { Tridiagonal, CyclicTridiagonal, CmL, CmF };

inline constexpr Form kAllForms[] = {Form::Tridiagonal, Form::CyclicTridiagonal, Form::CmL,
                                     Form::CmF};

std::string_view form_name(Form form);

// Whether block (k1, k2) may be nonzero for `form` over [0, N].
bool in_support(Form form, std::size_t horizon, std::size_t k1, std::size_t k2);

struct PatternResult {
  bool matches = true;
  // Largest Frobenius norm of an off-support block, and where it sits.
  double max_off_pattern = 0.0;
  std::size_t worst_k1 = 0;
  std::size_t worst_k2 = 0;
  // Blocks with norm <= threshold count as structural zeros.
  double threshold = 0.0;
};

// Block-level support test with threshold tol * ||m||_F / (N+1).
// Throws ShapeMismatch unless m is (N+1)d square.
PatternResult pattern_check(const Matrix& m, std::size_t horizon, std::size_t block_dim, Form form,
                            double tol);

inline constexpr double kDefaultClassifyTolerance = 1e-9;

struct ClassLabels {
  bool markov = false;
  bool reciprocal = false;
  bool cm_l = false;
  bool cm_f = false;
  PatternResult markov_violation;
  PatternResult reciprocal_violation;
  PatternResult cm_l_violation;
  PatternResult cm_f_violation;
  double tolerance_used = kDefaultClassifyTolerance;

  bool label(Form form) const;
  const PatternResult& violation(Form form) const;
};

ClassLabels classify(const BlockCovariance& cov, double tol = kDefaultClassifyTolerance);

// Covariance whose inverse is a random positive definite matrix with every
// block on the support of `form` populated and every block off it zero.
BlockCovariance random_cm_instance(std::size_t horizon, std::size_t block_dim, Form form,
                                   std::uint64_t seed);

}  // namespace cmseq
