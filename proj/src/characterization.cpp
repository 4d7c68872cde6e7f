#include "cmseq/characterization.hpp"

#include <stdexcept>
#include <string>

#include "cmseq/errors.hpp"
#include "cmseq/random_stream.hpp"
#include "support_fill.hpp"

namespace cmseq {

std::string_view form_name(Form form) {
  switch (form) {
    case Form::Tridiagonal: return "tridiagonal";
    case Form::CyclicTridiagonal: return "cyclic-tridiagonal";
    case Form::CmL: return "cm_l";
    case Form::CmF: return "cm_f";
  }
  return "?";
}

bool in_support(Form form, std::size_t horizon, std::size_t k1, std::size_t k2) {
  const std::size_t gap = k1 > k2 ? k1 - k2 : k2 - k1;
  if (gap <= 1) return true;
  switch (form) {
    case Form::Tridiagonal: return false;
    case Form::CyclicTridiagonal: return (k1 == 0 && k2 == horizon) || (k1 == horizon && k2 == 0);
    case Form::CmL: return k1 == horizon || k2 == horizon;
    case Form::CmF: return k1 == 0 || k2 == 0;
  }
  return false;
}

PatternResult pattern_check(const Matrix& m, std::size_t horizon, std::size_t block_dim, Form form,
                            double tol) {
  const std::size_t steps = horizon + 1;
  if (block_dim == 0 || !m.is_square() || m.rows() != steps * block_dim) {
    throw_shape("pattern_check: matrix is " + std::to_string(m.rows()) + "x" +
                std::to_string(m.cols()) + ", expected (N+1)d = " +
                std::to_string(steps * block_dim));
  }
  PatternResult res;
  res.threshold = tol * m.frobenius_norm() / static_cast<double>(steps);
  for (std::size_t k1 = 0; k1 < steps; ++k1) {
    for (std::size_t k2 = 0; k2 < steps; ++k2) {
      if (in_support(form, horizon, k1, k2)) continue;
      const double nrm =
          m.block(k1 * block_dim, k2 * block_dim, block_dim, block_dim).frobenius_norm();
      if (nrm > res.max_off_pattern) {
        res.max_off_pattern = nrm;
        res.worst_k1 = k1;
        res.worst_k2 = k2;
      }
    }
  }
  res.matches = res.max_off_pattern <= res.threshold;
  return res;
}

bool ClassLabels::label(Form form) const {
  switch (form) {
    case Form::Tridiagonal: return markov;
    case Form::CyclicTridiagonal: return reciprocal;
    case Form::CmL: return cm_l;
    case Form::CmF: return cm_f;
  }
  return false;
}

const PatternResult& ClassLabels::violation(Form form) const {
  switch (form) {
    case Form::Tridiagonal: return markov_violation;
    case Form::CyclicTridiagonal: return reciprocal_violation;
    case Form::CmL: return cm_l_violation;
    case Form::CmF: break;
  }
  return cm_f_violation;
}

ClassLabels classify(const BlockCovariance& cov, double tol) {
  const SPDMatrix precision = invert_spd(cov.spd());
  const std::size_t n = cov.horizon();
  const std::size_t d = cov.block_dim();
  ClassLabels out;
  out.tolerance_used = tol;
  out.markov_violation = pattern_check(precision.matrix(), n, d, Form::Tridiagonal, tol);
  out.reciprocal_violation = pattern_check(precision.matrix(), n, d, Form::CyclicTridiagonal, tol);
  out.cm_l_violation = pattern_check(precision.matrix(), n, d, Form::CmL, tol);
  out.cm_f_violation = pattern_check(precision.matrix(), n, d, Form::CmF, tol);
  out.markov = out.markov_violation.matches;
  out.reciprocal = out.reciprocal_violation.matches;
  out.cm_l = out.cm_l_violation.matches;
  out.cm_f = out.cm_f_violation.matches;
  // Nested supports share one threshold, so this cannot fail short of a bug.
  if ((out.markov && !out.reciprocal) || (out.reciprocal && !(out.cm_l && out.cm_f))) {
    throw std::logic_error("class containment violated");
  }
  return out;
}

BlockCovariance random_cm_instance(std::size_t horizon, std::size_t block_dim, Form form,
                                   std::uint64_t seed) {
  RandomStream stream(seed);
  const Matrix precision = detail::random_precision_on_support(
      horizon, block_dim,
      [&](std::size_t k1, std::size_t k2) { return in_support(form, horizon, k1, k2); }, stream);
  return BlockCovariance(horizon, block_dim, invert_spd(SPDMatrix(precision)));
}

}  // namespace cmseq
