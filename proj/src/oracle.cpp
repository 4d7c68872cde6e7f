#include "cmseq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cmseq/gaussian_core.hpp"

namespace cmseq {

namespace {

std::vector<std::size_t> gather_blocks(const std::vector<std::size_t>& times, std::size_t d) {
  std::vector<std::size_t> idx;
  idx.reserve(times.size() * d);
  for (std::size_t t : times) {
    const auto b = block_indices(t, d);
    idx.insert(idx.end(), b.begin(), b.end());
  }
  return idx;
}

void record(OracleReport& rep, double v, std::size_t a, std::size_t b) {
  if (v > rep.worst_violation) {
    rep.worst_violation = v;
    rep.witness = {a, b};
  }
}

void finish(OracleReport& rep) { rep.holds = rep.worst_violation <= rep.tolerance; }

}  // namespace

std::string_view property_name(Property p) {
  switch (p) {
    case Property::CmF: return "cmf";
    case Property::CmL: return "cml";
    case Property::Markov: return "markov";
    case Property::Reciprocal: return "reciprocal";
  }
  return "?";
}

OracleReport cm_oracle(const BlockCovariance& cov, Boundary boundary, double tol) {
  OracleReport rep;
  rep.property = boundary == Boundary::First ? Property::CmF : Property::CmL;
  rep.tolerance = tol;
  const std::size_t n = cov.horizon();
  const std::size_t d = cov.block_dim();
  const std::size_t c = cov.time_of(boundary);

  for (std::size_t j = 0; j < n; ++j) {
    // Past blocks x_0..x_j plus x_c, without repeating x_c.
    std::vector<std::size_t> full_times;
    for (std::size_t i = 0; i <= j; ++i) full_times.push_back(i);
    if (c > j) full_times.push_back(c);
    std::vector<std::size_t> reduced_times{j};
    if (c != j) reduced_times.push_back(c);

    const auto full_given = gather_blocks(full_times, d);
    const auto reduced_given = gather_blocks(reduced_times, d);

    for (std::size_t k = j + 1; k <= n; ++k) {
      if (k == c) continue;
      const auto target = block_indices(k, d);
      const GaussianConditional full = condition(cov.spd(), target, full_given);
      const GaussianConditional reduced = condition(cov.spd(), target, reduced_given);

      double worst = 0.0;
      for (std::size_t pos = 0; pos < full_times.size(); ++pos) {
        const std::size_t t = full_times[pos];
        const Matrix w = full.coefficients.block(0, pos * d, d, d);
        if (t == j || t == c) {
          const std::size_t rpos = t == j ? 0 : 1;
          const Matrix wr = reduced.coefficients.block(0, rpos * d, d, d);
          worst = std::max(worst, (w - wr).max_abs());
        } else {
          worst = std::max(worst, w.max_abs());
        }
      }
      const double scale = cov.block(k, k).max_diagonal();
      worst = std::max(worst,
                       (full.cond_cov.matrix() - reduced.cond_cov.matrix()).max_abs() / scale);
      record(rep, worst, j, k);
    }
  }
  finish(rep);
  return rep;
}

OracleReport markov_oracle(const BlockCovariance& cov, double tol) {
  OracleReport rep;
  rep.property = Property::Markov;
  rep.tolerance = tol;
  const std::size_t n = cov.horizon();
  const std::size_t d = cov.block_dim();
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<std::size_t> past(j + 1);
    for (std::size_t i = 0; i <= j; ++i) past[i] = i;
    const auto given = gather_blocks(past, d);
    for (std::size_t k = j + 1; k <= n; ++k) {
      const GaussianConditional g = condition(cov.spd(), block_indices(k, d), given);
      // Columns of x_0..x_{j-1}; x_j occupies the last d columns.
      record(rep, g.coefficients.block(0, 0, d, j * d).max_abs(), j, k);
    }
  }
  finish(rep);
  return rep;
}

OracleReport reciprocal_oracle(const BlockCovariance& cov, double tol) {
  OracleReport rep;
  rep.property = Property::Reciprocal;
  rep.tolerance = tol;
  const std::size_t n = cov.horizon();
  const std::size_t d = cov.block_dim();

  const Matrix& c = cov.matrix();
  const std::size_t dim = c.rows();
  Matrix corr(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) corr(i, j) = c(i, j) / std::sqrt(c(i, i) * c(j, j));
  const SPDMatrix joint(corr);

  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = k1 + 2; k2 <= n; ++k2) {
      std::vector<std::size_t> inside;
      std::vector<std::size_t> outside;
      for (std::size_t t = k1 + 1; t < k2; ++t) inside.push_back(t);
      for (std::size_t t = 0; t <= n; ++t)
        if (t < k1 || t > k2) outside.push_back(t);
      if (outside.empty()) continue;

      auto target = gather_blocks(inside, d);
      const auto out_idx = gather_blocks(outside, d);
      target.insert(target.end(), out_idx.begin(), out_idx.end());
      const auto given = gather_blocks({k1, k2}, d);
      const GaussianConditional g = condition(joint, target, given);
      const std::size_t ni = inside.size() * d;
      const Matrix cross = g.cond_cov.matrix().block(0, ni, ni, out_idx.size());
      record(rep, cross.frobenius_norm(), k1, k2);
    }
  }
  finish(rep);
  return rep;
}

OracleReport run_oracle(const BlockCovariance& cov, Property property, double tol) {
  switch (property) {
    case Property::CmF: return cm_oracle(cov, Boundary::First, tol);
    case Property::CmL: return cm_oracle(cov, Boundary::Last, tol);
    case Property::Markov: return markov_oracle(cov, tol);
    case Property::Reciprocal: break;
  }
  return reciprocal_oracle(cov, tol);
}

}  // namespace cmseq
