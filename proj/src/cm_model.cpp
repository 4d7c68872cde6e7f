#include "cmseq/cm_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmseq/errors.hpp"
#include "cmseq/kernels.hpp"
#include "cmseq/random_stream.hpp"

namespace cmseq {

namespace {

void require_square(const Matrix& m, std::size_t d, const std::string& what) {
  if (m.rows() != d || m.cols() != d) {
    throw_shape(what + " must be " + std::to_string(d) + "x" + std::to_string(d));
  }
}

// out += g * v for a d x d block.
void matvec_add(const Matrix& g, const double* v, double* out) {
  const std::size_t d = g.rows();
  for (std::size_t i = 0; i < d; ++i) out[i] += kernels::dot(g.row(i).data(), v, d);
}

// out -= g * v
void matvec_sub(const Matrix& g, const double* v, double* out) {
  const std::size_t d = g.rows();
  for (std::size_t i = 0; i < d; ++i) out[i] -= kernels::dot(g.row(i).data(), v, d);
}

// Maps stacked noise e to stacked states x (both (N+1)d long).
void propagate(const CMcModel& model, const double* e, double* x) {
  const std::size_t d = model.block_dim();
  const std::size_t n = model.horizon();
  const std::size_t c = model.boundary_time();
  std::copy_n(e + c * d, d, x + c * d);
  if (model.boundary() == Boundary::Last) {
    std::copy_n(e, d, x);
    matvec_add(*model.endpoint_coupling(), x + n * d, x);
  }
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == c) continue;
    double* xk = x + k * d;
    std::copy_n(e + k * d, d, xk);
    matvec_add(model.transition(k), x + (k - 1) * d, xk);
    matvec_add(model.coupling(k), x + c * d, xk);
  }
}

Matrix random_orthogonal(std::size_t d, RandomStream& stream) {
  Matrix q(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    auto row = q.row(i);
    for (;;) {
      stream.fill_normal(row);
      for (std::size_t j = 0; j < i; ++j) {
        kernels::axpy(-kernels::dot(row.data(), q.row(j).data(), d), q.row(j).data(), row.data(), d);
      }
      const double nrm = std::sqrt(kernels::dot(row.data(), row.data(), d));
      if (nrm > 1e-6) {
        for (double& v : row) v /= nrm;
        break;
      }
    }
  }
  return q;
}

Matrix random_matrix_with_norm(std::size_t d, double norm, RandomStream& stream) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d * d; ++i) m.data()[i] = stream.uniform(-1.0, 1.0);
  const double f = m.frobenius_norm();
  return f > 0.0 ? (norm / f) * m : m;
}

}  // namespace

CMcModel::CMcModel(const Parameters& p)
    : boundary_(p.boundary), horizon_(p.horizon), block_dim_(p.block_dim) {
  if (horizon_ < 1) throw DomainError("model horizon N must be at least 1");
  if (block_dim_ < 1) throw DomainError("model block dimension must be at least 1");
  const std::size_t steps = horizon_ + 1;
  if (p.transitions.size() != steps || p.couplings.size() != steps ||
      p.noise_covs.size() != steps) {
    throw_shape("model parameter lists must have N+1 slots");
  }
  for (std::size_t k = 0; k < steps; ++k) {
    const std::string tag = "[" + std::to_string(k) + "]";
    if (has_recursion_at(k)) {
      require_square(p.transitions[k], block_dim_, "transition" + tag);
      require_square(p.couplings[k], block_dim_, "coupling" + tag);
    } else if (!p.transitions[k].empty() || !p.couplings[k].empty()) {
      throw IndexError("transition/coupling given at k = " + std::to_string(k) +
                       ", outside [1,N] \\ {c}");
    }
    require_square(p.noise_covs[k], block_dim_, "noise covariance" + tag);
    try {
      noise_covs_.emplace_back(p.noise_covs[k]);
    } catch (const NotPositiveDefinite&) {
      throw NotPositiveDefinite("noise covariance G_" + std::to_string(k) +
                                " is not positive definite");
    }
  }
  transitions_ = p.transitions;
  couplings_ = p.couplings;
  if (boundary_ == Boundary::Last) {
    if (!p.endpoint_coupling) throw FormatError("endpoint coupling G_{0,N} required for c = N");
    require_square(*p.endpoint_coupling, block_dim_, "endpoint coupling");
    endpoint_coupling_ = p.endpoint_coupling;
  } else if (p.endpoint_coupling) {
    throw FormatError("endpoint coupling is only defined for c = N");
  }
}

bool CMcModel::has_recursion_at(std::size_t k) const {
  return k >= 1 && k <= horizon_ && k != boundary_time();
}

std::vector<std::size_t> CMcModel::recursion_times() const {
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= horizon_; ++k)
    if (k != boundary_time()) ks.push_back(k);
  return ks;
}

const Matrix& CMcModel::transition(std::size_t k) const {
  if (!has_recursion_at(k)) throw IndexError("no transition at k = " + std::to_string(k));
  return transitions_[k];
}

const Matrix& CMcModel::coupling(std::size_t k) const {
  if (!has_recursion_at(k)) throw IndexError("no coupling at k = " + std::to_string(k));
  return couplings_[k];
}

CMcModel::Parameters CMcModel::parameters() const {
  Parameters p{boundary_, horizon_, block_dim_, transitions_, couplings_, {}, endpoint_coupling_};
  for (const auto& g : noise_covs_) p.noise_covs.push_back(g.matrix());
  return p;
}

TrajectoryBatch::TrajectoryBatch(std::size_t count, std::size_t horizon, std::size_t block_dim,
                                 std::uint64_t seed)
    : count_(count),
      horizon_(horizon),
      block_dim_(block_dim),
      seed_(seed),
      values_(count * (horizon + 1) * block_dim, 0.0) {}

std::span<double> TrajectoryBatch::realization(std::size_t r) {
  const std::size_t w = (horizon_ + 1) * block_dim_;
  return {values_.data() + r * w, w};
}
std::span<const double> TrajectoryBatch::realization(std::size_t r) const {
  const std::size_t w = (horizon_ + 1) * block_dim_;
  return {values_.data() + r * w, w};
}
std::span<double> TrajectoryBatch::state(std::size_t r, std::size_t k) {
  return realization(r).subspan(k * block_dim_, block_dim_);
}
std::span<const double> TrajectoryBatch::state(std::size_t r, std::size_t k) const {
  return realization(r).subspan(k * block_dim_, block_dim_);
}

CMcModel construct_model(const BlockCovariance& cov, Boundary boundary) {
  const std::size_t n = cov.horizon();
  const std::size_t d = cov.block_dim();
  const std::size_t c = cov.time_of(boundary);
  const SPDMatrix& joint = cov.spd();

  CMcModel::Parameters p;
  p.boundary = boundary;
  p.horizon = n;
  p.block_dim = d;
  p.transitions.assign(n + 1, Matrix());
  p.couplings.assign(n + 1, Matrix());
  p.noise_covs.assign(n + 1, Matrix());

  for (std::size_t k = 1; k <= n; ++k) {
    if (k == c) continue;
    const auto target = block_indices(k, d);
    if (c == 0 && k == 1) {
      const auto given = block_indices(0, d);
      GaussianConditional g = condition(joint, target, given);
      Matrix half = 0.5 * g.coefficients;
      p.transitions[k] = half;
      p.couplings[k] = std::move(half);
      p.noise_covs[k] = g.cond_cov.matrix();
      continue;
    }
    auto given = block_indices(k - 1, d);
    const auto cblock = block_indices(c, d);
    given.insert(given.end(), cblock.begin(), cblock.end());
    GaussianConditional g = condition(joint, target, given);
    p.transitions[k] = g.coefficients.block(0, 0, d, d);
    p.couplings[k] = g.coefficients.block(0, d, d, d);
    p.noise_covs[k] = g.cond_cov.matrix();
  }

  if (boundary == Boundary::First) {
    p.noise_covs[0] = cov.block(0, 0);
  } else {
    p.noise_covs[n] = cov.block(n, n);
    GaussianConditional g = condition(joint, block_indices(0, d), block_indices(n, d));
    p.endpoint_coupling = std::move(g.coefficients);
    p.noise_covs[0] = g.cond_cov.matrix();
  }
  return CMcModel(p);
}

Matrix noise_to_state_map(const CMcModel& model) {
  const std::size_t d = model.block_dim();
  const std::size_t n = model.horizon();
  const std::size_t dim = (n + 1) * d;
  const std::size_t c = model.boundary_time();
  Matrix l(dim, dim);
  auto row_block = [&](std::size_t k) { return l.block(k * d, 0, d, dim); };

  l.set_block(c * d, c * d, Matrix::identity(d));
  if (model.boundary() == Boundary::Last) {
    Matrix r0 = *model.endpoint_coupling() * row_block(n);
    r0.set_block(0, 0, r0.block(0, 0, d, d) + Matrix::identity(d));
    l.set_block(0, 0, r0);
  }
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == c) continue;
    Matrix rk = model.transition(k) * row_block(k - 1) + model.coupling(k) * row_block(c);
    rk.set_block(0, k * d, rk.block(0, k * d, d, d) + Matrix::identity(d));
    l.set_block(k * d, 0, rk);
  }
  return l;
}

BlockCovariance implied_covariance(const CMcModel& model) {
  const std::size_t d = model.block_dim();
  const std::size_t n = model.horizon();
  const std::size_t dim = (n + 1) * d;
  Matrix noise_factor(dim, dim);
  for (std::size_t k = 0; k <= n; ++k) noise_factor.set_block(k * d, k * d, model.noise_cov(k).factor());
  const Matrix m = noise_to_state_map(model) * noise_factor;
  return BlockCovariance(n, d, m * m.transpose());
}

TrajectoryBatch simulate(const CMcModel& model, std::uint64_t seed, std::size_t count,
                         const NoiseMeans& noise_means) {
  if (count < 1) throw DomainError("simulation count must be at least 1");
  const std::size_t d = model.block_dim();
  const std::size_t n = model.horizon();
  const std::size_t c = model.boundary_time();
  if (!noise_means.empty() && noise_means.size() != n + 1) {
    throw_shape("noise means must have N+1 entries");
  }
  for (const auto& m : noise_means) {
    if (!m.empty() && m.size() != d) throw_shape("noise mean dimension != d");
  }

  // Draw order follows the dependency order of the recursion.
  std::vector<std::size_t> order;
  order.push_back(c);
  if (model.boundary() == Boundary::Last) order.push_back(0);
  for (std::size_t k : model.recursion_times()) order.push_back(k);

  TrajectoryBatch batch(count, n, d, seed);
  std::vector<double> z(d);
  std::vector<double> e((n + 1) * d);
  for (std::size_t r = 0; r < count; ++r) {
    RandomStream stream = RandomStream::derived(seed, r);
    for (std::size_t k : order) {
      stream.fill_normal(z);
      const Matrix& l = model.noise_cov(k).factor();
      double* ek = e.data() + k * d;
      for (std::size_t i = 0; i < d; ++i) ek[i] = kernels::dot(l.row(i).data(), z.data(), i + 1);
      if (!noise_means.empty() && !noise_means[k].empty()) {
        for (std::size_t i = 0; i < d; ++i) ek[i] += noise_means[k][i];
      }
    }
    propagate(model, e.data(), batch.realization(r).data());
  }
  return batch;
}

TrajectoryBatch extract_residuals(const CMcModel& model, const TrajectoryBatch& batch) {
  const std::size_t d = model.block_dim();
  const std::size_t n = model.horizon();
  if (batch.horizon() != n || batch.block_dim() != d) {
    throw_shape("trajectory batch shape (N=" + std::to_string(batch.horizon()) +
                ", d=" + std::to_string(batch.block_dim()) + ") does not match model");
  }
  const std::size_t c = model.boundary_time();
  TrajectoryBatch out(batch.count(), n, d, batch.seed());
  for (std::size_t r = 0; r < batch.count(); ++r) {
    const double* x = batch.realization(r).data();
    double* e = out.realization(r).data();
    std::copy_n(x, (n + 1) * d, e);
    if (model.boundary() == Boundary::Last) matvec_sub(*model.endpoint_coupling(), x + n * d, e);
    for (std::size_t k : model.recursion_times()) {
      matvec_sub(model.transition(k), x + (k - 1) * d, e + k * d);
      matvec_sub(model.coupling(k), x + c * d, e + k * d);
    }
  }
  return out;
}

std::vector<std::vector<double>> mean_path(const CMcModel& model, const NoiseMeans& noise_means) {
  const std::size_t d = model.block_dim();
  const std::size_t n = model.horizon();
  if (!noise_means.empty() && noise_means.size() != n + 1) {
    throw_shape("noise means must have N+1 entries");
  }
  std::vector<double> e((n + 1) * d, 0.0);
  for (std::size_t k = 0; k < noise_means.size(); ++k) {
    if (noise_means[k].empty()) continue;
    if (noise_means[k].size() != d) throw_shape("noise mean dimension != d");
    std::copy(noise_means[k].begin(), noise_means[k].end(), e.begin() + static_cast<std::ptrdiff_t>(k * d));
  }
  std::vector<double> x((n + 1) * d);
  propagate(model, e.data(), x.data());
  std::vector<std::vector<double>> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out[k].assign(x.begin() + static_cast<std::ptrdiff_t>(k * d),
                  x.begin() + static_cast<std::ptrdiff_t>((k + 1) * d));
  }
  return out;
}

std::vector<double> empirical_mean(const TrajectoryBatch& batch) {
  const std::size_t w = (batch.horizon() + 1) * batch.block_dim();
  std::vector<double> mean(w, 0.0);
  for (std::size_t r = 0; r < batch.count(); ++r) {
    kernels::axpy(1.0, batch.realization(r).data(), mean.data(), w);
  }
  for (double& v : mean) v /= static_cast<double>(batch.count());
  return mean;
}

Matrix empirical_covariance(const TrajectoryBatch& batch) {
  if (batch.count() < 2) throw DomainError("empirical covariance needs at least 2 realizations");
  const std::size_t w = (batch.horizon() + 1) * batch.block_dim();
  const std::vector<double> mean = empirical_mean(batch);
  Matrix cov(w, w);
  std::vector<double> centered(w);
  for (std::size_t r = 0; r < batch.count(); ++r) {
    const auto x = batch.realization(r);
    for (std::size_t i = 0; i < w; ++i) centered[i] = x[i] - mean[i];
    for (std::size_t i = 0; i < w; ++i) {
      kernels::axpy(centered[i], centered.data(), cov.row(i).data(), w);
    }
  }
  cov *= 1.0 / static_cast<double>(batch.count() - 1);
  return cov;
}

CMcModel random_model(std::size_t horizon, std::size_t block_dim, Boundary boundary,
                      std::uint64_t seed, const RandomModelOptions& options) {
  RandomStream stream(seed);
  const std::size_t d = block_dim;
  CMcModel::Parameters p;
  p.boundary = boundary;
  p.horizon = horizon;
  p.block_dim = d;
  p.transitions.assign(horizon + 1, Matrix());
  p.couplings.assign(horizon + 1, Matrix());
  p.noise_covs.assign(horizon + 1, Matrix());
  const std::size_t c = boundary == Boundary::First ? 0 : horizon;
  const double log_cond = std::log(options.noise_condition);
  for (std::size_t k = 0; k <= horizon; ++k) {
    if (k >= 1 && k != c) {
      p.transitions[k] = random_matrix_with_norm(d, options.transition_norm, stream);
      p.couplings[k] = random_matrix_with_norm(d, options.coupling_norm, stream);
    }
    const Matrix q = random_orthogonal(d, stream);
    Matrix scaled = q;
    for (std::size_t i = 0; i < d; ++i) {
      const double lambda = std::exp(-stream.uniform(0.0, 1.0) * log_cond);
      for (std::size_t j = 0; j < d; ++j) scaled(i, j) *= lambda;
    }
    p.noise_covs[k] = q.transpose() * scaled;
  }
  if (boundary == Boundary::Last) {
    p.endpoint_coupling = random_matrix_with_norm(d, options.coupling_norm, stream);
  }
  return CMcModel(p);
}

}  // namespace cmseq
