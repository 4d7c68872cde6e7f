#pragma once

// Recursive dynamic model of a zero-mean nonsingular Gaussian CM_c sequence:
//
//   x_k = G_{k,k-1} x_{k-1} + G_{k,c} x_c + e_k,   k in [1,N] \ {c}
//   x_c = e_c,   and for c = N additionally  x_0 = G_{0,N} x_N + e_0
//
// with e_k white, zero-mean, Cov(e_k) = G_k.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cmseq/covariance_model.hpp"
#include "cmseq/gaussian_core.hpp"
#include "cmseq/matrix.hpp"

namespace cmseq {

class CMcModel {
 public:
  // Raw parameters. `transitions`, `couplings` and `noise_covs` are indexed by
  // time k and have N+1 slots; transition/coupling slots outside [1,N] \ {c}
  // must be empty matrices.
  struct Parameters {
    Boundary boundary = Boundary::Last;
    std::size_t horizon = 0;
    std::size_t block_dim = 0;
    std::vector<Matrix> transitions;
    std::vector<Matrix> couplings;
    std::vector<Matrix> noise_covs;
    std::optional<Matrix> endpoint_coupling;
  };

  // Validates shapes, index sets and positive definiteness of every G_k.
  explicit CMcModel(const Parameters& p);

  Boundary boundary() const { return boundary_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t block_dim() const { return block_dim_; }
  std::size_t boundary_time() const { return boundary_ == Boundary::First ? 0 : horizon_; }

  // Times k in [1,N] \ {c}, ascending.
  std::vector<std::size_t> recursion_times() const;
  bool has_recursion_at(std::size_t k) const;

  const Matrix& transition(std::size_t k) const;  // G_{k,k-1}
  const Matrix& coupling(std::size_t k) const;    // G_{k,c}
  const SPDMatrix& noise_cov(std::size_t k) const { return noise_covs_.at(k); }  // G_k
  const std::optional<Matrix>& endpoint_coupling() const { return endpoint_coupling_; }  // G_{0,N}

  Parameters parameters() const;

 private:
  Boundary boundary_;
  std::size_t horizon_;
  std::size_t block_dim_;
  std::vector<Matrix> transitions_;
  std::vector<Matrix> couplings_;
  std::vector<SPDMatrix> noise_covs_;
  std::optional<Matrix> endpoint_coupling_;
};

// Realizations of [x_k]_0^N, stored realization-major then time then component.
class TrajectoryBatch {
 public:
  TrajectoryBatch(std::size_t count, std::size_t horizon, std::size_t block_dim,
                  std::uint64_t seed);

  std::size_t count() const { return count_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t block_dim() const { return block_dim_; }
  std::uint64_t seed() const { return seed_; }

  std::span<double> realization(std::size_t r);
  std::span<const double> realization(std::size_t r) const;
  std::span<double> state(std::size_t r, std::size_t k);
  std::span<const double> state(std::size_t r, std::size_t k) const;
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const TrajectoryBatch&, const TrajectoryBatch&) = default;

 private:
  std::size_t count_;
  std::size_t horizon_;
  std::size_t block_dim_;
  std::uint64_t seed_;
  std::vector<double> values_;
};

// Per-time means of the driving noise e_k; empty inner vectors mean zero.
using NoiseMeans = std::vector<std::vector<double>>;

// Builds the model governing a sequence with covariance `cov`. For c = 0 the
// k = 1 step splits C_{1,0} C_0^{-1} evenly between G_{1,0} and G_{1,c}.
// Throws NotPositiveDefinite when a conditioning block or a G_k is singular.
CMcModel construct_model(const BlockCovariance& cov, Boundary boundary);

// The unique covariance of the sequence generated by `model`.
BlockCovariance implied_covariance(const CMcModel& model);

// Block lower-triangular map L with x = L e, e = (e_0, ..., e_N) stacked.
Matrix noise_to_state_map(const CMcModel& model);

// Realization r draws from RandomStream::derived(seed, r), so every
// realization is reproducible on its own.
TrajectoryBatch simulate(const CMcModel& model, std::uint64_t seed, std::size_t count,
                         const NoiseMeans& noise_means = {});

// e_k recovered from states by inverting the recursion.
TrajectoryBatch extract_residuals(const CMcModel& model, const TrajectoryBatch& batch);

// Deterministic E[x_k] when the noise has means `noise_means`.
std::vector<std::vector<double>> mean_path(const CMcModel& model, const NoiseMeans& noise_means);

// Sample mean and covariance (divisor M-1) over realizations, as
// (N+1)d-dimensional vectors.
std::vector<double> empirical_mean(const TrajectoryBatch& batch);
Matrix empirical_covariance(const TrajectoryBatch& batch);

struct RandomModelOptions {
  // Eigenvalues of each G_k are drawn log-uniformly in [1/noise_condition, 1].
  double noise_condition = 10.0;
  double transition_norm = 0.9;
  double coupling_norm = 0.5;
};

CMcModel random_model(std::size_t horizon, std::size_t block_dim, Boundary boundary,
                      std::uint64_t seed, const RandomModelOptions& options = {});

}  // namespace cmseq
