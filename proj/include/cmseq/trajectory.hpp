#pragma once

// Trajectory ensembles with destination information. A CM_L model built
// from a base (typically Markov) covariance keeps its evolution law while the
// law of x_N = e_N is replaced by the destination density. The optional
// endpoint overrides set the joint (x_0, x_N) law through G_{0,N} and G_0.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmseq/cm_model.hpp"
#include "cmseq/covariance_model.hpp"

namespace cmseq {

struct DestinationSpec {
  std::optional<std::vector<double>> mean;         // E[x_N]
  std::optional<Matrix> cov;                       // Cov(x_N), replaces G_N
  std::optional<Matrix> endpoint_coupling;         // replaces G_{0,N}
  std::optional<Matrix> origin_cov;                // replaces G_0
};

struct DestinationModel {
  CMcModel model;
  NoiseMeans noise_means;                  // only e_N may have a nonzero mean
  std::vector<std::vector<double>> offsets;  // E[x_k], k = 0..N
};

// An empty spec leaves construct_model(base, Last) untouched.
DestinationModel destination_model(const BlockCovariance& base, const DestinationSpec& spec);

struct EnsembleSummary {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> mean_path;       // deterministic, from the offsets
  std::vector<std::vector<double>> empirical_mean;  // per k
  std::vector<Matrix> empirical_cov;                // per k, d x d, divisor max(M-1, 1)
};

struct Ensemble {
  TrajectoryBatch batch;
  EnsembleSummary summary;
};

Ensemble generate_ensemble(const DestinationModel& dm, std::uint64_t seed, std::size_t count);

// Per-component mean path with a +/- 2 sigma band, one panel per component.
std::string render_envelope_svg(const EnsembleSummary& summary);

}  // namespace cmseq
