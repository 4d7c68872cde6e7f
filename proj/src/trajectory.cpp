#include "cmseq/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cmseq/errors.hpp"

namespace cmseq {

DestinationModel destination_model(const BlockCovariance& base, const DestinationSpec& spec) {
  const CMcModel plain = construct_model(base, Boundary::Last);
  const std::size_t n = base.horizon();
  const std::size_t d = base.block_dim();

  NoiseMeans means(n + 1);
  if (spec.mean) {
    if (spec.mean->size() != d) throw_shape("destination mean must have dimension d");
    means[n] = *spec.mean;
  }

  const bool substitute = spec.cov || spec.endpoint_coupling || spec.origin_cov;
  if (!substitute) {
    auto offsets = mean_path(plain, means);
    return {plain, std::move(means), std::move(offsets)};
  }

  CMcModel::Parameters p = plain.parameters();
  auto replace = [d](Matrix& slot, const std::optional<Matrix>& m, const char* what) {
    if (!m) return;
    if (m->rows() != d || m->cols() != d) throw_shape(std::string(what) + " must be d x d");
    slot = *m;
  };
  replace(p.noise_covs[n], spec.cov, "destination covariance");
  replace(p.noise_covs[0], spec.origin_cov, "origin covariance");
  replace(*p.endpoint_coupling, spec.endpoint_coupling, "endpoint coupling");
  CMcModel model(p);
  auto offsets = mean_path(model, means);
  return {std::move(model), std::move(means), std::move(offsets)};
}

Ensemble generate_ensemble(const DestinationModel& dm, std::uint64_t seed, std::size_t count) {
  TrajectoryBatch batch = simulate(dm.model, seed, count, dm.noise_means);
  const std::size_t n = batch.horizon();
  const std::size_t d = batch.block_dim();

  EnsembleSummary s;
  s.count = count;
  s.seed = seed;
  s.mean_path = dm.offsets;
  s.empirical_mean.assign(n + 1, std::vector<double>(d, 0.0));
  s.empirical_cov.assign(n + 1, Matrix(d, d));
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t k = 0; k <= n; ++k) {
      const auto x = batch.state(r, k);
      for (std::size_t i = 0; i < d; ++i) s.empirical_mean[k][i] += x[i];
    }
  for (auto& m : s.empirical_mean)
    for (double& v : m) v /= static_cast<double>(count);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t k = 0; k <= n; ++k) {
      const auto x = batch.state(r, k);
      const auto& mu = s.empirical_mean[k];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          s.empirical_cov[k](i, j) += (x[i] - mu[i]) * (x[j] - mu[j]);
    }
  const double denom = static_cast<double>(std::max<std::size_t>(count - 1, 1));
  for (auto& c : s.empirical_cov) c *= 1.0 / denom;
  return {std::move(batch), std::move(s)};
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_envelope_svg(const EnsembleSummary& summary) {
  const std::size_t steps = summary.mean_path.size();
  const std::size_t d = steps == 0 ? 0 : summary.mean_path.front().size();
  constexpr double kWidth = 640.0;
  constexpr double kPanel = 240.0;
  constexpr double kMargin = 40.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kPanel * static_cast<double>(d) << "\">\n";
  for (std::size_t comp = 0; comp < d; ++comp) {
    std::vector<double> lo(steps), hi(steps), mid(steps);
    for (std::size_t k = 0; k < steps; ++k) {
      const double sd = std::sqrt(std::max(0.0, summary.empirical_cov[k](comp, comp)));
      mid[k] = summary.empirical_mean[k][comp];
      lo[k] = mid[k] - 2.0 * sd;
      hi[k] = mid[k] + 2.0 * sd;
    }
    double ymin = *std::min_element(lo.begin(), lo.end());
    double ymax = *std::max_element(hi.begin(), hi.end());
    if (ymax - ymin < 1e-12) {
      ymin -= 1.0;
      ymax += 1.0;
    }
    const double top = kPanel * static_cast<double>(comp);
    auto px = [&](std::size_t k) {
      const double span = steps > 1 ? static_cast<double>(steps - 1) : 1.0;
      return kMargin + (kWidth - 2 * kMargin) * static_cast<double>(k) / span;
    };
    auto py = [&](double y) {
      return top + kPanel - kMargin - (kPanel - 2 * kMargin) * (y - ymin) / (ymax - ymin);
    };

    svg << "  <g>\n    <text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(top + 20)
        << "\" font-size=\"12\">component " << comp + 1 << ": mean +/- 2 sd</text>\n";
    svg << "    <polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" points=\"";
    for (std::size_t k = 0; k < steps; ++k) svg << fmt(px(k)) << ',' << fmt(py(hi[k])) << ' ';
    for (std::size_t k = steps; k-- > 0;) svg << fmt(px(k)) << ',' << fmt(py(lo[k])) << ' ';
    svg << "\"/>\n    <polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < steps; ++k) svg << fmt(px(k)) << ',' << fmt(py(mid[k])) << ' ';
    svg << "\"/>\n  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace cmseq
