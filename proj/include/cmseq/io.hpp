#pragma once

// File formats: JSON documents for matrices, covariances, models and reports;
// CSV for trajectories. All writers are deterministic (sorted keys, shortest
// round-trip number formatting, no timestamps).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cmseq/characterization.hpp"
#include "cmseq/cm_model.hpp"
#include "cmseq/covariance_model.hpp"
#include "cmseq/oracle.hpp"
#include "cmseq/trajectory.hpp"

namespace cmseq::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// {"dim": n, "entries": [row-major]}; square only, non-finite entries rejected.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"N": int, "d": int, "matrix": {...}}
Json covariance_to_json(const BlockCovariance& cov);
BlockCovariance covariance_from_json(const Json& j);

// {"boundary": "first"|"last", "N", "d", "transitions": {"k": matrix},
//  "couplings": {...}, "noise_covs": {...}, "endpoint_coupling": matrix?}
Json model_to_json(const CMcModel& model);
CMcModel model_from_json(const Json& j);

Json labels_to_json(const ClassLabels& labels);
Json oracle_to_json(const OracleReport& report);
Json summary_to_json(const EnsembleSummary& summary);

// Header "realization,k,x_1,...,x_d", one row per (realization, k).
std::string trajectories_csv(const TrajectoryBatch& batch);

// "1.5,2,-3" -> {1.5, 2, -3}; whitespace and newlines tolerated.
std::vector<double> parse_vector_csv(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
Json parse_json(std::string_view text);
Json read_json_file(const std::filesystem::path& path);

// Writes to a sibling temporary and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string format_double(double v);

}  // namespace cmseq::io
