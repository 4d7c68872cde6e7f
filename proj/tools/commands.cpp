#include "commands.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "cmseq/characterization.hpp"
#include "cmseq/cm_model.hpp"
#include "cmseq/errors.hpp"
#include "cmseq/io.hpp"
#include "cmseq/oracle.hpp"
#include "cmseq/trajectory.hpp"

namespace cmseq::cli {

namespace {

using io::Json;

// Writes to `path` atomically, or to `out` when no path was given.
void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty()) {
    out << contents;
  } else {
    io::write_file_atomic(path, contents);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Property parse_property(const std::string& s) {
  if (s == "cmf") return Property::CmF;
  if (s == "cml") return Property::CmL;
  if (s == "markov") return Property::Markov;
  return Property::Reciprocal;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian conditionally-Markov sequences: models, simulation, classification"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;

  auto* construct = app.add_subcommand("construct", "Build a CM_c model from a covariance");
  std::string boundary = "last";
  construct->add_option("--in", in_path, "Covariance JSON")->required();
  construct->add_option("--boundary", boundary, "Conditioning time")
      ->check(CLI::IsMember({"first", "last"}));
  construct->add_option("--out", out_path, "Model JSON (default: stdout)");

  auto* simulate_cmd = app.add_subcommand("simulate", "Sample trajectories from a model");
  std::uint64_t seed = 0;
  std::size_t count = 1;
  simulate_cmd->add_option("--in", in_path, "Model JSON")->required();
  simulate_cmd->add_option("--seed", seed, "Master seed")->required();
  simulate_cmd->add_option("--count", count, "Number of realizations")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--out", out_path, "Trajectory CSV (default: stdout)");

  auto* classify_cmd = app.add_subcommand("classify", "Label a covariance by its precision pattern");
  double classify_tol = kDefaultClassifyTolerance;
  classify_cmd->add_option("--in", in_path, "Covariance JSON")->required();
  classify_cmd->add_option("--tol", classify_tol, "Relative pattern tolerance")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--out", out_path, "Label JSON (default: stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Check a property by direct Gaussian conditioning");
  std::string property;
  double verify_tol = kDefaultOracleTolerance;
  verify_cmd->add_option("--in", in_path, "Covariance JSON")->required();
  verify_cmd->add_option("--property", property, "Property to check")
      ->required()
      ->check(CLI::IsMember({"cmf", "cml", "markov", "reciprocal"}));
  verify_cmd->add_option("--tol", verify_tol, "Absolute coefficient tolerance")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", out_path, "Report JSON (default: stdout)");

  auto* trajectory_cmd =
      app.add_subcommand("trajectory", "Destination-conditioned trajectory ensemble");
  std::string base_path;
  std::string dest_mean_path;
  std::string dest_cov_path;
  std::string prefix;
  bool plot = false;
  trajectory_cmd->add_option("--base", base_path, "Base covariance JSON")->required();
  trajectory_cmd->add_option("--dest-mean", dest_mean_path, "Destination mean (CSV numbers)");
  trajectory_cmd->add_option("--dest-cov", dest_cov_path, "Destination covariance matrix JSON");
  trajectory_cmd->add_option("--count", count, "Number of realizations")
      ->required()
      ->check(CLI::PositiveNumber);
  trajectory_cmd->add_option("--seed", seed, "Master seed")->required();
  trajectory_cmd->add_option("--out", prefix, "Output prefix")->required();
  trajectory_cmd->add_flag("--plot", plot, "Also write <prefix>_plot.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*construct) {
      const BlockCovariance cov = io::covariance_from_json(io::read_json_file(in_path));
      const CMcModel model =
          construct_model(cov, boundary == "first" ? Boundary::First : Boundary::Last);
      Json j = io::model_to_json(model);
      j["format_version"] = io::kFormatVersion;
      emit(out_path, dump(j), out);
    } else if (*simulate_cmd) {
      const CMcModel model = io::model_from_json(io::read_json_file(in_path));
      const TrajectoryBatch batch = simulate(model, seed, count);
      emit(out_path, io::trajectories_csv(batch), out);
    } else if (*classify_cmd) {
      const BlockCovariance cov = io::covariance_from_json(io::read_json_file(in_path));
      emit(out_path, dump(io::labels_to_json(classify(cov, classify_tol))), out);
    } else if (*verify_cmd) {
      const BlockCovariance cov = io::covariance_from_json(io::read_json_file(in_path));
      const OracleReport rep = run_oracle(cov, parse_property(property), verify_tol);
      emit(out_path, dump(io::oracle_to_json(rep)), out);
    } else if (*trajectory_cmd) {
      const BlockCovariance base = io::covariance_from_json(io::read_json_file(base_path));
      DestinationSpec spec;
      if (!dest_mean_path.empty()) spec.mean = io::parse_vector_csv(io::read_text_file(dest_mean_path));
      if (!dest_cov_path.empty()) spec.cov = io::matrix_from_json(io::read_json_file(dest_cov_path));
      const DestinationModel dm = destination_model(base, spec);
      const Ensemble ens = generate_ensemble(dm, seed, count);
      // Render everything before touching the filesystem.
      const std::string csv = io::trajectories_csv(ens.batch);
      const std::string summary = dump(io::summary_to_json(ens.summary));
      const std::string svg = plot ? render_envelope_svg(ens.summary) : std::string();
      io::write_file_atomic(prefix + "_trajectories.csv", csv);
      io::write_file_atomic(prefix + "_summary.json", summary);
      if (plot) io::write_file_atomic(prefix + "_plot.svg", svg);
    }
  } catch (const NotPositiveDefinite& e) {
    err << "error: NotPositiveDefinite: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return kOk;
}

}  // namespace cmseq::cli
