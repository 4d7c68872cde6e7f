#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cmseq/io.hpp"
#include "commands.hpp"

using namespace cmseq;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cmseq");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = CMSEQ_DATA_DIR;

struct TempDir {
  fs::path path = fs::temp_directory_path() / "cmseq_cli_test";
  TempDir() {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("classify an independent sequence") {
  const Result r = invoke({"classify", "--in", kData + "/identity6.json"});
  CHECK(r.code == 0);
  const auto j = io::parse_json(r.out);
  for (const char* label : {"markov", "reciprocal", "cm_l", "cm_f"}) CHECK(j["labels"][label] == true);
  CHECK(j["tolerance_used"] == 1e-9);
  CHECK(j["format_version"] == 1);
}

TEST_CASE("numerical errors exit with 3, validation errors with 2") {
  const Result bad = invoke({"verify", "--in", kData + "/bad_spd.json", "--property", "markov"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("NotPositiveDefinite") != std::string::npos);

  TempDir tmp;
  io::write_file_atomic(tmp / "broken.json", "{\"N\": 2, ");
  CHECK(invoke({"classify", "--in", tmp / "broken.json"}).code == 2);
  CHECK(invoke({"classify", "--in", tmp / "missing.json"}).code == 2);
  CHECK(invoke({"verify", "--in", kData + "/ar1_n2.json", "--property", "bogus"}).code == 2);
  CHECK(invoke({"construct", "--in", kData + "/ar1_n2.json", "--boundary", "middle"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("failed commands leave no output file") {
  TempDir tmp;
  const Result r = invoke({"construct", "--in", kData + "/bad_spd.json", "--out", tmp / "model.json"});
  CHECK(r.code == 3);
  CHECK_FALSE(fs::exists(tmp / "model.json"));
  CHECK_FALSE(fs::exists(tmp / "model.json.tmp"));
}

TEST_CASE("construct then simulate reproduces the base covariance") {
  TempDir tmp;
  REQUIRE(invoke({"construct", "--in", kData + "/ar1_n2.json", "--boundary", "last", "--out",
                  tmp / "model.json"})
              .code == 0);
  REQUIRE(invoke({"simulate", "--in", tmp / "model.json", "--count", "200000", "--seed", "7",
                  "--out", tmp / "sim.csv"})
              .code == 0);

  const std::string csv = io::read_text_file(tmp / "sim.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "realization,k,x_1");
  TrajectoryBatch batch(200000, 2, 1, 7);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto v = io::parse_vector_csv(line);
    batch.state(static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]))[0] = v[2];
    ++rows;
  }
  CHECK(rows == 600000);
  const BlockCovariance base = io::covariance_from_json(io::read_json_file(kData + "/ar1_n2.json"));
  CHECK(relative_frobenius(empirical_covariance(batch), base.matrix()) < 0.02);
}

TEST_CASE("verify reports a witness") {
  const Result r = invoke({"verify", "--in", kData + "/ar1_n2.json", "--property", "reciprocal"});
  CHECK(r.code == 0);
  const auto j = io::parse_json(r.out);
  CHECK(j["holds"] == true);
  CHECK(j["witness"].size() == 2);
}

TEST_CASE("trajectory writes its three artifacts") {
  TempDir tmp;
  const Result r = invoke({"trajectory", "--base", kData + "/ar1_n2.json", "--dest-mean",
                           kData + "/dest_mean.csv", "--dest-cov", kData + "/dest_cov.json",
                           "--count", "1000", "--seed", "3", "--plot", "--out", tmp / "run"});
  CHECK(r.code == 0);
  CHECK(fs::exists(tmp / "run_trajectories.csv"));
  CHECK(fs::exists(tmp / "run_plot.svg"));
  const auto s = io::read_json_file(tmp / "run_summary.json");
  CHECK(s["mean_path"][1][0].get<double>() == doctest::Approx(5.0));
  CHECK(s["count"] == 1000);

  // Dimension mismatch between destination and base.
  io::write_file_atomic(tmp / "two.csv", "1,2");
  CHECK(invoke({"trajectory", "--base", kData + "/ar1_n2.json", "--dest-mean", tmp / "two.csv",
                "--count", "10", "--seed", "1", "--out", tmp / "bad"})
            .code == 2);
  CHECK_FALSE(fs::exists(tmp / "bad_summary.json"));
}
