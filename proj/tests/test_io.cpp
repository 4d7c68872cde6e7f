#include <doctest.h>

#include <filesystem>

#include "cmseq/errors.hpp"
#include "cmseq/io.hpp"

using namespace cmseq;
using io::Json;

TEST_CASE("matrix JSON") {
  const Matrix m{{1, 0.1}, {0.1, 2}};
  const Json j = io::matrix_to_json(m);
  CHECK(j["dim"] == 2);
  CHECK(io::matrix_from_json(j) == m);

  CHECK_THROWS_AS(io::matrix_from_json(io::parse_json(R"({"dim": 2, "entries": [1,2,3]})")), FormatError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse_json(R"({"dim": 0, "entries": []})")), FormatError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse_json(R"({"dim": 1, "entries": ["x"]})")), FormatError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse_json(R"({"dim": 1, "entries": [1e999]})")), FormatError);
  CHECK_THROWS_AS(io::parse_json(R"({"dim": 1, "entries": [NaN]})"), FormatError);
  CHECK_THROWS_AS(io::parse_json("{"), FormatError);
}

TEST_CASE("covariance and model documents round trip") {
  const BlockCovariance cov = random_spd_covariance(3, 2, 6);
  const BlockCovariance back = io::covariance_from_json(io::parse_json(io::covariance_to_json(cov).dump()));
  CHECK(back.matrix() == cov.matrix());
  CHECK(back.horizon() == 3);

  for (Boundary b : {Boundary::First, Boundary::Last}) {
    const CMcModel m = construct_model(cov, b);
    const Json j = io::model_to_json(m);
    CHECK(j.contains("endpoint_coupling") == (b == Boundary::Last));
    const CMcModel m2 = io::model_from_json(io::parse_json(j.dump()));
    CHECK(io::model_to_json(m2) == j);
    CHECK(implied_covariance(m2).matrix() == implied_covariance(m).matrix());
  }
}

TEST_CASE("model documents are validated") {
  Json j = io::model_to_json(construct_model(ar1_covariance(2, 0.5), Boundary::Last));
  {
    Json bad = j;
    bad["boundary"] = "middle";
    CHECK_THROWS_AS(io::model_from_json(bad), FormatError);
  }
  {
    Json bad = j;
    bad["noise_covs"]["1"] = io::matrix_to_json(Matrix{{-2.0}});
    CHECK_THROWS_AS(io::model_from_json(bad), NotPositiveDefinite);
  }
  {
    Json bad = j;
    bad["transitions"].erase("1");
    CHECK_THROWS_AS(io::model_from_json(bad), FormatError);
  }
  {
    Json bad = j;
    bad["couplings"]["7"] = io::matrix_to_json(Matrix{{1.0}});
    CHECK_THROWS_AS(io::model_from_json(bad), FormatError);
  }
  {
    Json bad = j;
    bad.erase("endpoint_coupling");
    CHECK_THROWS_AS(io::model_from_json(bad), FormatError);
  }
}

TEST_CASE("trajectory CSV layout") {
  TrajectoryBatch b(2, 1, 2, 0);
  b.state(1, 1)[0] = 0.1;
  b.state(1, 1)[1] = -3.0;
  const std::string csv = io::trajectories_csv(b);
  CHECK(csv ==
        "realization,k,x_1,x_2\n"
        "0,0,0,0\n0,1,0,0\n1,0,0,0\n1,1,0.1,-3\n");
}

TEST_CASE("vector CSV parsing") {
  CHECK(io::parse_vector_csv("10") == std::vector<double>{10.0});
  CHECK(io::parse_vector_csv(" 1.5, -2 \n") == std::vector<double>{1.5, -2.0});
  CHECK_THROWS_AS(io::parse_vector_csv("1,abc"), FormatError);
  CHECK_THROWS_AS(io::parse_vector_csv(""), FormatError);
}

TEST_CASE("report documents carry a format version") {
  CHECK(io::labels_to_json(classify(ar1_covariance(3, 0.2)))["format_version"] == 1);
  const Json r = io::oracle_to_json(markov_oracle(ar1_covariance(3, 0.2)));
  CHECK(r["format_version"] == 1);
  CHECK(r["property"] == "markov");
  CHECK(r["holds"] == true);
}

TEST_CASE("atomic write replaces the target and leaves no temporary") {
  const auto dir = std::filesystem::temp_directory_path() / "cmseq_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  io::write_file_atomic(path, "first");
  io::write_file_atomic(path, "second");
  CHECK(io::read_text_file(path) == "second");
  CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  std::filesystem::remove_all(dir);
}
