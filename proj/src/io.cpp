#include "cmseq/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cmseq/errors.hpp"

namespace cmseq::io {

namespace {

std::size_t require_count(const Json& j, const char* key, std::size_t min_value) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value)) {
    throw FormatError(std::string("field \"") + key + "\" must be an integer >= " +
                      std::to_string(min_value));
  }
  return v.get<std::size_t>();
}

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json indexed_to_json(const std::vector<Matrix>& slots) {
  Json out = Json::object();
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!slots[k].empty()) out[std::to_string(k)] = matrix_to_json(slots[k]);
  }
  return out;
}

std::vector<Matrix> indexed_from_json(const Json& j, std::size_t steps, const char* what) {
  if (!j.is_object()) throw FormatError(std::string("\"") + what + "\" must be an object");
  std::vector<Matrix> slots(steps);
  for (const auto& [key, value] : j.items()) {
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
    if (ec != std::errc() || ptr != key.data() + key.size() || k >= steps) {
      throw FormatError(std::string("\"") + what + "\" has invalid time key \"" + key + "\"");
    }
    slots[k] = matrix_from_json(value);
  }
  return slots;
}

Json pattern_to_json(const PatternResult& p) {
  return Json{{"max_off_pattern", p.max_off_pattern},
              {"block", {p.worst_k1, p.worst_k2}},
              {"threshold", p.threshold}};
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  if (!m.is_square()) throw_shape("matrix file format stores square matrices only");
  return Json{{"dim", m.rows()}, {"entries", m.entries()}};
}

Matrix matrix_from_json(const Json& j) {
  const std::size_t dim = require_count(j, "dim", 1);
  const Json& entries = require_field(j, "entries");
  if (!entries.is_array() || entries.size() != dim * dim) {
    throw FormatError("\"entries\" must be an array of dim*dim = " + std::to_string(dim * dim) +
                      " numbers");
  }
  std::vector<double> values;
  values.reserve(entries.size());
  for (const Json& e : entries) {
    if (!e.is_number()) throw FormatError("matrix entry is not a number");
    const double v = e.get<double>();
    if (!std::isfinite(v)) throw FormatError("matrix entry is NaN or infinite");
    values.push_back(v);
  }
  return Matrix(dim, dim, std::move(values));
}

Json covariance_to_json(const BlockCovariance& cov) {
  return Json{{"N", cov.horizon()}, {"d", cov.block_dim()}, {"matrix", matrix_to_json(cov.matrix())}};
}

BlockCovariance covariance_from_json(const Json& j) {
  const std::size_t n = require_count(j, "N", 1);
  const std::size_t d = require_count(j, "d", 1);
  Matrix m = matrix_from_json(require_field(j, "matrix"));
  if (m.rows() != (n + 1) * d) {
    throw FormatError("covariance dim " + std::to_string(m.rows()) + " != (N+1)*d");
  }
  return BlockCovariance(n, d, m);
}

Json model_to_json(const CMcModel& model) {
  const CMcModel::Parameters p = model.parameters();
  Json j{{"boundary", p.boundary == Boundary::First ? "first" : "last"},
         {"N", p.horizon},
         {"d", p.block_dim},
         {"transitions", indexed_to_json(p.transitions)},
         {"couplings", indexed_to_json(p.couplings)},
         {"noise_covs", indexed_to_json(p.noise_covs)}};
  if (p.endpoint_coupling) j["endpoint_coupling"] = matrix_to_json(*p.endpoint_coupling);
  return j;
}

CMcModel model_from_json(const Json& j) {
  CMcModel::Parameters p;
  const Json& b = require_field(j, "boundary");
  if (b == "first") {
    p.boundary = Boundary::First;
  } else if (b == "last") {
    p.boundary = Boundary::Last;
  } else {
    throw FormatError("\"boundary\" must be \"first\" or \"last\"");
  }
  p.horizon = require_count(j, "N", 1);
  p.block_dim = require_count(j, "d", 1);
  const std::size_t steps = p.horizon + 1;
  p.transitions = indexed_from_json(require_field(j, "transitions"), steps, "transitions");
  p.couplings = indexed_from_json(require_field(j, "couplings"), steps, "couplings");
  p.noise_covs = indexed_from_json(require_field(j, "noise_covs"), steps, "noise_covs");
  for (std::size_t k = 0; k < steps; ++k) {
    if (p.noise_covs[k].empty()) throw FormatError("noise_covs missing time " + std::to_string(k));
  }
  const std::size_t c = p.boundary == Boundary::First ? 0 : p.horizon;
  for (std::size_t k = 1; k < steps; ++k) {
    if (k == c) continue;
    if (p.transitions[k].empty() || p.couplings[k].empty()) {
      throw FormatError("transitions/couplings missing time " + std::to_string(k));
    }
  }
  if (j.contains("endpoint_coupling") && !j.at("endpoint_coupling").is_null()) {
    p.endpoint_coupling = matrix_from_json(j.at("endpoint_coupling"));
  }
  return CMcModel(p);
}

Json labels_to_json(const ClassLabels& l) {
  return Json{{"format_version", kFormatVersion},
              {"labels",
               {{"markov", l.markov}, {"reciprocal", l.reciprocal}, {"cm_l", l.cm_l}, {"cm_f", l.cm_f}}},
              {"violations",
               {{"markov", pattern_to_json(l.markov_violation)},
                {"reciprocal", pattern_to_json(l.reciprocal_violation)},
                {"cm_l", pattern_to_json(l.cm_l_violation)},
                {"cm_f", pattern_to_json(l.cm_f_violation)}}},
              {"tolerance_used", l.tolerance_used}};
}

Json oracle_to_json(const OracleReport& r) {
  return Json{{"format_version", kFormatVersion},
              {"property", std::string(property_name(r.property))},
              {"holds", r.holds},
              {"worst_violation", r.worst_violation},
              {"witness", {r.witness.first, r.witness.second}},
              {"tolerance", r.tolerance}};
}

Json summary_to_json(const EnsembleSummary& s) {
  Json cov = Json::array();
  for (const Matrix& c : s.empirical_cov) cov.push_back(matrix_to_json(c));
  return Json{{"format_version", kFormatVersion},
              {"count", s.count},
              {"seed", s.seed},
              {"mean_path", s.mean_path},
              {"empirical_mean", s.empirical_mean},
              {"empirical_cov", cov}};
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trajectories_csv(const TrajectoryBatch& batch) {
  std::string out = "realization,k";
  for (std::size_t i = 1; i <= batch.block_dim(); ++i) out += ",x_" + std::to_string(i);
  out += '\n';
  for (std::size_t r = 0; r < batch.count(); ++r) {
    for (std::size_t k = 0; k <= batch.horizon(); ++k) {
      out += std::to_string(r);
      out += ',';
      out += std::to_string(k);
      for (double v : batch.state(r, k)) {
        out += ',';
        out += format_double(v);
      }
      out += '\n';
    }
  }
  return out;
}

std::vector<double> parse_vector_csv(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of(",\n", pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (!tok.empty()) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw FormatError("invalid number \"" + std::string(tok) + "\" in vector");
      }
      out.push_back(v);
    }
    pos = end + 1;
  }
  if (out.empty()) throw FormatError("empty vector");
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_text_file(path)); }

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw FormatError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw FormatError("cannot rename onto " + path.string());
  }
}

}  // namespace cmseq::io
