#include "mrpower/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace mrpower {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

std::size_t read_dim(const json& j, const char* key) {
  if (!j.contains(key)) parse_fail(std::string("missing key \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    parse_fail(std::string("\"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

Matrix read_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_fail(where + ": matrix must be a non-empty list of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) parse_fail(where + ": rows must be non-empty lists");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols) parse_fail(where + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& z = row[c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        parse_fail(where + ": entries must be [re, im] number pairs");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json write_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text << '\n';
}

}  // namespace

QuantumChannel channel_from_json(std::string_view text) {
  const json j = parse_text(text);
  if (!j.is_object()) parse_fail("channel file must be a JSON object");
  const std::size_t din = read_dim(j, "dim_in");
  const std::size_t dout = read_dim(j, "dim_out");
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty()) {
    parse_fail("\"kraus\" must be a non-empty list of matrices");
  }
  std::vector<Matrix> kraus;
  for (std::size_t k = 0; k < j.at("kraus").size(); ++k) {
    Matrix m = read_matrix(j.at("kraus")[k], "kraus[" + std::to_string(k) + "]");
    if (static_cast<std::size_t>(m.rows()) != dout || static_cast<std::size_t>(m.cols()) != din) {
      throw Error(ErrorKind::DimensionMismatch,
                  "kraus[" + std::to_string(k) + "] is " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", declared dim_out x dim_in = " +
                      std::to_string(dout) + "x" + std::to_string(din));
    }
    kraus.push_back(std::move(m));
  }
  return QuantumChannel(std::move(kraus));
}

std::string channel_to_json(const QuantumChannel& e) {
  json j;
  j["dim_in"] = e.dim_in();
  j["dim_out"] = e.dim_out();
  j["kraus"] = json::array();
  for (const Matrix& k : e.kraus()) j["kraus"].push_back(write_matrix(k));
  return j.dump();
}

Povm povm_from_json(std::string_view text) {
  const json j = parse_text(text);
  if (!j.is_object()) parse_fail("POVM file must be a JSON object");
  const std::size_t d = read_dim(j, "dim");
  if (!j.contains("elements") || !j.at("elements").is_array() || j.at("elements").empty()) {
    parse_fail("\"elements\" must be a non-empty list of matrices");
  }
  std::vector<HermitianOperator> el;
  for (std::size_t x = 0; x < j.at("elements").size(); ++x) {
    const Matrix m = read_matrix(j.at("elements")[x], "elements[" + std::to_string(x) + "]");
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d) {
      throw Error(ErrorKind::DimensionMismatch,
                  "elements[" + std::to_string(x) + "] does not match dim " + std::to_string(d));
    }
    el.emplace_back(m);
  }
  return Povm(std::move(el));
}

std::string povm_to_json(const Povm& m) {
  json j;
  j["dim"] = m.dim();
  j["elements"] = json::array();
  for (const HermitianOperator& mx : m.elements()) j["elements"].push_back(write_matrix(mx.matrix()));
  return j.dump();
}

QuantumChannel read_channel_file(const std::filesystem::path& path) {
  return channel_from_json(slurp(path));
}

void write_channel_file(const std::filesystem::path& path, const QuantumChannel& e) {
  spit(path, channel_to_json(e));
}

Povm read_povm_file(const std::filesystem::path& path) { return povm_from_json(slurp(path)); }

void write_povm_file(const std::filesystem::path& path, const Povm& m) {
  spit(path, povm_to_json(m));
}

}  // namespace mrpower
