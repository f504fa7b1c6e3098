#include "radiuslab/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace radiuslab {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (const auto& z : m.entries()) data.push_back({z.real(), z.imag()});
  return {{"n", m.size()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data"))
    throw InvalidMatrixError("matrix JSON needs fields \"n\" and \"data\"");
  const auto& jn = j.at("n");
  if (!jn.is_number_integer() || jn.get<long long>() < 1)
    throw InvalidMatrixError("matrix JSON: \"n\" must be a positive integer");
  const auto n = jn.get<std::size_t>();
  const auto& data = j.at("data");
  if (!data.is_array())
    throw InvalidMatrixError("matrix JSON: \"data\" must be an array");
  if (data.size() != n * n)
    throw DimensionError("matrix JSON data (expected n*n)", n * n, data.size());
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      throw InvalidMatrixError("matrix JSON: each entry must be [re, im]");
    }
    entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return ComplexMatrix(n, std::move(entries));
}

std::string dump_matrix(const ComplexMatrix& m) {
  std::ostringstream os;
  os << "{\"n\": " << m.size() << ", \"data\": [";
  bool first = true;
  for (const auto& z : m.entries()) {
    if (!first) os << ", ";
    first = false;
    os << '[' << format_double(z.real()) << ", " << format_double(z.imag())
       << ']';
  }
  os << "]}";
  return os.str();
}

ComplexMatrix parse_matrix(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidMatrixError(std::string("matrix JSON parse error: ") +
                             e.what());
  }
  return matrix_from_json(j);
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

void write_matrix_file(const std::filesystem::path& path,
                       const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file " + path.string());
  out << dump_matrix(m) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace radiuslab
