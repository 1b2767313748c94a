#include "spdgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace spdgeo::io {

using nlohmann::json;

std::string format_scalar(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

SymmetricMatrix<double> matrix_from(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
    throw Error(ErrorKind::Parse, "matrix document needs keys \"n\" and \"data\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw Error(ErrorKind::Parse, "\"n\" must be a positive integer");
  }
  const auto n = static_cast<Index>(j["n"].get<long long>());
  const json& data = j["data"];
  if (!data.is_array() || static_cast<Index>(data.size()) != n) {
    throw Error(ErrorKind::Parse, "\"data\" must hold n = " + std::to_string(n) + " rows");
  }
  Matrix<double> m(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = data[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw Error(ErrorKind::Parse, "row " + std::to_string(i) + " must hold " + std::to_string(n) + " numbers");
    }
    for (Index k = 0; k < n; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw Error(ErrorKind::Parse, "matrix entries must be numbers");
      m(i, k) = v.get<double>();
    }
  }
  return SymmetricMatrix<double>(m);
}

}  // namespace

SymmetricMatrix<double> parse_matrix(const std::string& text) { return matrix_from(parse_document(text)); }

SimplexPoint<double> parse_simplex(const std::string& text) {
  const json j = parse_document(text);
  if (!j.is_object() || !j.contains("p") || !j["p"].is_array() || j["p"].empty()) {
    throw Error(ErrorKind::Parse, "simplex document needs a non-empty array \"p\"");
  }
  Vector<double> p(static_cast<Index>(j["p"].size()));
  for (std::size_t i = 0; i < j["p"].size(); ++i) {
    if (!j["p"][i].is_number()) throw Error(ErrorKind::Parse, "simplex coordinates must be numbers");
    p(static_cast<Index>(i)) = j["p"][i].get<double>();
  }
  return SimplexPoint<double>(std::move(p));
}

std::vector<SymmetricMatrix<double>> parse_matrix_stream(const std::string& text) {
  std::vector<SymmetricMatrix<double>> out;
  if (json::accept(text)) {
    const json j = json::parse(text);
    if (j.is_array()) {
      for (const auto& item : j) out.push_back(matrix_from(item));
    } else {
      out.push_back(matrix_from(j));
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_matrix(line));
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "no matrix documents in input");
  return out;
}

std::string matrix_json(const Matrix<double>& m) {
  std::string s = "{\"n\":" + std::to_string(m.rows()) + ",\"data\":[";
  for (Index i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (Index k = 0; k < m.cols(); ++k) {
      if (k) s += ",";
      s += format_scalar(m(i, k));
    }
    s += "]";
  }
  return s + "]}";
}

std::string simplex_json(const Vector<double>& p) {
  std::string s = "{\"p\":[";
  for (Index i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += format_scalar(p(i));
  }
  return s + "]}";
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  f << text;
}

}  // namespace spdgeo::io
