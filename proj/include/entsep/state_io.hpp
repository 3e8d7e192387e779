#pragma once

/// State-file I/O. A state file is a UTF-8 JSON document:
///
///   {
///     "dim_a": 2,
///     "dim_b": 2,
///     "matrix": [ [[re, im], ...], ... ]
///   }
///
/// with one row per composite-basis row and one [re, im] pair per entry.
/// Numbers are written with 17 significant digits, so a write/read round
/// trip reproduces every double exactly.

#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "entsep/linalg.hpp"

namespace entsep {

namespace detail {

/// Shortest 17-significant-digit rendering (lossless for doubles).
inline std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

/// 1-based line number of a byte offset within text.
inline std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
    }
  }
  return line;
}

}  // namespace detail

/// Writes rho to path in the state-file format.
inline void write_state(const BipartiteDensityMatrix& rho,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_state: cannot open '" + path +
                             "' for writing");
  }
  const ComplexMatrix& m = rho.matrix();
  out << "{\n";
  out << "  \"dim_a\": " << rho.dim_a() << ",\n";
  out << "  \"dim_b\": " << rho.dim_b() << ",\n";
  out << "  \"matrix\": [\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "    [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << "[" << detail::full_precision(m(r, c).real()) << ", "
          << detail::full_precision(m(r, c).imag()) << "]";
      if (c + 1 < m.cols()) {
        out << ", ";
      }
    }
    out << "]" << (r + 1 < m.rows() ? "," : "") << "\n";
  }
  out << "  ]\n";
  out << "}\n";
  if (!out.good()) {
    throw std::runtime_error("write_state: write to '" + path + "' failed");
  }
}

/// Reads a state file and validates it as a BipartiteDensityMatrix.
/// Malformed documents are reported with a line location; an invariant
/// violation (trace, Hermiticity, positivity, dimensions) is reported with
/// the violated invariant named.
inline BipartiteDensityMatrix read_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_state: cannot open '" + path + "'");
  }
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(
        "read_state: " + path + ": parse error at line " +
        std::to_string(detail::line_of_byte(text, e.byte)) + ": " + e.what());
  }

  const auto require_positive_int = [&](const char* field) -> int {
    if (!doc.contains(field)) {
      throw std::runtime_error("read_state: " + path + ": missing field '" +
                               field + "'");
    }
    if (!doc[field].is_number_integer() || doc[field].get<long long>() < 1) {
      throw std::runtime_error("read_state: " + path + ": field '" + field +
                               "' must be a positive integer");
    }
    return doc[field].get<int>();
  };
  const int dim_a = require_positive_int("dim_a");
  const int dim_b = require_positive_int("dim_b");

  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    throw std::runtime_error("read_state: " + path +
                             ": field 'matrix' must be an array of rows");
  }
  const auto& rows = doc["matrix"];
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (static_cast<Eigen::Index>(rows.size()) != d) {
    throw std::runtime_error(
        "read_state: " + path + ": dimension mismatch, 'matrix' has " +
        std::to_string(rows.size()) + " rows but dim_a*dim_b = " +
        std::to_string(d));
  }

  ComplexMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      throw std::runtime_error(
          "read_state: " + path + ": dimension mismatch, matrix[" +
          std::to_string(r) + "] must be an array of " + std::to_string(d) +
          " entries");
    }
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto& entry = row[static_cast<std::size_t>(c)];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw std::runtime_error(
            "read_state: " + path + ": matrix[" + std::to_string(r) + "][" +
            std::to_string(c) + "] must be a [re, im] number pair");
      }
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }

  try {
    return BipartiteDensityMatrix(dim_a, dim_b, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("read_state: " + path + ": " + e.what());
  }
}

}  // namespace entsep
