#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "qpart/complex_matrix.hpp"
#include "qpart/density_matrix.hpp"
#include "qpart/errors.hpp"

namespace qpart {

/// Shortest decimal string that parses back to exactly the same double.
/// Locale-independent: '.' decimal point, no grouping.
inline std::string format_double(double v) {
  char buf[32];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw Error("double formatting failed");
  return std::string(buf, res.ptr);
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out << ',';
    out << cells[k];
  }
  out << '\n';
}

/// Density-matrix document:
///   { "d": <int>, "matrix": [ [ [re, im], ... 2d entries ], ... 2d rows ] }
/// Parse/shape problems raise ParseError; violated state invariants
/// propagate as InvalidState from the DensityMatrix constructor.
inline DensityMatrix read_density_matrix(std::istream& in, double tol = kDefaultTol) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("matrix"))
    throw ParseError("document must be an object with keys \"d\" and \"matrix\"");
  if (!doc["d"].is_number_integer()) throw ParseError("\"d\" must be an integer");
  const int d = doc["d"].get<int>();
  if (d < 2) throw ParseError("\"d\" must be at least 2");

  const auto& rows = doc["matrix"];
  const int dim = 2 * d;
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw ParseError("\"matrix\" must hold " + std::to_string(dim) + " rows");
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError("matrix row " + std::to_string(i) + " must hold " + std::to_string(dim) +
                       " entries");
    for (int j = 0; j < dim; ++j) {
      const auto& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") must be a [re, im] pair");
      m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return DensityMatrix(QuditDim(d), std::move(m), tol);
}

inline void write_density_matrix(std::ostream& out, const DensityMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  const ComplexMatrix& m = rho.matrix();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  nlohmann::json doc;
  doc["d"] = rho.d();
  doc["matrix"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

}  // namespace qpart
