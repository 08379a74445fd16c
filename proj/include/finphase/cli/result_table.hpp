#pragma once

// Tabular results produced by the command-line front end, and their CSV and
// JSON serialisations.

#include <complex>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "finphase/errors.hpp"
#include "json.hpp"

namespace finphase::cli {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class CellKind { integer, real, complex };

using Cell = std::variant<long long, double, std::complex<double>>;

struct Column {
  std::string name;
  CellKind kind;
};

/// Named columns, row-major cells and a metadata block. Every row has one
/// cell per column, of the column's kind.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  nlohmann::ordered_json& meta() noexcept { return meta_; }
  const nlohmann::ordered_json& meta() const noexcept { return meta_; }

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
      throw ValidationError("ResultTable: row has " + std::to_string(row.size()) +
                            " cells, table has " + std::to_string(columns_.size()) +
                            " columns");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (static_cast<std::size_t>(columns_[i].kind) != row[i].index()) {
        throw ValidationError("ResultTable: cell kind mismatch in column '" +
                              columns_[i].name + "'");
      }
    }
    rows_.push_back(std::move(row));
  }

  /// Appends rows of another table with identical columns.
  void append(const ResultTable& other) {
    if (other.columns_.size() != columns_.size()) {
      throw ValidationError("ResultTable: cannot append tables with different columns");
    }
    for (const auto& r : other.rows_) add_row(r);
  }

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
  nlohmann::ordered_json meta_ = nlohmann::ordered_json::object();
};

enum class Format { csv, json };

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

/// Header row then one line per row; reals as %.12e, complex cells split
/// into <name>_re and <name>_im.
inline void write_csv(const ResultTable& t, std::ostream& os) {
  bool first = true;
  auto sep = [&] {
    if (!first) os << ',';
    first = false;
  };
  for (const auto& c : t.columns()) {
    if (c.kind == CellKind::complex) {
      sep();
      os << c.name << "_re";
      sep();
      os << c.name << "_im";
    } else {
      sep();
      os << c.name;
    }
  }
  os << '\n';
  for (const auto& row : t.rows()) {
    first = true;
    for (const auto& cell : row) {
      if (const auto* i = std::get_if<long long>(&cell)) {
        sep();
        os << *i;
      } else if (const auto* r = std::get_if<double>(&cell)) {
        sep();
        os << format_real(*r);
      } else {
        const auto& z = std::get<std::complex<double>>(cell);
        sep();
        os << format_real(z.real());
        sep();
        os << format_real(z.imag());
      }
    }
    os << '\n';
  }
}

/// {"meta": {...}, "columns": [...], "rows": [[...]]}; complex cells are
/// [re, im] pairs and reals are emitted with the same %.12e text as CSV.
inline void write_json(const ResultTable& t, std::ostream& os) {
  using nlohmann::ordered_json;
  ordered_json doc = ordered_json::object();
  doc["meta"] = t.meta();
  ordered_json cols = ordered_json::array();
  for (const auto& c : t.columns()) {
    const char* kind = c.kind == CellKind::integer ? "integer"
                       : c.kind == CellKind::real  ? "real"
                                                   : "complex";
    cols.push_back({{"name", c.name}, {"kind", kind}});
  }
  doc["columns"] = cols;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows()) {
    ordered_json r = ordered_json::array();
    for (const auto& cell : row) {
      if (const auto* i = std::get_if<long long>(&cell)) {
        r.push_back(*i);
      } else if (const auto* x = std::get_if<double>(&cell)) {
        r.push_back(std::stod(format_real(*x)));
      } else {
        const auto& z = std::get<std::complex<double>>(cell);
        r.push_back({std::stod(format_real(z.real())), std::stod(format_real(z.imag()))});
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
}

inline void write_table(const ResultTable& t, Format f, std::ostream& os) {
  if (f == Format::csv) {
    write_csv(t, os);
  } else {
    write_json(t, os);
  }
}

/// Failure to write an output file.
class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void export_table(const ResultTable& t, Format f, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ExportError("cannot open '" + path + "' for writing");
  write_table(t, f, out);
  out.flush();
  if (!out) throw ExportError("write to '" + path + "' failed");
}

}  // namespace finphase::cli
