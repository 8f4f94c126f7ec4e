#pragma once
// Command-line plumbing: working-precision configuration, character label
// parsing, deterministic sampling of evaluation points, and serialization
// of tabular reports as NDJSON or CSV.  All numeric cells are rendered as
// full-precision decimal strings so that golden files are reproducible
// across languages and do not depend on binary float formatting.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "eismock/chars.hpp"
#include "eismock/real.hpp"

namespace eismock {

struct PrecisionConfig {
  unsigned bits = 128;
  int64_t n_max = 64;
  Real tol;          // report tolerance, 2^(-bits/3) unless overridden
  bool tol_given = false;
  Real y_min;        // minimal imaginary part for sampled points
  uint64_t seed = 0;
};

// Applies the working precision globally (this must happen before any Real
// is constructed), fills the derived tolerance default, and validates:
// bits >= 64, n_max >= 1, tol > 0, y_min > 0.  Empty strings select the
// defaults; non-empty ones are parsed at full precision.
PrecisionConfig make_precision_config(unsigned bits, int64_t n_max,
                                      const std::string& tol_text,
                                      const std::string& y_min_text,
                                      uint64_t seed);

// Accepts "trivial:N", "kronecker:D", or the canonical JSON form
// {"modulus": N, "exponents": [e1, ...]}.
DirichletCharacter parse_character_label(const std::string& label);

// Deterministic sample points: Re z in (-1/2, 1/2), Im z in
// (y_min + 3/10, y_min + 3/2), derived from the seed by portable
// integer arithmetic only.
std::vector<Complex> sample_points(int count, const Real& y_min,
                                   uint64_t seed);

enum class ReportFormat { ndjson, csv };
ReportFormat parse_report_format(const std::string& name);

// A report is a rectangular table of JSON scalars (strings, integers,
// booleans).  High-precision values enter as decimal strings via
// cell_real / cell_complex.
using Cell = nlohmann::ordered_json;

struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> cells);
};

Cell cell_real(const Real& x);
// rendered as "(re, im)" with full-precision decimal components
Cell cell_complex(const Complex& z);

// NDJSON: one {"column": value, ...} object per row, insertion order.
// CSV: header line, then one comma-separated line per row.
void write_report(std::ostream& out, const ReportTable& table,
                  ReportFormat format);

}  // namespace eismock
