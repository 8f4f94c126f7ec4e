#include "eismock/report.hpp"

#include <ostream>
#include <random>
#include <stdexcept>

namespace eismock {
namespace {

int64_t parse_integer(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    int64_t value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::domain_error("could not parse " + what + ": '" + text + "'");
  }
}

Real parse_real(const std::string& text, const std::string& what) {
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw std::domain_error("could not parse " + what + ": '" + text + "'");
  }
}

std::string csv_escape(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char ch : raw) {
    quoted += ch;
    if (ch == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

}  // namespace

PrecisionConfig make_precision_config(unsigned bits, int64_t n_max,
                                      const std::string& tol_text,
                                      const std::string& y_min_text,
                                      uint64_t seed) {
  if (bits < 64) throw std::domain_error("bits must be at least 64");
  if (n_max < 1) throw std::domain_error("n-max must be at least 1");
  set_working_bits(static_cast<int>(bits));
  PrecisionConfig cfg;
  cfg.bits = bits;
  cfg.n_max = n_max;
  cfg.seed = seed;
  if (tol_text.empty()) {
    cfg.tol = pow(Real(2), -Real(bits) / 3);
  } else {
    cfg.tol = parse_real(tol_text, "tol");
    cfg.tol_given = true;
  }
  if (!(cfg.tol > 0)) throw std::domain_error("tol must be positive");
  cfg.y_min = y_min_text.empty() ? Real(1) / 2 : parse_real(y_min_text, "y-min");
  if (!(cfg.y_min > 0)) throw std::domain_error("y-min must be positive");
  return cfg;
}

DirichletCharacter parse_character_label(const std::string& label) {
  if (label.rfind("trivial:", 0) == 0)
    return DirichletCharacter::trivial(
        parse_integer(label.substr(8), "trivial modulus"));
  if (label.rfind("kronecker:", 0) == 0)
    return DirichletCharacter::kronecker(
        parse_integer(label.substr(10), "kronecker discriminant"));
  if (!label.empty() && label.front() == '{') {
    try {
      auto parsed = nlohmann::json::parse(label);
      int64_t n = parsed.at("modulus").get<int64_t>();
      auto exps = parsed.at("exponents").get<std::vector<int64_t>>();
      auto chi = DirichletCharacter::from_exponents(n, exps);
      if (parsed.contains("conductor") &&
          parsed["conductor"].get<int64_t>() != chi.conductor())
        throw std::domain_error("character label conductor mismatch: " + label);
      return chi;
    } catch (const nlohmann::json::exception&) {
      throw std::domain_error("malformed character label: " + label);
    }
  }
  throw std::domain_error("unknown character label: " + label);
}

std::vector<Complex> sample_points(int count, const Real& y_min,
                                   uint64_t seed) {
  std::mt19937_64 rng(seed);
  // raw 53-bit draws keep the stream independent of any library's
  // distribution internals
  auto unit = [&rng]() { return Real(rng() >> 11) / Real(int64_t(1) << 53); };
  std::vector<Complex> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    Real x = unit() - Real(1) / 2;
    Real y = y_min + Real(3) / 10 + unit() * Real(6) / 5;
    points.push_back(Complex{x, y});
  }
  return points;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::ndjson;
  if (name == "csv") return ReportFormat::csv;
  throw std::domain_error("unknown format: '" + name + "' (use json or csv)");
}

void ReportTable::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns.size())
    throw std::logic_error("report row width does not match the header");
  rows.push_back(std::move(cells));
}

Cell cell_real(const Real& x) { return Cell(decimal_string(x)); }

Cell cell_complex(const Complex& z) {
  return Cell("(" + decimal_string(z.re) + ", " + decimal_string(z.im) + ")");
}

void write_report(std::ostream& out, const ReportTable& table,
                  ReportFormat format) {
  if (format == ReportFormat::ndjson) {
    for (const auto& row : table.rows) {
      Cell object = Cell::object();
      for (size_t j = 0; j < table.columns.size(); ++j)
        object[table.columns[j]] = row[j];
      out << object.dump() << '\n';
    }
    return;
  }
  for (size_t j = 0; j < table.columns.size(); ++j)
    out << (j ? "," : "") << csv_escape(table.columns[j]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "");
      if (row[j].is_string())
        out << csv_escape(row[j].get<std::string>());
      else
        out << row[j].dump();
    }
    out << '\n';
  }
}

}  // namespace eismock
