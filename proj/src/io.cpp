#include "dcoul/io.hpp"

#include "dcoul/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace dcoul::io {

Format parse_format(std::string_view s) {
  if (s == "csv")
    return Format::csv;
  if (s == "json")
    return Format::json;
  throw ConfigError(fmt::format("unknown output format '{}'", s));
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw InvalidParameterError(fmt::format(
        "table row has {} cells, expected {}", row.size(), columns.size()));
  rows.push_back(std::move(row));
}

std::string format_real(double v) {
  if (!std::isfinite(v))
    throw InvalidParameterError("refusing to serialize a non-finite value");
  return fmt::format("{:.17g}", v);
}

namespace {

std::string json_string(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    default:
      out += c;
    }
  }
  return out + '"';
}

std::string cell_text(const Cell &c, Format f) {
  return std::visit(
      [f](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, long long>)
          return fmt::format("{}", v);
        else if constexpr (std::is_same_v<T, double>)
          return format_real(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return f == Format::json ? json_string(v) : v;
      },
      c);
}

} // namespace

std::string render(const Table &t, Format f) {
  std::string out;
  if (f == Format::csv) {
    for (std::size_t j = 0; j < t.columns.size(); ++j)
      out += (j ? "," : "") + t.columns[j];
    out += '\n';
    for (const auto &row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j)
        out += (j ? "," : "") + cell_text(row[j], f);
      out += '\n';
    }
    return out;
  }
  out += "[";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    out += i ? ",\n  {" : "\n  {";
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      if (j)
        out += ", ";
      out += json_string(t.columns[j]) + ": " + cell_text(t.rows[i][j], f);
    }
    out += "}";
  }
  out += t.rows.empty() ? "]\n" : "\n]\n";
  return out;
}

Table to_table(const spectrum::SpectrumTable &s) {
  Table t{{"n", "kappa", "eps", "oracle_residual"}, {}};
  for (const auto &e : s.entries)
    t.add_row({(long long)e.n, (long long)e.kappa, e.eps, e.oracle_residual});
  return t;
}

Table to_table(const std::vector<scattering::PhaseShiftResult> &rows) {
  Table t{{"eps", "theta", "Phi", "psi", "amplitude"}, {}};
  for (const auto &r : rows)
    t.add_row({r.eps, r.theta, r.Phi, r.psi, r.amplitude});
  return t;
}

Table to_table(const std::vector<resolvent::DensityEstimate> &rows) {
  Table t{{"x", "eta", "rho"}, {}};
  for (const auto &r : rows)
    t.add_row({r.x, r.eta, r.rho});
  return t;
}

Table to_table(const wavefunction::CoefficientVector &c) {
  Table t{{"n", "re", "im"}, {}};
  for (int n = 0; n < c.size(); ++n)
    t.add_row({(long long)n, c.values[n].real(), c.values[n].imag()});
  return t;
}

Table wavefunction_table(std::span<const double> r,
                         std::span<const double> upper,
                         std::span<const double> lower) {
  if (upper.size() != r.size() || lower.size() != r.size())
    throw InvalidParameterError("wavefunction_table: length mismatch");
  Table t{{"r", "phi_plus", "phi_minus"}, {}};
  for (std::size_t i = 0; i < r.size(); ++i)
    t.add_row({r[i], upper[i], lower[i]});
  return t;
}

} // namespace dcoul::io
